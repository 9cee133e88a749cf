#include <psel/syngen.hpp>

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace psel {

namespace {

struct Block
{
	std::size_t begin, end;

	std::size_t size() const { return end - begin; }
};

Block block_of(std::size_t topic, std::size_t topics, std::size_t total)
{
	return {topic * total / topics, (topic + 1) * total / topics};
}

// Planted association: feature slot j of a topic maps onto premise slot j * |P| / |F|.
std::size_t premise_of(std::size_t feature, Block fblock, Block pblock)
{
	return pblock.begin + (feature - fblock.begin) * pblock.size() / fblock.size();
}

// Uniform count in [max(1, round(mean/2)), round(3 mean/2)]; expectation ~ mean.
std::size_t draw_count(SynRng& rng, double mean)
{
	auto lo = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(mean / 2.0)));
	auto hi = std::max(lo, static_cast<std::size_t>(std::llround(mean * 1.5)));
	return lo + rng.below(hi - lo + 1);
}

// k distinct draws from the block (all of it if k >= size), partial Fisher-Yates.
std::vector<std::size_t> draw_distinct(SynRng& rng, Block block, std::size_t k)
{
	std::vector<std::size_t> items(block.size());
	for(std::size_t i = 0; i < items.size(); ++i)
		items[i] = block.begin + i;
	k = std::min(k, items.size());
	for(std::size_t i = 0; i < k; ++i)
		std::swap(items[i], items[i + rng.below(items.size() - i)]);
	items.resize(k);
	return items;
}

} // namespace

void SynParams::validate() const
{
	if(n_facts < 1 || n_features < 1 || n_premise_constants < 1 || topics < 1)
		throw ParamError("synthetic corpus counts must be at least 1");
	if(n_features < topics || n_premise_constants < topics)
		throw ParamError("need at least one feature and one premise constant per topic");
	if(!(deps_per_fact >= 1.0) || !(features_per_fact >= 1.0) || !std::isfinite(deps_per_fact) || !std::isfinite(features_per_fact))
		throw ParamError("mean dependency and feature counts must be finite and >= 1");
	if(!(noise >= 0.0 && noise <= 1.0))
		throw ParamError("noise must lie in [0, 1]");
	if(!(fact_dep_prob >= 0.0 && fact_dep_prob <= 1.0))
		throw ParamError("fact dependency probability must lie in [0, 1]");
}

std::uint64_t SynRng::below(std::uint64_t n)
{
	std::uint64_t threshold = (0 - n) % n; // 2^64 mod n
	for(;;)
	{
		std::uint64_t x = engine_();
		if(x >= threshold)
			return x % n;
	}
}

double SynRng::unit()
{
	return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

Corpus generate(const SynParams& params)
{
	params.validate();
	SynRng rng(params.seed);

	std::vector<std::string> features(params.n_features), premises(params.n_premise_constants), facts(params.n_facts);
	for(std::size_t i = 0; i < features.size(); ++i)
		features[i] = fmt::format("syn.f{}", i);
	for(std::size_t i = 0; i < premises.size(); ++i)
		premises[i] = fmt::format("syn.p{}", i);
	for(std::size_t i = 0; i < facts.size(); ++i)
		facts[i] = fmt::format("syn.T{}", i);

	std::vector<std::vector<std::size_t>> facts_by_topic(params.topics);
	Corpus corpus;
	for(std::size_t i = 0; i < params.n_facts; ++i)
	{
		std::size_t topic = rng.below(params.topics);
		Block fblock = block_of(topic, params.topics, params.n_features);
		Block pblock = block_of(topic, params.topics, params.n_premise_constants);

		std::vector<std::string_view> stmt, proof;
		auto chosen = draw_distinct(rng, fblock, draw_count(rng, params.features_per_fact));
		for(auto f : chosen)
			stmt.push_back(features[f]);

		// On-topic dependencies come through the fact's own features, taken in the
		// (random) order they were drawn, cycling if there are more dependencies.
		std::size_t deps = draw_count(rng, params.deps_per_fact);
		for(std::size_t d = 0; d < deps; ++d)
		{
			std::size_t p;
			if(rng.chance(params.noise))
				p = rng.below(params.n_premise_constants);
			else
				p = premise_of(chosen[d % chosen.size()], fblock, pblock);
			proof.push_back(premises[p]);
		}

		if(i > 0 && rng.chance(params.fact_dep_prob))
		{
			const auto& same = facts_by_topic[topic];
			bool on_topic = !rng.chance(params.noise) && !same.empty();
			std::size_t earlier = on_topic ? same[rng.below(same.size())] : rng.below(i);
			proof.push_back(facts[earlier]);
		}

		facts_by_topic[topic].push_back(i);
		if(!corpus.add_fact(facts[i], stmt, proof))
			throw Error("synthetic fact names collided");
	}
	return corpus;
}

} // namespace psel
