#include <psel/knn.hpp>

#include <algorithm>
#include <cmath>

namespace psel {

void KnnConfig::validate() const
{
	if(k < 1)
		throw ConfigError("knn.k must be at least 1");
	if(!(self_weight >= 0.0) || !std::isfinite(self_weight))
		throw ConfigError("knn.self-weight must be a finite value >= 0");
}

double idf_weight(std::size_t trained_facts, std::size_t feature_occurrences)
{
	return std::log(static_cast<double>(trained_facts + 1) / static_cast<double>(feature_occurrences + 1)) + 1.0;
}

KnnRanker::KnnRanker(KnnConfig cfg, TieOrder ties)
	: cfg_(cfg)
	, ties_(std::move(ties))
{
	cfg_.validate();
}

void KnnRanker::train(const LearningDatum& datum)
{
	auto index = static_cast<std::uint32_t>(samples_.size());
	samples_.push_back({datum.fact, datum.dependencies});
	for(ConstantId feature : datum.features)
		postings_[feature].push_back(index);
}

RankedList KnnRanker::order(const ConstantSet& query_features,
	std::span<const ConstantId> candidates, std::size_t) const
{
	std::vector<double> sim(samples_.size(), 0.0);
	std::vector<std::uint32_t> touched;
	for(ConstantId feature : query_features)
	{
		auto it = postings_.find(feature);
		if(it == postings_.end())
			continue;
		double w = cfg_.use_idf ? idf_weight(samples_.size(), it->second.size()) : 1.0;
		for(auto s : it->second)
		{
			if(sim[s] == 0.0)
				touched.push_back(s);
			sim[s] += w * w;
		}
	}

	auto closer = [&](std::uint32_t a, std::uint32_t b) {
		if(sim[a] != sim[b])
			return sim[a] > sim[b];
		return ties_.key(samples_[a].fact) < ties_.key(samples_[b].fact);
	};
	std::size_t k = std::min(cfg_.k, touched.size());
	std::partial_sort(touched.begin(), touched.begin() + static_cast<std::ptrdiff_t>(k), touched.end(), closer);
	touched.resize(k);

	std::unordered_map<ConstantId, double> score;
	for(auto s : touched)
	{
		const auto& sample = samples_[s];
		for(ConstantId dep : sample.dependencies)
			score[dep] += sim[s];
		score[sample.fact] += cfg_.self_weight * sim[s];
	}

	std::vector<RankedEntry> entries;
	for(ConstantId c : unique_candidates(candidates))
	{
		auto it = score.find(c);
		entries.push_back({c, it == score.end() ? 0.0 : it->second});
	}
	return sort_ranked(std::move(entries), ties_);
}

} // namespace psel
