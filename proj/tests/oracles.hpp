#pragma once

// Test-only brute-force references and random instance generators. Nothing here
// calls into the code paths it is used to check.

#include <psel/corpus.hpp>
#include <psel/ranking.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace psel::oracle {

inline std::set<ConstantId> top_n(const std::vector<ConstantId>& ranking, std::size_t n)
{
	return {ranking.begin(), ranking.begin() + static_cast<std::ptrdiff_t>(std::min(n, ranking.size()))};
}

inline std::size_t hits(const std::vector<ConstantId>& ranking, const std::set<ConstantId>& deps, std::size_t n)
{
	std::size_t h = 0;
	for(auto id : top_n(ranking, n))
		h += deps.count(id);
	return h;
}

inline double cover(const std::vector<ConstantId>& ranking, const std::set<ConstantId>& deps, std::size_t n)
{
	return static_cast<double>(hits(ranking, deps, n)) / static_cast<double>(deps.size());
}

inline double precision(const std::vector<ConstantId>& ranking, const std::set<ConstantId>& deps, std::size_t n)
{
	auto shown = std::min(n, ranking.size());
	return shown == 0 ? 0.0 : static_cast<double>(hits(ranking, deps, n)) / static_cast<double>(shown);
}

/// Tries every prefix length in turn.
inline std::size_t recall(const std::vector<ConstantId>& ranking, const std::set<ConstantId>& deps, std::size_t cutoff)
{
	for(std::size_t n = 1; n <= std::min(cutoff, ranking.size()); ++n)
	{
		auto top = top_n(ranking, n);
		if(std::includes(top.begin(), top.end(), deps.begin(), deps.end()))
			return n;
	}
	return cutoff + 1;
}

inline double avg_rank(const std::vector<ConstantId>& ranking, const std::set<ConstantId>& deps, std::size_t cutoff)
{
	double total = 0.0;
	for(auto d : deps)
	{
		std::size_t pos = cutoff + 1;
		for(std::size_t i = 0; i < std::min(cutoff, ranking.size()); ++i)
			if(ranking[i] == d)
				pos = i + 1;
		total += static_cast<double>(pos);
	}
	return total / static_cast<double>(deps.size());
}

/// Exhaustive pair count over (used, unused).
inline double auc(const std::vector<ConstantId>& order, const std::set<ConstantId>& deps)
{
	std::map<ConstantId, std::size_t> pos;
	for(std::size_t i = 0; i < order.size(); ++i)
		pos[order[i]] = i;
	std::size_t wins = 0, pairs = 0;
	for(auto u : order)
	{
		if(!deps.count(u))
			continue;
		for(auto v : order)
		{
			if(deps.count(v))
				continue;
			++pairs;
			if(pos[u] < pos[v])
				++wins;
		}
	}
	return static_cast<double>(wins) / static_cast<double>(pairs);
}

struct RandomCorpusParams
{
	std::size_t facts = 20;
	std::size_t symbols = 12;     // record-less constants
	std::size_t max_refs = 6;
	double fact_ref_prob = 0.3;   // chance a reference targets an earlier fact
	bool shuffle = true;          // emit lines in a random (non-topological) order
};

/// Random acyclic corpus as canonical TSV text. Facts only reference facts created
/// before them; lines may be shuffled so that declaration order is not topological.
inline std::string random_corpus_tsv(std::uint64_t seed, const RandomCorpusParams& p = {})
{
	std::mt19937_64 rng(seed);
	auto below = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
	auto chance = [&](double q) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < q; };

	std::vector<std::string> lines;
	for(std::size_t f = 0; f < p.facts; ++f)
	{
		auto ref = [&]() -> std::string {
			if(f > 0 && chance(p.fact_ref_prob))
				return "F" + std::to_string(below(f));
			return "s" + std::to_string(below(p.symbols));
		};
		std::string stmt, proof;
		for(std::size_t k = below(p.max_refs); k > 0; --k)
			stmt += (stmt.empty() ? "" : " ") + ref();
		for(std::size_t k = below(p.max_refs + 1); k > 0; --k)
			proof += (proof.empty() ? "" : " ") + ref();
		if(chance(0.1))
			proof += (proof.empty() ? "F" : " F") + std::to_string(f); // self-reference, dropped on parse
		lines.push_back("F" + std::to_string(f) + "\t" + stmt + "\t" + proof);
	}
	if(p.shuffle)
		std::shuffle(lines.begin(), lines.end(), rng);
	std::string text;
	for(const auto& line : lines)
		text += line + "\n";
	return text;
}

/// Parsed corpus with everything the learners need.
struct Prepared
{
	Corpus corpus;
	PartitionResult partition;
	std::vector<LearningDatum> data;
	TieOrder ties;

	explicit Prepared(std::string_view tsv)
		: corpus(parse_corpus_tsv(tsv))
		, partition(partition_constants(corpus))
		, data(derive_learning_data(corpus, partition))
		, ties(corpus)
	{}

	ConstantId id(std::string_view name) const { return corpus.interner().find(name).value(); }

	ConstantSet set(std::initializer_list<std::string_view> names) const
	{
		ConstantSet out;
		for(auto n : names)
			out.push_back(id(n));
		normalize(out);
		return out;
	}

	const LearningDatum& datum(std::string_view name) const { return data.at(corpus.fact_index(id(name)).value()); }
};

/// Checks the ranking contract; returns an empty string or a description of the violation.
inline std::string contract_violation(const RankedList& list, const std::vector<ConstantId>& candidates,
	std::size_t cutoff, const TieOrder& ties)
{
	std::set<ConstantId> cands(candidates.begin(), candidates.end());
	if(list.size() != std::min(cutoff, cands.size()))
		return "wrong length";
	std::set<ConstantId> seen;
	for(std::size_t i = 0; i < list.size(); ++i)
	{
		const auto& e = list.entries[i];
		if(!cands.count(e.id))
			return "non-candidate in output";
		if(!seen.insert(e.id).second)
			return "duplicate in output";
		if(i > 0)
		{
			const auto& prev = list.entries[i - 1];
			if(prev.score < e.score)
				return "scores increase";
			if(prev.score == e.score && !(ties.key(prev.id) < ties.key(e.id)))
				return "tie not broken by declaration order";
		}
	}
	return {};
}

} // namespace psel::oracle
