#include <psel/ensemble.hpp>

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <fmt/format.h>

namespace psel {

namespace {

void check_weights(std::size_t rankings, std::span<const double> weights)
{
	if(rankings != weights.size())
		throw ConfigError(fmt::format("ensemble: {} rankings but {} weights", rankings, weights.size()));
	if(rankings < 2)
		throw ConfigError("ensemble needs at least two members");
	for(double w : weights)
		if(!(w > 0.0) || !std::isfinite(w))
			throw ConfigError(fmt::format("ensemble weight {} is not a finite positive number", w));
}

} // namespace

RankedList harmonic_combine(std::span<const RankedList> rankings, std::span<const double> weights,
	std::span<const ConstantId> candidates, std::size_t cutoff, const TieOrder& ties)
{
	check_weights(rankings.size(), weights);

	std::vector<std::unordered_map<ConstantId, std::size_t>> positions(rankings.size());
	for(std::size_t m = 0; m < rankings.size(); ++m)
		for(std::size_t i = 0; i < rankings[m].size(); ++i)
			positions[m].emplace(rankings[m].entries[i].id, i + 1);

	double weight_sum = 0.0;
	{
		std::vector<double> sorted(weights.begin(), weights.end());
		std::sort(sorted.begin(), sorted.end());
		for(double w : sorted)
			weight_sum += w;
	}

	std::vector<RankedEntry> entries;
	std::vector<double> terms(rankings.size());
	for(ConstantId d : unique_candidates(candidates))
	{
		for(std::size_t m = 0; m < rankings.size(); ++m)
		{
			auto it = positions[m].find(d);
			auto pos = it == positions[m].end() ? rankings[m].size() + 1 : it->second;
			terms[m] = weights[m] / static_cast<double>(pos);
		}
		// Summing in sorted order makes the result independent of member order.
		std::sort(terms.begin(), terms.end());
		double harmonic = 0.0;
		for(double t : terms)
			harmonic += t;
		entries.push_back({d, -(weight_sum / harmonic)});
	}

	auto ranked = sort_ranked(std::move(entries), ties);
	ranked.truncate(cutoff);
	return ranked;
}

EnsembleRanker::EnsembleRanker(std::vector<std::unique_ptr<Ranker>> members, std::vector<double> weights, TieOrder ties)
	: members_(std::move(members))
	, weights_(std::move(weights))
	, ties_(std::move(ties))
{
	check_weights(members_.size(), weights_);
}

void EnsembleRanker::train(const LearningDatum& datum)
{
	for(auto& member : members_)
		member->train(datum);
}

RankedList EnsembleRanker::order(const ConstantSet& query_features,
	std::span<const ConstantId> candidates, std::size_t cutoff) const
{
	std::vector<RankedList> lists;
	lists.reserve(members_.size());
	for(const auto& member : members_)
		lists.push_back(member->rank(query_features, candidates, cutoff));
	return harmonic_combine(lists, weights_, candidates, candidates.size(), ties_);
}

} // namespace psel
