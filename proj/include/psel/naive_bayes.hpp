#pragma once

#include <psel/ranking.hpp>

#include <cstdint>
#include <unordered_map>

namespace psel {

struct NbConfig
{
	double w0 = 1.0;    // prior weight on ln t(d)
	double tau1 = 10.0; // boost for a feature seen together with d
	double tau2 = 0.05; // penalty for a query feature never seen with d

	void validate() const;
};

/// Sparse usage counters. t(d): how often d was a dependency; s(d, phi): how often d
/// was a dependency of a fact with feature phi.
class NbCounters
{
public:
	void update(const LearningDatum& datum);

	std::uint32_t t(ConstantId dep) const;
	std::uint32_t s(ConstantId dep, ConstantId feature) const;
	std::size_t trained() const { return trained_; }

	/// Co-occurrence counts of one feature, keyed by dependency.
	const std::unordered_map<ConstantId, std::uint32_t>* cooccurrences(ConstantId feature) const;

	friend bool operator==(const NbCounters&, const NbCounters&) = default;

private:
	std::unordered_map<ConstantId, std::uint32_t> t_;
	std::unordered_map<ConstantId, std::unordered_map<ConstantId, std::uint32_t>> s_; // feature -> dep -> count
	std::size_t trained_ = 0;
};

NbCounters nb_update(NbCounters counters, const LearningDatum& datum);

/// Ranks candidates by
///   w0 ln t(d) + sum_{phi in F(c)} ln(max(tau1 s(d,phi) / t(d), tau2))   if s(d,phi) > 0
///                                  ln tau2                               otherwise
/// Candidates with t(d) = 0 follow every seen candidate, in tie order, with a score
/// one below the lowest seen score.
RankedList nb_order(const NbCounters& counters, const ConstantSet& query_features,
	std::span<const ConstantId> candidates, const NbConfig& cfg, const TieOrder& ties = {});

/// nb_order truncated to cutoff.
RankedList nb_rank(const NbCounters& counters, const ConstantSet& query_features,
	std::span<const ConstantId> candidates, std::size_t cutoff, const NbConfig& cfg, const TieOrder& ties = {});

class NaiveBayesRanker : public Ranker
{
public:
	explicit NaiveBayesRanker(NbConfig cfg = {}, TieOrder ties = {});

	void train(const LearningDatum& datum) override { counters_.update(datum); }
	RankedList order(const ConstantSet& query_features,
		std::span<const ConstantId> candidates, std::size_t cutoff) const override;

	const NbCounters& counters() const { return counters_; }

private:
	NbConfig cfg_;
	TieOrder ties_;
	NbCounters counters_;
};

} // namespace psel
