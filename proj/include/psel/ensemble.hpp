#pragma once

#include <psel/ranking.hpp>

#include <memory>

namespace psel {

/// Weighted harmonic mean of rank positions. A candidate missing from a ranking of
/// length P takes position P + 1 there. Output is sorted by combined position
/// ascending (ties in tie order), truncated to cutoff; the emitted score is
/// -combined so that scores are non-increasing.
///
/// Throws ConfigError unless |rankings| = |weights| >= 2 and every weight is finite and > 0.
RankedList harmonic_combine(std::span<const RankedList> rankings, std::span<const double> weights,
	std::span<const ConstantId> candidates, std::size_t cutoff, const TieOrder& ties = {});

/// Combines the cutoff-limited rankings of its members.
class EnsembleRanker : public Ranker
{
public:
	EnsembleRanker(std::vector<std::unique_ptr<Ranker>> members, std::vector<double> weights, TieOrder ties = {});

	void train(const LearningDatum& datum) override;
	RankedList order(const ConstantSet& query_features,
		std::span<const ConstantId> candidates, std::size_t cutoff) const override;

private:
	std::vector<std::unique_ptr<Ranker>> members_;
	std::vector<double> weights_;
	TieOrder ties_;
};

} // namespace psel
