#pragma once

#include <psel/ranking.hpp>

#include <optional>
#include <unordered_map>

namespace psel {

struct MepoConfig
{
	std::optional<std::size_t> budget; // facts to select by rounds; defaults to the cutoff
	double p0 = 0.6;                   // first-round threshold; p <- p + (1 - p) / 2 afterwards

	void validate() const;
};

/// Statement features of each candidate. Candidates without an entry have none.
using FeatureTable = std::unordered_map<ConstantId, ConstantSet>;

/// Relevance of a fact with `total` features, `relevant` of which are in the relevant set.
/// Facts without features score 0.
inline double mepo_score(std::size_t relevant, std::size_t total)
{
	return total == 0 ? 0.0 : static_cast<double>(relevant) / static_cast<double>(total);
}

struct MepoPick
{
	ConstantId id;
	std::size_t round; // 1-based; 0 for facts never selected
	double score;      // at selection, or against the final relevant set if unselected
};

/// Iterative relevance filtering. The relevant set starts as the query features.
/// Each round scores every unselected candidate r / (r + i), selects all with
/// score >= p (best first, capped by the remaining budget) or the single best one
/// if none reaches p, adds their features to the relevant set and raises p.
/// Returns round-selected candidates in selection order followed by the rest
/// ordered by final score.
std::vector<MepoPick> mepo_select(const FeatureTable& features, const ConstantSet& query_features,
	std::span<const ConstantId> candidates, std::size_t budget, double p0, const TieOrder& ties = {});

/// Complete MePo order. Emitted scores encode the selection round so that they are
/// non-increasing: round r of R gives 2 (R - r + 1) + score, unselected keep their score.
RankedList mepo_order(const FeatureTable& features, const ConstantSet& query_features,
	std::span<const ConstantId> candidates, std::size_t cutoff, const MepoConfig& cfg, const TieOrder& ties = {});

RankedList mepo_rank(const FeatureTable& features, const ConstantSet& query_features,
	std::span<const ConstantId> candidates, std::size_t cutoff, const MepoConfig& cfg, const TieOrder& ties = {});

/// Remembers each trained fact's statement features; uses no dependency data.
class MepoRanker : public Ranker
{
public:
	explicit MepoRanker(MepoConfig cfg = {}, TieOrder ties = {});

	void train(const LearningDatum& datum) override { features_[datum.fact] = datum.features; }
	RankedList order(const ConstantSet& query_features,
		std::span<const ConstantId> candidates, std::size_t cutoff) const override;

private:
	MepoConfig cfg_;
	TieOrder ties_;
	FeatureTable features_;
};

} // namespace psel
