#pragma once

#include <psel/ranking.hpp>

#include <cstdint>
#include <unordered_map>

namespace psel {

struct KnnConfig
{
	std::size_t k = 100;
	bool use_idf = true;
	double self_weight = 1.0; // lambda: a neighbour's own candidacy weight

	void validate() const;
};

/// ln((trained_facts + 1) / (feature_occurrences + 1)) + 1
double idf_weight(std::size_t trained_facts, std::size_t feature_occurrences);

/// Distance-weighted k-nearest-neighbours ranker.
///
/// sim(c, f) = sum over shared features of w(phi)^2, with w the IDF weight (or 1).
/// The k most similar trained facts vote: each neighbour f adds sim(c, f) to every
/// one of its dependencies and self_weight * sim(c, f) to f itself.
class KnnRanker : public Ranker
{
public:
	explicit KnnRanker(KnnConfig cfg = {}, TieOrder ties = {});

	void train(const LearningDatum& datum) override;
	RankedList order(const ConstantSet& query_features,
		std::span<const ConstantId> candidates, std::size_t cutoff) const override;

	std::size_t trained() const { return samples_.size(); }
	const KnnConfig& config() const { return cfg_; }

private:
	struct Sample
	{
		ConstantId fact;
		ConstantSet dependencies;
	};

	KnnConfig cfg_;
	TieOrder ties_;
	std::vector<Sample> samples_;
	std::unordered_map<ConstantId, std::vector<std::uint32_t>> postings_; // feature -> sample indices
};

} // namespace psel
