#pragma once

#include <psel/corpus.hpp>
#include <psel/types.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace psel {

/// Tie-break order over constants: declaration index of the defining fact, with
/// record-less constants after every fact, by name. A default-constructed order
/// falls back to id order, which is convenient for corpus-free callers.
class TieOrder
{
public:
	TieOrder() = default;
	explicit TieOrder(const Corpus& corpus);

	std::uint64_t key(ConstantId id) const
	{
		auto i = to_index(id);
		return i < keys_.size() ? keys_[i] : keys_.size() + i;
	}

	bool before(ConstantId a, ConstantId b) const { return key(a) < key(b); }

private:
	std::vector<std::uint64_t> keys_;
};

struct RankedEntry
{
	ConstantId id;
	double score;

	friend bool operator==(const RankedEntry&, const RankedEntry&) = default;
};

/// Candidates ordered by (score desc, tie key asc). Positions are 1-based.
struct RankedList
{
	std::vector<RankedEntry> entries;

	std::size_t size() const { return entries.size(); }
	bool empty() const { return entries.empty(); }
	void truncate(std::size_t cutoff);
	std::vector<ConstantId> ids() const;

	friend bool operator==(const RankedList&, const RankedList&) = default;
};

/// Sorts scored entries into a RankedList.
RankedList sort_ranked(std::vector<RankedEntry> entries, const TieOrder& ties);

/// Candidate list without duplicates, in first-occurrence order.
std::vector<ConstantId> unique_candidates(std::span<const ConstantId> candidates);

/// Uniform premise ranking contract. Training is exclusive; order() is a pure
/// function of the accumulated training state and its arguments.
class Ranker
{
public:
	virtual ~Ranker() = default;

	virtual void train(const LearningDatum& datum) = 0;

	/// Total order over all candidates. cutoff is the length the caller will report;
	/// rankers may use it (MePo takes it as the default selection budget).
	virtual RankedList order(const ConstantSet& query_features,
		std::span<const ConstantId> candidates, std::size_t cutoff) const = 0;

	/// order() truncated to min(cutoff, |candidates|) entries.
	RankedList rank(const ConstantSet& query_features, std::span<const ConstantId> candidates, std::size_t cutoff) const
	{
		auto list = order(query_features, candidates, cutoff);
		list.truncate(cutoff);
		return list;
	}
};

} // namespace psel
