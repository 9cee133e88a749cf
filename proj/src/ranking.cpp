#include <psel/ranking.hpp>

#include <algorithm>
#include <unordered_set>

namespace psel {

TieOrder::TieOrder(const Corpus& corpus)
{
	std::size_t facts = corpus.facts().size();
	keys_.resize(corpus.constant_count());
	std::vector<std::size_t> recordless;
	for(std::size_t i = 0; i < keys_.size(); ++i)
	{
		if(auto index = corpus.fact_index(constant_id(i)))
			keys_[i] = *index;
		else
			recordless.push_back(i);
	}
	// By name: interning order would reveal where a constant is first used.
	std::sort(recordless.begin(), recordless.end(), [&](std::size_t a, std::size_t b) {
		return corpus.name(constant_id(a)) < corpus.name(constant_id(b));
	});
	for(std::size_t k = 0; k < recordless.size(); ++k)
		keys_[recordless[k]] = facts + k;
}

void RankedList::truncate(std::size_t cutoff)
{
	if(entries.size() > cutoff)
		entries.resize(cutoff);
}

std::vector<ConstantId> RankedList::ids() const
{
	std::vector<ConstantId> out;
	out.reserve(entries.size());
	for(const auto& e : entries)
		out.push_back(e.id);
	return out;
}

RankedList sort_ranked(std::vector<RankedEntry> entries, const TieOrder& ties)
{
	std::sort(entries.begin(), entries.end(), [&](const RankedEntry& a, const RankedEntry& b) {
		if(a.score != b.score)
			return a.score > b.score;
		return ties.key(a.id) < ties.key(b.id);
	});
	return {std::move(entries)};
}

std::vector<ConstantId> unique_candidates(std::span<const ConstantId> candidates)
{
	std::vector<ConstantId> out;
	out.reserve(candidates.size());
	std::unordered_set<ConstantId> seen;
	for(ConstantId id : candidates)
		if(seen.insert(id).second)
			out.push_back(id);
	return out;
}

} // namespace psel
