#include <psel/mepo.hpp>

#include <algorithm>
#include <set>
#include <unordered_set>

namespace psel {

void MepoConfig::validate() const
{
	if(!(p0 > 0.0 && p0 < 1.0))
		throw ConfigError("mepo.p0 must lie in (0, 1)");
	if(budget && *budget == 0)
		throw ConfigError("mepo.budget must be at least 1");
}

std::vector<MepoPick> mepo_select(const FeatureTable& features, const ConstantSet& query_features,
	std::span<const ConstantId> candidates, std::size_t budget, double p0, const TieOrder& ties)
{
	auto cands = unique_candidates(candidates);
	std::size_t n = cands.size();

	static const ConstantSet no_features;
	std::vector<const ConstantSet*> fset(n, &no_features);
	std::vector<std::size_t> relevant(n, 0);
	std::unordered_map<ConstantId, std::vector<std::size_t>> holders; // feature -> candidate slots
	std::unordered_set<ConstantId> relevant_set(query_features.begin(), query_features.end());
	for(std::size_t i = 0; i < n; ++i)
	{
		if(auto it = features.find(cands[i]); it != features.end())
			fset[i] = &it->second;
		for(ConstantId phi : *fset[i])
		{
			holders[phi].push_back(i);
			if(relevant_set.count(phi))
				++relevant[i];
		}
	}

	auto score = [&](std::size_t i) { return mepo_score(relevant[i], fset[i]->size()); };
	auto better = [&](std::size_t a, std::size_t b) {
		double sa = score(a), sb = score(b);
		if(sa != sb)
			return sa > sb;
		return ties.key(cands[a]) < ties.key(cands[b]);
	};
	std::set<std::size_t, decltype(better)> pending(better);
	for(std::size_t i = 0; i < n; ++i)
		pending.insert(i);

	std::vector<MepoPick> picks;
	picks.reserve(n);
	std::size_t target = std::min(budget, n);
	double p = p0;
	std::size_t round = 0;
	while(picks.size() < target)
	{
		++round;
		std::vector<std::size_t> chosen;
		for(auto it = pending.begin(); it != pending.end() && picks.size() + chosen.size() < target; ++it)
		{
			if(score(*it) < p)
				break;
			chosen.push_back(*it);
		}
		if(chosen.empty())
			chosen.push_back(*pending.begin());

		for(std::size_t i : chosen)
		{
			pending.erase(i);
			picks.push_back({cands[i], round, score(i)});
		}
		for(std::size_t i : chosen)
			for(ConstantId phi : *fset[i])
			{
				if(!relevant_set.insert(phi).second)
					continue;
				for(std::size_t h : holders[phi])
				{
					bool queued = pending.erase(h) > 0;
					++relevant[h];
					if(queued)
						pending.insert(h);
				}
			}
		p += (1.0 - p) / 2.0;
	}

	for(std::size_t i : pending)
		picks.push_back({cands[i], 0, score(i)});
	return picks;
}

RankedList mepo_order(const FeatureTable& features, const ConstantSet& query_features,
	std::span<const ConstantId> candidates, std::size_t cutoff, const MepoConfig& cfg, const TieOrder& ties)
{
	auto picks = mepo_select(features, query_features, candidates, cfg.budget.value_or(cutoff), cfg.p0, ties);
	std::size_t rounds = 0;
	for(const auto& pick : picks)
		rounds = std::max(rounds, pick.round);

	RankedList list;
	list.entries.reserve(picks.size());
	for(const auto& pick : picks)
	{
		double emitted = pick.round == 0 ? pick.score : 2.0 * static_cast<double>(rounds - pick.round + 1) + pick.score;
		list.entries.push_back({pick.id, emitted});
	}
	return list;
}

RankedList mepo_rank(const FeatureTable& features, const ConstantSet& query_features,
	std::span<const ConstantId> candidates, std::size_t cutoff, const MepoConfig& cfg, const TieOrder& ties)
{
	auto list = mepo_order(features, query_features, candidates, cutoff, cfg, ties);
	list.truncate(cutoff);
	return list;
}

MepoRanker::MepoRanker(MepoConfig cfg, TieOrder ties)
	: cfg_(cfg)
	, ties_(std::move(ties))
{
	cfg_.validate();
}

RankedList MepoRanker::order(const ConstantSet& query_features,
	std::span<const ConstantId> candidates, std::size_t cutoff) const
{
	return mepo_order(features_, query_features, candidates, cutoff, cfg_, ties_);
}

} // namespace psel
