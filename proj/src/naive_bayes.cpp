#include <psel/naive_bayes.hpp>

#include <algorithm>
#include <cmath>

namespace psel {

void NbConfig::validate() const
{
	if(!std::isfinite(w0))
		throw ConfigError("nb.w0 must be finite");
	if(!(tau1 > 0.0) || !std::isfinite(tau1))
		throw ConfigError("nb.tau1 must be > 0");
	if(!(tau2 > 0.0 && tau2 < 1.0))
		throw ConfigError("nb.tau2 must lie in (0, 1)");
}

void NbCounters::update(const LearningDatum& datum)
{
	for(ConstantId dep : datum.dependencies)
	{
		++t_[dep];
		for(ConstantId feature : datum.features)
			++s_[feature][dep];
	}
	++trained_;
}

std::uint32_t NbCounters::t(ConstantId dep) const
{
	auto it = t_.find(dep);
	return it == t_.end() ? 0 : it->second;
}

std::uint32_t NbCounters::s(ConstantId dep, ConstantId feature) const
{
	auto* row = cooccurrences(feature);
	if(!row)
		return 0;
	auto it = row->find(dep);
	return it == row->end() ? 0 : it->second;
}

const std::unordered_map<ConstantId, std::uint32_t>* NbCounters::cooccurrences(ConstantId feature) const
{
	auto it = s_.find(feature);
	return it == s_.end() ? nullptr : &it->second;
}

NbCounters nb_update(NbCounters counters, const LearningDatum& datum)
{
	counters.update(datum);
	return counters;
}

RankedList nb_order(const NbCounters& counters, const ConstantSet& query_features,
	std::span<const ConstantId> candidates, const NbConfig& cfg, const TieOrder& ties)
{
	const double miss = std::log(cfg.tau2);

	std::vector<const std::unordered_map<ConstantId, std::uint32_t>*> rows;
	rows.reserve(query_features.size());
	for(ConstantId feature : query_features)
		rows.push_back(counters.cooccurrences(feature));

	std::vector<RankedEntry> seen, unseen;
	for(ConstantId d : unique_candidates(candidates))
	{
		auto t = counters.t(d);
		if(t == 0)
		{
			unseen.push_back({d, 0.0});
			continue;
		}
		double td = static_cast<double>(t);
		double score = cfg.w0 * std::log(td);
		for(const auto* row : rows)
		{
			std::uint32_t s = 0;
			if(row)
				if(auto it = row->find(d); it != row->end())
					s = it->second;
			score += s > 0 ? std::log(std::max(cfg.tau1 * static_cast<double>(s) / td, cfg.tau2)) : miss;
		}
		seen.push_back({d, score});
	}

	auto ranked = sort_ranked(std::move(seen), ties);
	double floor = ranked.empty() ? 0.0 : ranked.entries.back().score - 1.0;
	for(auto& e : unseen)
		e.score = floor;
	auto tail = sort_ranked(std::move(unseen), ties);
	ranked.entries.insert(ranked.entries.end(), tail.entries.begin(), tail.entries.end());
	return ranked;
}

RankedList nb_rank(const NbCounters& counters, const ConstantSet& query_features,
	std::span<const ConstantId> candidates, std::size_t cutoff, const NbConfig& cfg, const TieOrder& ties)
{
	auto ranked = nb_order(counters, query_features, candidates, cfg, ties);
	ranked.truncate(cutoff);
	return ranked;
}

NaiveBayesRanker::NaiveBayesRanker(NbConfig cfg, TieOrder ties)
	: cfg_(cfg)
	, ties_(std::move(ties))
{
	cfg_.validate();
}

RankedList NaiveBayesRanker::order(const ConstantSet& query_features,
	std::span<const ConstantId> candidates, std::size_t) const
{
	return nb_order(counters_, query_features, candidates, cfg_, ties_);
}

} // namespace psel
