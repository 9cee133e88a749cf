#include <psel/metrics.hpp>

#include <algorithm>

namespace psel {

namespace {

void require_deps(const ConstantSet& deps)
{
	if(deps.empty())
		throw MetricError(MetricError::Kind::EmptyDeps, "query has no dependencies");
}

std::size_t hits_in_prefix(std::span<const ConstantId> ranking, const ConstantSet& deps, std::size_t n)
{
	std::size_t hits = 0;
	std::size_t limit = std::min(n, ranking.size());
	for(std::size_t i = 0; i < limit; ++i)
		if(contains(deps, ranking[i]))
			++hits;
	return hits;
}

} // namespace

double cover_at(std::span<const ConstantId> ranking, const ConstantSet& deps, std::size_t n)
{
	require_deps(deps);
	return static_cast<double>(hits_in_prefix(ranking, deps, n)) / static_cast<double>(deps.size());
}

double precision_at(std::span<const ConstantId> ranking, const ConstantSet& deps, std::size_t n)
{
	require_deps(deps);
	std::size_t shown = std::min(n, ranking.size());
	if(shown == 0)
		return 0.0;
	return static_cast<double>(hits_in_prefix(ranking, deps, n)) / static_cast<double>(shown);
}

std::size_t full_recall(std::span<const ConstantId> ranking, const ConstantSet& deps, std::size_t cutoff)
{
	require_deps(deps);
	std::size_t found = 0;
	std::size_t limit = std::min(cutoff, ranking.size());
	for(std::size_t i = 0; i < limit; ++i)
		if(contains(deps, ranking[i]) && ++found == deps.size())
			return i + 1;
	return cutoff + 1;
}

double avg_rank(std::span<const ConstantId> ranking, const ConstantSet& deps, std::size_t cutoff)
{
	require_deps(deps);
	std::size_t found = 0;
	double total = 0.0;
	std::size_t limit = std::min(cutoff, ranking.size());
	for(std::size_t i = 0; i < limit; ++i)
		if(contains(deps, ranking[i]))
		{
			++found;
			total += static_cast<double>(i + 1);
		}
	total += static_cast<double>(deps.size() - found) * static_cast<double>(cutoff + 1);
	return total / static_cast<double>(deps.size());
}

double auc(std::span<const ConstantId> full_order, const ConstantSet& deps)
{
	// Each used premise beats every unused premise after it.
	std::size_t used = 0, unused = 0;
	std::size_t unused_seen = 0;
	std::size_t beaten_before = 0; // sum over used premises of unused premises ahead of them
	for(ConstantId id : full_order)
	{
		if(contains(deps, id))
		{
			++used;
			beaten_before += unused_seen;
		}
		else
		{
			++unused;
			++unused_seen;
		}
	}
	if(used == 0 || unused == 0)
		throw MetricError(MetricError::Kind::DegenerateClasses, "AUC needs both used and unused premises");
	double pairs = static_cast<double>(used) * static_cast<double>(unused);
	double wins = pairs - static_cast<double>(beaten_before);
	return wins / pairs;
}

} // namespace psel
