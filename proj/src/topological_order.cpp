#include <psel/corpus.hpp>

#include <algorithm>
#include <functional>
#include <queue>

namespace psel {

namespace {

// Facts referenced (in statement or proof) by each fact, as declaration indices.
std::vector<std::vector<std::size_t>> referenced_facts(const Corpus& corpus)
{
	std::vector<std::vector<std::size_t>> refs(corpus.facts().size());
	for(const auto& fact : corpus.facts())
	{
		auto& out = refs[fact.decl_index];
		for(const auto* set : {&fact.stmt_constants, &fact.proof_constants})
			for(ConstantId id : *set)
				if(auto target = corpus.fact_index(id))
					out.push_back(*target);
		std::sort(out.begin(), out.end());
		out.erase(std::unique(out.begin(), out.end()), out.end());
	}
	return refs;
}

std::vector<std::string> find_cycle(const Corpus& corpus,
	const std::vector<std::vector<std::size_t>>& refs,
	const std::vector<std::size_t>& pending)
{
	// Every fact left over has an unplaced reference; following them must revisit a fact.
	std::size_t n = refs.size();
	std::vector<std::size_t> seen_at(n, n);
	std::vector<std::size_t> path;
	std::size_t current = n;
	for(std::size_t i = 0; i < n; ++i)
		if(pending[i] > 0)
		{
			current = i;
			break;
		}

	while(seen_at[current] == n)
	{
		seen_at[current] = path.size();
		path.push_back(current);
		for(std::size_t next : refs[current])
			if(pending[next] > 0)
			{
				current = next;
				break;
			}
	}

	std::vector<std::string> cycle;
	for(std::size_t i = seen_at[current]; i < path.size(); ++i)
		cycle.push_back(corpus.name(corpus.facts()[path[i]].name));
	return cycle;
}

} // namespace

std::vector<std::size_t> topological_order(const Corpus& corpus)
{
	auto refs = referenced_facts(corpus);
	std::size_t n = refs.size();

	std::vector<std::size_t> pending(n, 0);
	std::vector<std::vector<std::size_t>> referrers(n);
	for(std::size_t i = 0; i < n; ++i)
	{
		pending[i] = refs[i].size();
		for(std::size_t target : refs[i])
			referrers[target].push_back(i);
	}

	std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
	for(std::size_t i = 0; i < n; ++i)
		if(pending[i] == 0)
			ready.push(i);

	std::vector<std::size_t> order;
	order.reserve(n);
	while(!ready.empty())
	{
		std::size_t i = ready.top();
		ready.pop();
		order.push_back(i);
		for(std::size_t referrer : referrers[i])
			if(--pending[referrer] == 0)
				ready.push(referrer);
	}

	if(order.size() != n)
		throw CycleDetected(find_cycle(corpus, refs, pending));
	return order;
}

} // namespace psel
