#include <psel/evaluation.hpp>

#include <psel/metrics.hpp>

#include <exception>
#include <numeric>
#include <thread>
#include <utility>

#include <fmt/format.h>
#include <json.hpp>

namespace psel {

namespace {

struct EvalPlan
{
	const Corpus& corpus;
	std::span<const std::size_t> order;
	std::vector<LearningDatum> data;
	std::vector<bool> allowed_dependency; // by constant index
	std::vector<ConstantId> initial_pool;
	std::vector<std::size_t> query_positions; // positions in `order`
	TieOrder ties;
	const LearnerConfig& learner;
	std::size_t cutoff;
};

QueryResult evaluate_query(const EvalPlan& plan, const Ranker& ranker, const LearningDatum& datum,
	const std::vector<ConstantId>& pool)
{
	QueryResult r;
	r.query = datum.fact;
	r.dependency_count = datum.dependencies.size();
	r.pool_size = pool.size();

	auto full = ranker.order(datum.features, pool, plan.cutoff).ids();
	std::span<const ConstantId> ranking(full.data(), std::min(plan.cutoff, full.size()));
	const auto& deps = datum.dependencies;

	r.cover100 = cover_at(ranking, deps, 100);
	r.precision100 = precision_at(ranking, deps, 100);
	r.full_recall = full_recall(ranking, deps, plan.cutoff);
	r.avg_rank = avg_rank(ranking, deps, plan.cutoff);
	try
	{
		r.auc = auc(full, deps);
	}
	catch(const MetricError& e)
	{
		if(e.kind() != MetricError::Kind::DegenerateClasses)
			throw;
	}
	r.ranking.assign(ranking.begin(), ranking.end());
	return r;
}

// Evaluates queries [first, last) of the plan, training from scratch on the prefix before them.
void run_block(const EvalPlan& plan, std::size_t first, std::size_t last, std::vector<QueryResult>& results)
{
	auto ranker = make_ranker(plan.learner, plan.ties);
	auto pool = plan.initial_pool;
	std::size_t pos = 0;
	auto feed = [&](std::size_t p) {
		const auto& datum = plan.data[plan.order[p]];
		ranker->train(datum);
		if(plan.allowed_dependency[to_index(datum.fact)])
			pool.push_back(datum.fact);
	};

	for(std::size_t q = first; q < last; ++q)
	{
		std::size_t target = plan.query_positions[q];
		for(; pos < target; ++pos)
			feed(pos);
		results[q] = evaluate_query(plan, *ranker, plan.data[plan.order[target]], pool);
	}
}

void check_order(const Corpus& corpus, std::span<const std::size_t> order)
{
	std::vector<bool> seen(corpus.facts().size(), false);
	for(std::size_t i : order)
	{
		if(i >= seen.size() || seen[i])
			throw Error("evaluation order must list distinct facts of the corpus");
		seen[i] = true;
	}
}

std::vector<std::pair<std::string, std::string>> config_fields(const LearnerConfig& cfg, std::size_t cutoff, const std::string& prefix)
{
	return {
		{"method", std::string(to_string(cfg.method))},
		{"cutoff", fmt::format("{}", cutoff)},
		{"prefix", prefix},
		{"knn.k", fmt::format("{}", cfg.knn.k)},
		{"knn.idf", cfg.knn.use_idf ? "true" : "false"},
		{"knn.self-weight", fmt::format("{}", cfg.knn.self_weight)},
		{"nb.w0", fmt::format("{}", cfg.nb.w0)},
		{"nb.tau1", fmt::format("{}", cfg.nb.tau1)},
		{"nb.tau2", fmt::format("{}", cfg.nb.tau2)},
		{"mepo.p0", fmt::format("{}", cfg.mepo.p0)},
		{"mepo.budget", cfg.mepo.budget ? fmt::format("{}", *cfg.mepo.budget) : std::string("cutoff")},
		{"ensemble", format_ensemble(cfg.ensemble)},
	};
}

std::string table_row(const MetricsReport& r)
{
	const auto& a = r.aggregate;
	return fmt::format("{}\t{:.2f}\t{:.5f}\t{:.2f}\t{:.4f}\t{:.2f}\t{}\t{}\t{}\n",
		to_string(r.learner.method), 100.0 * a.cover100, a.precision100, a.full_recall, a.auc, a.avg_rank,
		a.queries, a.auc_queries, a.matching_theorems);
}

constexpr const char* table_header = "method\t100Cover(%)\t100Precision\tRecall\tAuc\tRank\tqueries\tauc_queries\tmatching_theorems\n";

nlohmann::ordered_json aggregate_json(const MetricsAggregate& a)
{
	nlohmann::ordered_json j;
	j["cover100"] = a.cover100;
	j["precision100"] = a.precision100;
	j["full_recall"] = a.full_recall;
	j["auc"] = a.auc;
	j["avg_rank"] = a.avg_rank;
	j["queries"] = a.queries;
	j["auc_queries"] = a.auc_queries;
	j["matching_theorems"] = a.matching_theorems;
	return j;
}

nlohmann::ordered_json config_json(const MetricsReport& report)
{
	nlohmann::ordered_json j;
	for(auto& [key, value] : config_fields(report.learner, report.cutoff, report.prefix))
		j[key] = value;
	return j;
}

} // namespace

MetricsReport chronological_eval(const Corpus& corpus, const PartitionResult& partition,
	std::span<const std::size_t> order, const LearnerConfig& learner, const EvalOptions& options)
{
	learner.validate();
	if(options.cutoff < 1)
		throw ConfigError("cutoff must be at least 1");
	if(options.threads < 1)
		throw ConfigError("threads must be at least 1");
	check_order(corpus, order);

	EvalPlan plan{corpus, order, derive_learning_data(corpus, partition), {}, {}, {}, TieOrder(corpus), learner, options.cutoff};
	plan.allowed_dependency.assign(corpus.constant_count(), false);
	for(ConstantId id : partition.allowed_dependencies)
	{
		plan.allowed_dependency[to_index(id)] = true;
		if(!corpus.fact_index(id))
			plan.initial_pool.push_back(id);
	}

	MetricsReport report;
	report.learner = learner;
	report.cutoff = options.cutoff;
	report.prefix = options.filter.prefix;

	std::size_t matching = 0;
	for(std::size_t pos = 0; pos < order.size(); ++pos)
	{
		const auto& datum = plan.data[order[pos]];
		if(!options.filter.matches(corpus.name(datum.fact)))
			continue;
		++matching;
		if(!datum.dependencies.empty())
			plan.query_positions.push_back(pos);
	}

	std::size_t queries = plan.query_positions.size();
	report.per_query.resize(queries);
	std::size_t blocks = std::max<std::size_t>(1, std::min(options.threads, queries));
	auto bound = [&](std::size_t b) { return b * queries / blocks; };

	std::vector<std::exception_ptr> errors(blocks);
	{
		std::vector<std::jthread> workers;
		for(std::size_t b = 1; b < blocks; ++b)
			workers.emplace_back([&, b] {
				try
				{
					run_block(plan, bound(b), bound(b + 1), report.per_query);
				}
				catch(...)
				{
					errors[b] = std::current_exception();
				}
			});
		try
		{
			run_block(plan, bound(0), bound(1), report.per_query);
		}
		catch(...)
		{
			errors[0] = std::current_exception();
		}
	}
	for(auto& e : errors)
		if(e)
			std::rethrow_exception(e);

	report.aggregate = aggregate_results(report.per_query);
	report.aggregate.matching_theorems = matching;
	return report;
}

MetricsAggregate aggregate_results(std::span<const QueryResult> results)
{
	MetricsAggregate a;
	a.queries = results.size();
	for(const auto& r : results)
	{
		a.cover100 += r.cover100;
		a.precision100 += r.precision100;
		a.full_recall += static_cast<double>(r.full_recall);
		a.avg_rank += r.avg_rank;
		if(r.auc)
		{
			a.auc += *r.auc;
			++a.auc_queries;
		}
	}
	if(a.queries > 0)
	{
		auto n = static_cast<double>(a.queries);
		a.cover100 /= n;
		a.precision100 /= n;
		a.full_recall /= n;
		a.avg_rank /= n;
	}
	if(a.auc_queries > 0)
		a.auc /= static_cast<double>(a.auc_queries);
	return a;
}

std::string report_to_tsv(const MetricsReport& report, const Corpus& corpus)
{
	std::string out = "#";
	for(auto& [key, value] : config_fields(report.learner, report.cutoff, report.prefix))
		out += fmt::format(" {}={}", key, value);
	out += "\nquery\tdeps\tpool\tcover100\tprecision100\trecall\tauc\trank\n";
	for(const auto& r : report.per_query)
	{
		out += fmt::format("{}\t{}\t{}\t{:.6f}\t{:.6f}\t{}\t{}\t{:.6f}\n",
			corpus.name(r.query), r.dependency_count, r.pool_size, r.cover100, r.precision100, r.full_recall,
			r.auc ? fmt::format("{:.6f}", *r.auc) : std::string("NA"), r.avg_rank);
	}
	out += "# aggregate\n";
	out += table_header;
	out += table_row(report);
	return out;
}

std::string report_to_json(const MetricsReport& report, const Corpus& corpus)
{
	nlohmann::ordered_json j;
	j["config"] = config_json(report);
	auto rows = nlohmann::ordered_json::array();
	for(const auto& r : report.per_query)
	{
		nlohmann::ordered_json row;
		row["query"] = corpus.name(r.query);
		row["deps"] = r.dependency_count;
		row["pool"] = r.pool_size;
		row["cover100"] = r.cover100;
		row["precision100"] = r.precision100;
		row["full_recall"] = r.full_recall;
		row["auc"] = r.auc ? nlohmann::ordered_json(*r.auc) : nlohmann::ordered_json(nullptr);
		row["avg_rank"] = r.avg_rank;
		rows.push_back(std::move(row));
	}
	j["per_query"] = std::move(rows);
	j["aggregate"] = aggregate_json(report.aggregate);
	return j.dump(2) + "\n";
}

std::string comparison_to_tsv(std::span<const MetricsReport> reports)
{
	std::string out = table_header;
	for(const auto& r : reports)
		out += table_row(r);
	return out;
}

std::string comparison_to_json(std::span<const MetricsReport> reports)
{
	auto j = nlohmann::ordered_json::array();
	for(const auto& r : reports)
	{
		nlohmann::ordered_json row;
		row["config"] = config_json(r);
		row["aggregate"] = aggregate_json(r.aggregate);
		j.push_back(std::move(row));
	}
	return j.dump(2) + "\n";
}

} // namespace psel
