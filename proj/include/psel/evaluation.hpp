#pragma once

#include <psel/corpus.hpp>
#include <psel/learner_config.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace psel {

struct QueryResult
{
	ConstantId query;
	std::size_t dependency_count = 0;
	std::size_t pool_size = 0;
	double cover100 = 0.0;
	double precision100 = 0.0;
	std::size_t full_recall = 0;
	std::optional<double> auc; // empty when the pool holds only dependencies
	double avg_rank = 0.0;
	std::vector<ConstantId> ranking; // cutoff-limited

	friend bool operator==(const QueryResult&, const QueryResult&) = default;
};

struct MetricsAggregate
{
	double cover100 = 0.0;
	double precision100 = 0.0;
	double full_recall = 0.0;
	double auc = 0.0;
	double avg_rank = 0.0;
	std::size_t queries = 0;           // evaluated: matching the filter, with dependencies
	std::size_t auc_queries = 0;       // queries with a defined AUC
	std::size_t matching_theorems = 0; // matching the filter, with or without dependencies

	friend bool operator==(const MetricsAggregate&, const MetricsAggregate&) = default;
};

struct EvalOptions
{
	std::size_t cutoff = 1024;
	QueryFilter filter;
	std::size_t threads = 1;
};

struct MetricsReport
{
	std::vector<QueryResult> per_query; // in evaluation order
	MetricsAggregate aggregate;
	LearnerConfig learner;
	std::size_t cutoff = 0;
	std::string prefix;
};

/// Chronological evaluation. Facts are visited in `order`; every fact matching the
/// filter with at least one dependency is a query, ranked by a learner trained on
/// exactly the facts before it. The candidate pool is the allowed dependencies that
/// are defined earlier in the order, plus record-less constants (available from the
/// start). Each fact is fed to the learner after its own query. `order` may be a
/// prefix of a topological order; facts it omits are never visited.
///
/// With threads > 1 the queries are split into contiguous blocks; each worker
/// replays the training prefix of its block, so results do not depend on the
/// thread count.
MetricsReport chronological_eval(const Corpus& corpus, const PartitionResult& partition,
	std::span<const std::size_t> order, const LearnerConfig& learner, const EvalOptions& options = {});

/// Arithmetic means over per-query results (AUC over queries where it is defined).
MetricsAggregate aggregate_results(std::span<const QueryResult> results);

/// One row per query plus an aggregate row.
std::string report_to_tsv(const MetricsReport& report, const Corpus& corpus);
std::string report_to_json(const MetricsReport& report, const Corpus& corpus);

/// Method comparison rows: method, 100Cover(%), 100Precision, Recall, Auc, Rank.
std::string comparison_to_tsv(std::span<const MetricsReport> reports);
std::string comparison_to_json(std::span<const MetricsReport> reports);

} // namespace psel
