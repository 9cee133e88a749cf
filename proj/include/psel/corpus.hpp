#pragma once

#include <psel/types.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace psel {

/// Bijective name <-> ConstantId map. Ids are dense, in first-appearance order.
class Interner
{
public:
	ConstantId intern(std::string_view name);
	std::optional<ConstantId> find(std::string_view name) const;
	const std::string& name(ConstantId id) const { return names_.at(to_index(id)); }
	std::size_t size() const { return names_.size(); }

private:
	std::vector<std::string> names_;
	std::map<std::string, ConstantId, std::less<>> ids_;
};

struct FactRecord
{
	ConstantId name;
	ConstantSet stmt_constants;
	ConstantSet proof_constants;
	std::size_t decl_index = 0;
};

/// Ordered fact records plus the interner for every constant they mention.
/// Constants referenced without a record of their own (primitives, externals)
/// stay interned and take part in the partition like any other constant.
class Corpus
{
public:
	/// Appends a record in declaration order. Constants are interned name first,
	/// then statement tokens, then proof tokens. Self-references are dropped.
	/// Returns false (and leaves the corpus unchanged) if the name already has a record.
	[[nodiscard]] bool add_fact(std::string_view name,
		std::span<const std::string_view> stmt_constants,
		std::span<const std::string_view> proof_constants);

	const std::vector<FactRecord>& facts() const { return facts_; }
	const Interner& interner() const { return interner_; }
	const std::string& name(ConstantId id) const { return interner_.name(id); }
	std::size_t constant_count() const { return interner_.size(); }

	/// Declaration index of the record defining id, if any.
	std::optional<std::size_t> fact_index(ConstantId id) const;

	friend bool operator==(const Corpus& a, const Corpus& b);

private:
	Interner interner_;
	std::vector<FactRecord> facts_;
	std::vector<std::size_t> fact_of_; // constant index -> decl_index, or npos
};

/// One record of the raw dependency dump: construct name and its references in dump order.
struct RawRecord
{
	std::string name;
	std::vector<std::string> deps;

	friend bool operator==(const RawRecord&, const RawRecord&) = default;
};

/// Parses `"name" ("dep" "dep" ...)` records. Quoted text is taken verbatim.
/// Throws ParseError with the byte offset of the offending input.
std::vector<RawRecord> parse_raw_deps(std::string_view text);

/// Builds a corpus from raw records: proof constants filled, statement constants empty.
/// Throws Error on a repeated record name.
Corpus corpus_from_raw(const std::vector<RawRecord>& records);

/// Parses the canonical `name<TAB>stmt<TAB>proof` format. Throws CorpusError.
Corpus parse_corpus_tsv(std::string_view text);

std::string serialize_corpus_tsv(const Corpus& corpus);

/// Names containing whitespace cannot be written as TSV tokens; whitespace bytes are
/// percent-escaped (%20, %09, %0A, %0D, %0B, %0C). Other bytes are left alone.
std::string escape_token(std::string_view name);

/// Feature/dependency split of all constants.
struct PartitionResult
{
	ConstantSet allowed_features;     // every constant in some statement
	ConstantSet allowed_dependencies; // constants in some proof, minus the features
};

PartitionResult partition_constants(const Corpus& corpus);

struct LearningDatum
{
	ConstantId fact;
	ConstantSet features;
	ConstantSet dependencies;
};

/// Per fact, in declaration order: features = stmt ∩ F_C, dependencies = proof ∩ D_C.
std::vector<LearningDatum> derive_learning_data(const Corpus& corpus, const PartitionResult& partition);

/// Stable topological order of declaration indices: referenced facts first, otherwise
/// ascending declaration order. Throws CycleDetected with one witness cycle.
std::vector<std::size_t> topological_order(const Corpus& corpus);

/// Selects evaluated theorems by name prefix. The empty prefix matches everything.
struct QueryFilter
{
	std::string prefix;

	bool matches(std::string_view name) const { return name.starts_with(prefix); }
};

struct CorpusStats
{
	std::size_t available_facts = 0;    // records not matching the filter (the premise library)
	std::size_t evaluated_theorems = 0; // matching records with at least one dependency
	std::size_t distinct_features = 0;
	double avg_features = 0.0;
	double avg_dependencies = 0.0;
	std::size_t total_facts = 0;
	std::size_t allowed_features = 0;
	std::size_t allowed_dependencies = 0;
};

CorpusStats corpus_stats(const Corpus& corpus, const PartitionResult& partition, const QueryFilter& filter);

std::string stats_to_text(const CorpusStats& stats);
std::string stats_to_json(const CorpusStats& stats);

} // namespace psel
