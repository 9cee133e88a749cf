#include <psel/corpus.hpp>

#include <algorithm>
#include <limits>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

namespace psel {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

std::vector<std::string_view> split_tokens(std::string_view field)
{
	std::vector<std::string_view> tokens;
	std::size_t i = 0;
	while(i < field.size())
	{
		while(i < field.size() && field[i] == ' ')
			++i;
		std::size_t start = i;
		while(i < field.size() && field[i] != ' ')
			++i;
		if(i > start)
			tokens.push_back(field.substr(start, i - start));
	}
	return tokens;
}

void append_names(std::string& out, const Corpus& corpus, const ConstantSet& set)
{
	bool first = true;
	for(ConstantId id : set)
	{
		if(!first)
			out += ' ';
		out += corpus.name(id);
		first = false;
	}
}

} // namespace

ConstantId Interner::intern(std::string_view name)
{
	if(auto it = ids_.find(name); it != ids_.end())
		return it->second;
	auto id = constant_id(names_.size());
	names_.emplace_back(name);
	ids_.emplace(names_.back(), id);
	return id;
}

std::optional<ConstantId> Interner::find(std::string_view name) const
{
	if(auto it = ids_.find(name); it != ids_.end())
		return it->second;
	return std::nullopt;
}

bool Corpus::add_fact(std::string_view name,
	std::span<const std::string_view> stmt_constants,
	std::span<const std::string_view> proof_constants)
{
	if(auto existing = interner_.find(name); existing && fact_index(*existing))
		return false;

	FactRecord fact;
	fact.name = interner_.intern(name);
	fact.decl_index = facts_.size();
	auto collect = [&](std::span<const std::string_view> tokens, ConstantSet& out) {
		for(auto token : tokens)
		{
			auto id = interner_.intern(token);
			if(id != fact.name)
				out.push_back(id);
		}
		normalize(out);
	};
	collect(stmt_constants, fact.stmt_constants);
	collect(proof_constants, fact.proof_constants);

	fact_of_.resize(interner_.size(), npos);
	fact_of_[to_index(fact.name)] = fact.decl_index;
	facts_.push_back(std::move(fact));
	return true;
}

std::optional<std::size_t> Corpus::fact_index(ConstantId id) const
{
	auto i = to_index(id);
	if(i < fact_of_.size() && fact_of_[i] != npos)
		return fact_of_[i];
	return std::nullopt;
}

bool operator==(const Corpus& a, const Corpus& b)
{
	if(a.constant_count() != b.constant_count() || a.facts_.size() != b.facts_.size())
		return false;
	for(std::size_t i = 0; i < a.constant_count(); ++i)
		if(a.name(constant_id(i)) != b.name(constant_id(i)))
			return false;
	for(std::size_t i = 0; i < a.facts_.size(); ++i)
	{
		const auto& x = a.facts_[i];
		const auto& y = b.facts_[i];
		if(x.name != y.name || x.stmt_constants != y.stmt_constants || x.proof_constants != y.proof_constants
			|| x.decl_index != y.decl_index)
			return false;
	}
	return true;
}

Corpus corpus_from_raw(const std::vector<RawRecord>& records)
{
	Corpus corpus;
	for(std::size_t r = 0; r < records.size(); ++r)
	{
		std::vector<std::string_view> deps(records[r].deps.begin(), records[r].deps.end());
		if(!corpus.add_fact(records[r].name, {}, deps))
			throw Error(fmt::format("duplicate record name '{}' (record {})", records[r].name, r + 1));
	}
	return corpus;
}

Corpus parse_corpus_tsv(std::string_view text)
{
	Corpus corpus;
	std::size_t line_no = 0;
	std::size_t pos = 0;
	while(pos < text.size())
	{
		++line_no;
		auto end = text.find('\n', pos);
		if(end == std::string_view::npos)
			end = text.size();
		auto line = text.substr(pos, end - pos);
		pos = end + 1;

		if(!line.empty() && line.back() == '\r')
			line.remove_suffix(1);
		if(line.empty() || line.front() == '#')
			continue;

		std::vector<std::string_view> fields;
		std::size_t start = 0;
		for(;;)
		{
			auto tab = line.find('\t', start);
			fields.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
			if(tab == std::string_view::npos)
				break;
			start = tab + 1;
		}
		if(fields.size() != 3)
			throw CorpusError(CorpusError::Kind::MalformedLine, line_no,
				fmt::format("expected 3 tab-separated fields, found {}", fields.size()));

		auto name = fields[0];
		if(name.empty() || name.find(' ') != std::string_view::npos)
			throw CorpusError(CorpusError::Kind::MalformedLine, line_no, "name must be a single non-empty token");

		auto stmt = split_tokens(fields[1]);
		auto proof = split_tokens(fields[2]);
		if(!corpus.add_fact(name, stmt, proof))
			throw CorpusError(CorpusError::Kind::DuplicateFactName, line_no, std::string(name));
	}
	return corpus;
}

std::string serialize_corpus_tsv(const Corpus& corpus)
{
	std::string out;
	for(const auto& fact : corpus.facts())
	{
		out += corpus.name(fact.name);
		out += '\t';
		append_names(out, corpus, fact.stmt_constants);
		out += '\t';
		append_names(out, corpus, fact.proof_constants);
		out += '\n';
	}
	return out;
}

std::string escape_token(std::string_view name)
{
	std::string out;
	out.reserve(name.size());
	for(char c : name)
	{
		switch(c)
		{
		case ' ': out += "%20"; break;
		case '\t': out += "%09"; break;
		case '\n': out += "%0A"; break;
		case '\r': out += "%0D"; break;
		case '\v': out += "%0B"; break;
		case '\f': out += "%0C"; break;
		default: out += c;
		}
	}
	return out;
}

PartitionResult partition_constants(const Corpus& corpus)
{
	PartitionResult result;
	ConstantSet in_proofs;
	for(const auto& fact : corpus.facts())
	{
		result.allowed_features.insert(result.allowed_features.end(), fact.stmt_constants.begin(), fact.stmt_constants.end());
		in_proofs.insert(in_proofs.end(), fact.proof_constants.begin(), fact.proof_constants.end());
	}
	normalize(result.allowed_features);
	normalize(in_proofs);
	std::set_difference(in_proofs.begin(), in_proofs.end(),
		result.allowed_features.begin(), result.allowed_features.end(),
		std::back_inserter(result.allowed_dependencies));
	return result;
}

std::vector<LearningDatum> derive_learning_data(const Corpus& corpus, const PartitionResult& partition)
{
	std::vector<LearningDatum> data;
	data.reserve(corpus.facts().size());
	for(const auto& fact : corpus.facts())
	{
		data.push_back({
			fact.name,
			set_intersection(fact.stmt_constants, partition.allowed_features),
			set_intersection(fact.proof_constants, partition.allowed_dependencies)
		});
	}
	return data;
}

CorpusStats corpus_stats(const Corpus& corpus, const PartitionResult& partition, const QueryFilter& filter)
{
	CorpusStats stats;
	stats.total_facts = corpus.facts().size();
	stats.allowed_features = partition.allowed_features.size();
	stats.allowed_dependencies = partition.allowed_dependencies.size();

	std::set<ConstantId> features_seen;
	std::size_t feature_total = 0, dependency_total = 0;
	auto data = derive_learning_data(corpus, partition);
	for(const auto& datum : data)
	{
		if(!filter.matches(corpus.name(datum.fact)))
		{
			++stats.available_facts;
			continue;
		}
		if(datum.dependencies.empty())
			continue;
		++stats.evaluated_theorems;
		feature_total += datum.features.size();
		dependency_total += datum.dependencies.size();
		features_seen.insert(datum.features.begin(), datum.features.end());
	}
	stats.distinct_features = features_seen.size();
	if(stats.evaluated_theorems > 0)
	{
		stats.avg_features = static_cast<double>(feature_total) / static_cast<double>(stats.evaluated_theorems);
		stats.avg_dependencies = static_cast<double>(dependency_total) / static_cast<double>(stats.evaluated_theorems);
	}
	return stats;
}

std::string stats_to_text(const CorpusStats& stats)
{
	return fmt::format(
		"available_facts\t{}\n"
		"evaluated_theorems\t{}\n"
		"distinct_features\t{}\n"
		"avg_features\t{:.4f}\n"
		"avg_dependencies\t{:.4f}\n"
		"total_facts\t{}\n"
		"allowed_features\t{}\n"
		"allowed_dependencies\t{}\n",
		stats.available_facts, stats.evaluated_theorems, stats.distinct_features,
		stats.avg_features, stats.avg_dependencies,
		stats.total_facts, stats.allowed_features, stats.allowed_dependencies);
}

std::string stats_to_json(const CorpusStats& stats)
{
	nlohmann::ordered_json j;
	j["available_facts"] = stats.available_facts;
	j["evaluated_theorems"] = stats.evaluated_theorems;
	j["distinct_features"] = stats.distinct_features;
	j["avg_features"] = stats.avg_features;
	j["avg_dependencies"] = stats.avg_dependencies;
	j["total_facts"] = stats.total_facts;
	j["allowed_features"] = stats.allowed_features;
	j["allowed_dependencies"] = stats.allowed_dependencies;
	return j.dump(2) + "\n";
}

} // namespace psel
