#include <psel/cli.hpp>

#include <psel/corpus.hpp>
#include <psel/evaluation.hpp>
#include <psel/syngen.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

namespace psel {

namespace {

class IoError : public Error
{
public:
	using Error::Error;
};

std::string_view trim(std::string_view s)
{
	while(!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
		s.remove_prefix(1);
	while(!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
		s.remove_suffix(1);
	return s;
}

template<typename T>
T parse_number(std::string_view key, std::string_view value)
{
	T result{};
	auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), result);
	if(ec != std::errc{} || ptr != value.data() + value.size() || value.empty())
		throw ConfigError(fmt::format("{}: '{}' is not a valid number", key, value));
	return result;
}

bool parse_bool(std::string_view key, std::string_view value)
{
	if(value == "true" || value == "1" || value == "yes" || value == "on")
		return true;
	if(value == "false" || value == "0" || value == "no" || value == "off")
		return false;
	throw ConfigError(fmt::format("{}: '{}' is not a boolean", key, value));
}

std::string read_file(const std::string& path)
{
	std::ifstream in(path, std::ios::binary);
	if(!in)
		throw IoError(fmt::format("cannot read '{}'", path));
	std::ostringstream buf;
	buf << in.rdbuf();
	if(in.bad())
		throw IoError(fmt::format("error while reading '{}'", path));
	return buf.str();
}

/// Writes atomically through a temporary sibling; nothing is left behind on failure.
void write_output(const std::string& path, const std::string& content, std::ostream& out)
{
	if(path.empty() || path == "-")
	{
		out << content;
		return;
	}
	std::string tmp = path + ".tmp";
	{
		std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
		if(file)
			file << content;
		if(!file || !file.flush())
		{
			std::error_code ignored;
			std::filesystem::remove(tmp, ignored);
			throw IoError(fmt::format("cannot write '{}'", path));
		}
	}
	std::error_code ec;
	std::filesystem::rename(tmp, path, ec);
	if(ec)
	{
		std::filesystem::remove(tmp, ec);
		throw IoError(fmt::format("cannot write '{}'", path));
	}
}

Corpus load_corpus(const std::string& path)
{
	return parse_corpus_tsv(read_file(path));
}

/// Flags that map onto RunConfig keys, applied after PSEL_CONFIG.
struct SettingFlags
{
	std::map<std::string, std::string> values;
	std::vector<std::pair<std::string, CLI::Option*>> options;

	void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help)
	{
		options.emplace_back(key, app->add_option(flag, values[key], help));
	}

	void apply(RunConfig& cfg) const
	{
		for(const auto& [key, opt] : options)
			if(opt->count() > 0)
				apply_setting(cfg, key, values.at(key));
	}
};

void add_common_flags(CLI::App* app, SettingFlags& flags)
{
	flags.add(app, "--cutoff", "cutoff", "Ranking length (default 1024)");
	flags.add(app, "--prefix", "prefix", "Name prefix selecting evaluated theorems");
	flags.add(app, "--format", "format", "Output format: tsv or json");
}

void add_learner_flags(CLI::App* app, SettingFlags& flags)
{
	flags.add(app, "--method", "method", "knn, nbayes, mepo or ensemble");
	flags.add(app, "--k", "knn.k", "k-NN neighbour count");
	flags.add(app, "--idf", "knn.idf", "k-NN IDF feature weighting (true/false)");
	flags.add(app, "--knn-self-weight", "knn.self-weight", "k-NN weight of a neighbour's own candidacy");
	flags.add(app, "--nb-w0", "nb.w0", "Naive Bayes prior weight");
	flags.add(app, "--nb-tau1", "nb.tau1", "Naive Bayes co-occurrence boost");
	flags.add(app, "--nb-tau2", "nb.tau2", "Naive Bayes missing-feature penalty");
	flags.add(app, "--mepo-p0", "mepo.p0", "MePo initial threshold");
	flags.add(app, "--mepo-budget", "mepo.budget", "MePo selection budget (default: cutoff)");
	flags.add(app, "--ensemble", "ensemble", "Ensemble members, e.g. knn:1,nbayes:1,mepo:1");
	flags.add(app, "--threads", "threads", "Evaluation worker threads");
}

RunConfig base_config()
{
	RunConfig cfg;
	if(const char* path = std::getenv("PSEL_CONFIG"); path && *path)
		apply_config_text(cfg, read_file(path));
	return cfg;
}

void require_format(const RunConfig& cfg)
{
	if(cfg.format != "tsv" && cfg.format != "json")
		throw ConfigError(fmt::format("unknown format '{}' (expected tsv or json)", cfg.format));
}

std::vector<ConstantId> initial_pool(const Corpus& corpus, const PartitionResult& partition)
{
	std::vector<ConstantId> pool;
	for(ConstantId id : partition.allowed_dependencies)
		if(!corpus.fact_index(id))
			pool.push_back(id);
	return pool;
}

int cmd_import(const std::string& raw_path, const std::string& out_path, bool warn_suspicious,
	std::ostream& out, std::ostream& err)
{
	auto records = parse_raw_deps(read_file(raw_path));

	std::vector<std::string> suspicious;
	std::size_t dependency_total = 0;
	for(auto& record : records)
	{
		if(escape_token(record.name) != record.name)
			suspicious.push_back(record.name);
		for(auto& dep : record.deps)
			if(escape_token(dep) != dep)
				suspicious.push_back(dep);
		record.name = escape_token(record.name);
		for(auto& dep : record.deps)
			dep = escape_token(dep);
	}
	auto corpus = corpus_from_raw(records);
	for(const auto& fact : corpus.facts())
		dependency_total += fact.proof_constants.size();

	write_output(out_path, serialize_corpus_tsv(corpus), out);
	err << fmt::format("imported {} records, {} dependencies\n", corpus.facts().size(), dependency_total);
	if(warn_suspicious)
		for(const auto& name : suspicious)
			err << fmt::format("warning: suspicious name containing whitespace: \"{}\"\n", name);
	else if(!suspicious.empty())
		err << fmt::format("warning: {} names contain whitespace (see --warn-suspicious-names)\n", suspicious.size());
	return exit_ok;
}

int cmd_stats(const std::string& corpus_path, const RunConfig& cfg, const std::string& out_path, std::ostream& out)
{
	require_format(cfg);
	auto corpus = load_corpus(corpus_path);
	auto partition = partition_constants(corpus);
	auto stats = corpus_stats(corpus, partition, QueryFilter{cfg.prefix});
	write_output(out_path, cfg.format == "json" ? stats_to_json(stats) : stats_to_text(stats), out);
	return exit_ok;
}

MetricsReport evaluate(const Corpus& corpus, const RunConfig& cfg)
{
	auto partition = partition_constants(corpus);
	auto order = topological_order(corpus);
	return chronological_eval(corpus, partition, order, cfg.learner, EvalOptions{cfg.cutoff, QueryFilter{cfg.prefix}, cfg.threads});
}

int cmd_eval(const std::string& corpus_path, const RunConfig& cfg, const std::string& out_path, std::ostream& out)
{
	require_format(cfg);
	cfg.learner.validate();
	auto corpus = load_corpus(corpus_path);
	auto report = evaluate(corpus, cfg);
	write_output(out_path, cfg.format == "json" ? report_to_json(report, corpus) : report_to_tsv(report, corpus), out);
	return exit_ok;
}

int cmd_compare(const std::string& corpus_path, const RunConfig& cfg, const std::string& methods,
	const std::string& out_path, std::ostream& out)
{
	require_format(cfg);
	auto corpus = load_corpus(corpus_path);
	std::vector<MetricsReport> reports;
	std::string_view rest = methods;
	while(!rest.empty())
	{
		auto comma = rest.find(',');
		auto item = trim(rest.substr(0, comma));
		rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
		RunConfig run = cfg;
		run.learner.method = parse_method(item);
		reports.push_back(evaluate(corpus, run));
	}
	write_output(out_path, cfg.format == "json" ? comparison_to_json(reports) : comparison_to_tsv(reports), out);
	return exit_ok;
}

int cmd_predict(const std::string& corpus_path, std::size_t train_prefix, const std::string& feature_text,
	RunConfig cfg, const std::string& out_path, std::ostream& out, std::ostream& err)
{
	cfg.learner.validate();
	auto corpus = load_corpus(corpus_path);
	if(train_prefix > corpus.facts().size())
		throw ConfigError(fmt::format("--train-prefix {} exceeds the corpus size {}", train_prefix, corpus.facts().size()));

	auto partition = partition_constants(corpus);
	auto order = topological_order(corpus);
	auto data = derive_learning_data(corpus, partition);
	TieOrder ties(corpus);

	ConstantSet query;
	std::size_t requested = 0;
	std::istringstream tokens(feature_text);
	for(std::string token; tokens >> token;)
	{
		++requested;
		auto id = corpus.interner().find(token);
		if(id && contains(partition.allowed_features, *id))
			query.push_back(*id);
		else
			err << fmt::format("warning: unknown feature '{}' ignored\n", token);
	}
	normalize(query);
	if(requested > 0 && query.empty())
	{
		err << "warning: no known features; falling back to the usage-frequency ranking\n";
		cfg.learner.method = Method::NaiveBayes;
	}

	auto ranker = make_ranker(cfg.learner, ties);
	auto pool = initial_pool(corpus, partition);
	for(std::size_t p = 0; p < train_prefix; ++p)
	{
		const auto& datum = data[order[p]];
		ranker->train(datum);
		if(contains(partition.allowed_dependencies, datum.fact))
			pool.push_back(datum.fact);
	}

	auto ranked = ranker->rank(query, pool, cfg.cutoff);
	std::string text;
	for(std::size_t i = 0; i < ranked.size(); ++i)
		text += fmt::format("{}\t{}\t{:.6f}\n", i + 1, corpus.name(ranked.entries[i].id), ranked.entries[i].score);
	write_output(out_path, text, out);
	return exit_ok;
}

int cmd_gen(const SynParams& params, const std::string& out_path, std::ostream& out)
{
	write_output(out_path, serialize_corpus_tsv(generate(params)), out);
	return exit_ok;
}

} // namespace

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value)
{
	value = trim(value);
	// Applied to a copy so that a rejected value leaves cfg untouched.
	RunConfig next = cfg;
	auto& l = next.learner;
	if(key == "method")
		l.method = parse_method(value);
	else if(key == "cutoff")
	{
		next.cutoff = parse_number<std::size_t>(key, value);
		if(next.cutoff < 1)
			throw ConfigError("cutoff must be at least 1");
	}
	else if(key == "prefix")
		next.prefix = std::string(value);
	else if(key == "format")
	{
		next.format = std::string(value);
		require_format(next);
	}
	else if(key == "threads")
	{
		next.threads = parse_number<std::size_t>(key, value);
		if(next.threads < 1)
			throw ConfigError("threads must be at least 1");
	}
	else if(key == "seed")
		next.seed = parse_number<std::uint64_t>(key, value);
	else if(key == "knn.k")
		l.knn.k = parse_number<std::size_t>(key, value);
	else if(key == "knn.idf")
		l.knn.use_idf = parse_bool(key, value);
	else if(key == "knn.self-weight")
		l.knn.self_weight = parse_number<double>(key, value);
	else if(key == "nb.w0")
		l.nb.w0 = parse_number<double>(key, value);
	else if(key == "nb.tau1")
		l.nb.tau1 = parse_number<double>(key, value);
	else if(key == "nb.tau2")
		l.nb.tau2 = parse_number<double>(key, value);
	else if(key == "mepo.p0")
		l.mepo.p0 = parse_number<double>(key, value);
	else if(key == "mepo.budget")
		l.mepo.budget = parse_number<std::size_t>(key, value);
	else if(key == "ensemble")
		l.ensemble = parse_ensemble(value);
	else
		throw ConfigError(fmt::format("unknown configuration key '{}'", key));
	l.knn.validate();
	l.nb.validate();
	l.mepo.validate();
	cfg = std::move(next);
}

void apply_config_text(RunConfig& cfg, std::string_view text)
{
	std::size_t line_no = 0;
	while(!text.empty())
	{
		++line_no;
		auto nl = text.find('\n');
		auto line = trim(text.substr(0, nl));
		text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
		if(line.empty() || line.front() == '#')
			continue;
		auto eq = line.find('=');
		if(eq == std::string_view::npos)
			throw ConfigError(fmt::format("config line {}: expected 'key = value'", line_no));
		try
		{
			apply_setting(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
		}
		catch(const ConfigError& e)
		{
			throw ConfigError(fmt::format("config line {}: {}", line_no, e.what()));
		}
	}
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
	CLI::App app{"Premise selection: learn proof dependencies and rank premises", "psel"};
	app.require_subcommand(1);

	std::string corpus_path, raw_path, out_path;
	bool warn_suspicious = false;

	auto* import = app.add_subcommand("import", "Convert a raw dependency dump to canonical TSV");
	import->add_option("raw", raw_path, "Raw dump")->required();
	import->add_option("out", out_path, "Output TSV")->required();
	import->add_flag("--warn-suspicious-names", warn_suspicious, "List names that contain whitespace");

	SettingFlags stats_flags;
	auto* stats = app.add_subcommand("stats", "Corpus statistics");
	stats->add_option("corpus", corpus_path, "Canonical TSV corpus")->required();
	stats_flags.add(stats, "--prefix", "prefix", "Name prefix selecting evaluated theorems");
	stats_flags.add(stats, "--format", "format", "Output format: tsv or json");
	stats->add_option("--out", out_path, "Output file (default stdout)");

	SettingFlags eval_flags;
	auto* eval = app.add_subcommand("eval", "Chronological evaluation of one method");
	eval->add_option("corpus", corpus_path, "Canonical TSV corpus")->required();
	add_common_flags(eval, eval_flags);
	add_learner_flags(eval, eval_flags);
	eval->add_option("--out", out_path, "Output file (default stdout)");

	SettingFlags compare_flags;
	std::string methods = "mepo,knn,nbayes,ensemble";
	auto* compare = app.add_subcommand("compare", "Evaluate several methods and tabulate the aggregates");
	compare->add_option("corpus", corpus_path, "Canonical TSV corpus")->required();
	compare->add_option("--methods", methods, "Comma-separated methods")->capture_default_str();
	add_common_flags(compare, compare_flags);
	add_learner_flags(compare, compare_flags);
	compare->add_option("--out", out_path, "Output file (default stdout)");

	SettingFlags predict_flags;
	std::size_t train_prefix = 0;
	std::string feature_text;
	auto* predict = app.add_subcommand("predict", "Rank premises for a conjecture given by its features");
	predict->add_option("corpus", corpus_path, "Canonical TSV corpus")->required();
	predict->add_option("--train-prefix", train_prefix, "Train on the first N facts in topological order")->required();
	predict->add_option("--features", feature_text, "Space-separated feature names");
	predict_flags.add(predict, "--cutoff", "cutoff", "Ranking length (default 1024)");
	add_learner_flags(predict, predict_flags);
	predict->add_option("--out", out_path, "Output file (default stdout)");

	SettingFlags gen_flags;
	SynParams params;
	auto* gen = app.add_subcommand("gen", "Generate a synthetic corpus");
	gen->add_option("--facts", params.n_facts, "Number of facts")->capture_default_str();
	gen->add_option("--features", params.n_features, "Number of feature constants")->capture_default_str();
	gen->add_option("--premises", params.n_premise_constants, "Number of premise constants")->capture_default_str();
	gen->add_option("--topics", params.topics, "Latent topics")->capture_default_str();
	gen->add_option("--deps-per-fact", params.deps_per_fact, "Mean dependencies per fact")->capture_default_str();
	gen->add_option("--features-per-fact", params.features_per_fact, "Mean features per fact")->capture_default_str();
	gen->add_option("--noise", params.noise, "Probability of an off-topic dependency")->capture_default_str();
	gen->add_option("--fact-dep-prob", params.fact_dep_prob, "Probability of using an earlier fact")->capture_default_str();
	gen_flags.add(gen, "--seed", "seed", "PRNG seed (default 42)");
	gen->add_option("--out", out_path, "Output file (default stdout)");

	std::vector<std::string> argv_storage;
	argv_storage.reserve(args.size() + 1);
	argv_storage.push_back("psel");
	argv_storage.insert(argv_storage.end(), args.begin(), args.end());
	std::vector<char*> argv;
	for(auto& a : argv_storage)
		argv.push_back(a.data());

	try
	{
		app.parse(static_cast<int>(argv.size()), argv.data());
	}
	catch(const CLI::ParseError& e)
	{
		int code = app.exit(e, out, err);
		return code == 0 ? exit_ok : exit_failure;
	}

	try
	{
		if(*import)
			return cmd_import(raw_path, out_path, warn_suspicious, out, err);

		RunConfig cfg = base_config();
		if(*stats)
		{
			stats_flags.apply(cfg);
			return cmd_stats(corpus_path, cfg, out_path, out);
		}
		if(*eval)
		{
			eval_flags.apply(cfg);
			return cmd_eval(corpus_path, cfg, out_path, out);
		}
		if(*compare)
		{
			compare_flags.apply(cfg);
			return cmd_compare(corpus_path, cfg, methods, out_path, out);
		}
		if(*predict)
		{
			predict_flags.apply(cfg);
			return cmd_predict(corpus_path, train_prefix, feature_text, cfg, out_path, out, err);
		}
		if(*gen)
		{
			gen_flags.apply(cfg);
			params.seed = cfg.seed;
			return cmd_gen(params, out_path, out);
		}
	}
	catch(const IoError& e)
	{
		err << "error: " << e.what() << "\n";
		return exit_io;
	}
	catch(const Error& e)
	{
		err << "error: " << e.what() << "\n";
		return exit_failure;
	}
	return exit_failure;
}

} // namespace psel
