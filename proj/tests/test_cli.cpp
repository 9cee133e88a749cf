#include <doctest.h>

#include <psel/cli.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace psel;
namespace fs = std::filesystem;

namespace {

struct Result
{
	int code;
	std::string out, err;
};

Result cli(std::vector<std::string> args)
{
	std::ostringstream out, err;
	int code = run_cli(args, out, err);
	return {code, out.str(), err.str()};
}

struct TempDir
{
	fs::path path;

	TempDir()
	{
		static int counter = 0;
		path = fs::temp_directory_path() / ("psel_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
		fs::create_directories(path);
	}
	~TempDir() { fs::remove_all(path); }

	std::string file(const std::string& name, const std::string& content) const
	{
		auto p = path / name;
		std::ofstream(p, std::ios::binary) << content;
		return p.string();
	}
	std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path)
{
	std::ifstream in(path, std::ios::binary);
	std::ostringstream buf;
	buf << in.rdbuf();
	return buf.str();
}

std::vector<std::vector<std::string>> rows(const std::string& text)
{
	std::vector<std::vector<std::string>> out;
	std::istringstream lines(text);
	for(std::string line; std::getline(lines, line);)
	{
		std::vector<std::string> cells;
		std::istringstream cs(line);
		for(std::string cell; std::getline(cs, cell, '\t');)
			cells.push_back(cell);
		out.push_back(cells);
	}
	return out;
}

const char* toy = "A\tnat\tnat_ind O\nB\tnat O\tA\n";

} // namespace

TEST_CASE("import the dependency dump")
{
	TempDir dir;
	auto raw = std::string(PSEL_TEST_DATA_DIR) + "/neg_anti_convert.raw";
	auto r = cli({"import", raw, dir / "out.tsv"});
	CHECK(r.code == exit_ok);
	CHECK(r.err.find("imported 1 records, 12 dependencies") != std::string::npos);
	auto text = slurp(dir / "out.tsv");
	auto table = rows(text);
	REQUIRE(table.size() == 1);
	REQUIRE(table[0].size() == 3);
	CHECK(table[0][0] == "CoRN.algebra.Basics.NEG_anti_convert");
	CHECK(table[0][1].empty());
	std::istringstream deps(table[0][2]);
	std::vector<std::string> tokens;
	for(std::string t; deps >> t;)
		tokens.push_back(t);
	CHECK(tokens.size() == 12);
	CHECK(text.find("Coq.ZArith.Bi%20nInt.Z_of_nat") != std::string::npos);

	r = cli({"import", raw, dir / "out2.tsv", "--warn-suspicious-names"});
	CHECK(r.err.find("\"Coq.ZArith.Bi nInt.Z_of_nat\"") != std::string::npos);
	CHECK(slurp(dir / "out2.tsv") == text);

	r = cli({"import", dir.file("empty.raw", ""), dir / "empty.tsv"});
	CHECK(r.code == exit_ok);
	CHECK(r.err.find("imported 0 records") != std::string::npos);
	CHECK(slurp(dir / "empty.tsv").empty());

	r = cli({"import", dir.file("bad.raw", "\"A\" (\"B\""), dir / "bad.tsv"});
	CHECK(r.code == exit_failure);
	CHECK(r.err.find("byte offset 4") != std::string::npos);
	CHECK(!fs::exists(dir / "bad.tsv"));

	r = cli({"import", dir / "missing.raw", dir / "x.tsv"});
	CHECK(r.code == exit_io);
}

TEST_CASE("stats")
{
	TempDir dir;
	auto corpus = dir.file("toy.tsv", toy);
	auto r = cli({"stats", corpus});
	CHECK(r.code == exit_ok);
	CHECK(r.out.find("available_facts\t0\n") != std::string::npos);
	CHECK(r.out.find("evaluated_theorems\t2\n") != std::string::npos);
	CHECK(r.out.find("distinct_features\t2\n") != std::string::npos);
	CHECK(r.out.find("avg_features\t1.5000\n") != std::string::npos);
	CHECK(r.out.find("avg_dependencies\t1.0000\n") != std::string::npos);

	r = cli({"stats", corpus, "--prefix", "B", "--format", "json"});
	CHECK(r.code == exit_ok);
	CHECK(r.out.find("\"evaluated_theorems\": 1") != std::string::npos);

	CHECK(cli({"stats", dir / "nope.tsv"}).code == exit_io);
	CHECK(cli({"stats", corpus, "--format", "xml"}).code == exit_failure);
	CHECK(cli({"stats", dir.file("dup.tsv", "A\t\t\nA\t\t\n")}).code == exit_failure);
}

TEST_CASE("eval")
{
	TempDir dir;
	CHECK(cli({"gen", "--facts", "120", "--noise", "1", "--seed", "3", "--out", dir / "syn.tsv"}).code == exit_ok);
	auto corpus = dir / "syn.tsv";

	auto r = cli({"eval", corpus, "--method", "nbayes", "--cutoff", "10"});
	REQUIRE(r.code == exit_ok);
	auto table = rows(r.out);
	std::size_t capped = 0, queries = 0;
	for(const auto& row : table)
	{
		if(row.size() != 8 || row[0] == "query" || row[0].starts_with("#"))
			continue;
		++queries;
		auto recall = std::stoul(row[5]);
		CHECK(recall <= 11);
		capped += recall == 11;
	}
	CHECK(queries > 0);
	CHECK(capped > 0);

	CHECK(cli({"eval", corpus, "--method", "ensemble", "--ensemble", "knn:1"}).code == exit_failure);
	CHECK(cli({"eval", corpus, "--method", "svm"}).code == exit_failure);
	CHECK(cli({"eval", corpus, "--cutoff", "0"}).code == exit_failure);
	CHECK(cli({"eval", corpus, "--bogus"}).code == exit_failure);
	CHECK(cli({"eval", dir.file("cycle.tsv", "A\t\tB\nB\t\tA\n")}).code == exit_failure);

	r = cli({"eval", corpus, "--out", (dir.path / "no" / "such" / "dir" / "r.tsv").string()});
	CHECK(r.code == exit_io);

	r = cli({"eval", corpus, "--method", "knn", "--threads", "4", "--out", dir / "a.tsv"});
	CHECK(r.code == exit_ok);
	CHECK(cli({"eval", corpus, "--method", "knn", "--out", dir / "b.tsv"}).code == exit_ok);
	CHECK(slurp(dir / "a.tsv") == slurp(dir / "b.tsv"));
	CHECK(!fs::exists(dir / "a.tsv.tmp"));

	r = cli({"eval", corpus, "--format", "json", "--cutoff", "5"});
	CHECK(r.out.find("\"cutoff\": \"5\"") != std::string::npos);
}

TEST_CASE("compare")
{
	TempDir dir;
	CHECK(cli({"gen", "--facts", "60", "--out", dir / "syn.tsv"}).code == exit_ok);
	auto r = cli({"compare", dir / "syn.tsv"});
	REQUIRE(r.code == exit_ok);
	auto table = rows(r.out);
	REQUIRE(table.size() == 5);
	CHECK(table[0][0] == "method");
	CHECK(table[1][0] == "mepo");
	CHECK(table[2][0] == "knn");
	CHECK(table[3][0] == "nbayes");
	CHECK(table[4][0] == "ensemble");
	CHECK(cli({"compare", dir / "syn.tsv", "--methods", "knn,foo"}).code == exit_failure);
}

TEST_CASE("predict")
{
	TempDir dir;
	auto corpus = dir.file("c.tsv", "A\tx\tp q\nB\ty\tr\nC\tx y\tA\n");

	auto r = cli({"predict", corpus, "--train-prefix", "2", "--features", "x", "--method", "knn", "--k", "1", "--knn-self-weight", "0.5"});
	REQUIRE(r.code == exit_ok);
	auto table = rows(r.out);
	REQUIRE(table.size() >= 2);
	CHECK(table[0][1] == "p");
	CHECK(table[1][1] == "q");

	r = cli({"predict", corpus, "--train-prefix", "3", "--features", ""});
	REQUIRE(r.code == exit_ok);
	table = rows(r.out);
	CHECK(table[0][1] == "A"); // prior only: every candidate used once, tie order
	CHECK(table.size() == 4);

	r = cli({"predict", corpus, "--train-prefix", "0", "--features", "x"});
	REQUIRE(r.code == exit_ok);
	CHECK(r.out == "1\tp\t0.000000\n2\tq\t0.000000\n3\tr\t0.000000\n");

	r = cli({"predict", corpus, "--train-prefix", "2", "--features", "x zzz"});
	CHECK(r.code == exit_ok);
	CHECK(r.err.find("unknown feature 'zzz'") != std::string::npos);

	r = cli({"predict", corpus, "--train-prefix", "2", "--features", "zzz", "--method", "mepo"});
	CHECK(r.code == exit_ok);
	CHECK(r.err.find("falling back") != std::string::npos);

	r = cli({"predict", corpus, "--train-prefix", "2", "--features", "x", "--cutoff", "1"});
	CHECK(rows(r.out).size() == 1);

	CHECK(cli({"predict", corpus, "--train-prefix", "9"}).code == exit_failure);
	CHECK(cli({"predict", corpus}).code == exit_failure);
}

TEST_CASE("gen is idempotent")
{
	TempDir dir;
	CHECK(cli({"gen", "--facts", "50", "--seed", "5", "--out", dir / "a.tsv"}).code == exit_ok);
	CHECK(cli({"gen", "--facts", "50", "--seed", "5", "--out", dir / "b.tsv"}).code == exit_ok);
	CHECK(slurp(dir / "a.tsv") == slurp(dir / "b.tsv"));
	auto r = cli({"gen", "--facts", "50", "--seed", "5"});
	CHECK(r.out == slurp(dir / "a.tsv"));
	CHECK(cli({"gen", "--noise", "2"}).code == exit_failure);
	CHECK(cli({"gen", "--topics", "0"}).code == exit_failure);
}

TEST_CASE("settings and config files")
{
	RunConfig cfg;
	apply_setting(cfg, "method", "knn");
	apply_setting(cfg, "knn.k", "7");
	apply_setting(cfg, "knn.idf", "false");
	apply_setting(cfg, "mepo.budget", "12");
	apply_setting(cfg, "ensemble", "knn:2,mepo:1");
	CHECK(cfg.learner.method == Method::Knn);
	CHECK(cfg.learner.knn.k == 7);
	CHECK(!cfg.learner.knn.use_idf);
	CHECK(cfg.learner.mepo.budget == 12u);
	CHECK(cfg.learner.ensemble.size() == 2);
	CHECK_THROWS_AS(apply_setting(cfg, "knn.q", "1"), ConfigError);
	CHECK_THROWS_AS(apply_setting(cfg, "cutoff", "0"), ConfigError);
	CHECK_THROWS_AS(apply_setting(cfg, "cutoff", "ten"), ConfigError);
	CHECK_THROWS_AS(apply_setting(cfg, "knn.k", "0"), ConfigError);

	apply_config_text(cfg, "# comment\n\ncutoff = 20\n  prefix = CoRN.  \n");
	CHECK(cfg.cutoff == 20);
	CHECK(cfg.prefix == "CoRN.");
	CHECK_THROWS_AS(apply_config_text(cfg, "nonsense\n"), ConfigError);
	CHECK_THROWS_AS(apply_config_text(cfg, "colour = red\n"), ConfigError);
}

TEST_CASE("PSEL_CONFIG is applied before flags")
{
	TempDir dir;
	auto corpus = dir.file("toy.tsv", toy);
	auto config = dir.file("psel.conf", "method = mepo\ncutoff = 3\n");
	::setenv("PSEL_CONFIG", config.c_str(), 1);
	auto r = cli({"eval", corpus});
	auto overridden = cli({"eval", corpus, "--method", "knn"});
	::setenv("PSEL_CONFIG", dir.file("bad.conf", "colour = red\n").c_str(), 1);
	auto bad = cli({"eval", corpus});
	::setenv("PSEL_CONFIG", (dir / "missing.conf").c_str(), 1);
	auto missing = cli({"eval", corpus});
	::unsetenv("PSEL_CONFIG");

	CHECK(r.code == exit_ok);
	CHECK(r.out.find("method=mepo cutoff=3") != std::string::npos);
	CHECK(overridden.out.find("method=knn cutoff=3") != std::string::npos);
	CHECK(bad.code == exit_failure);
	CHECK(missing.code == exit_io);
}

TEST_CASE("usage errors")
{
	CHECK(cli({}).code == exit_failure);
	CHECK(cli({"frobnicate"}).code == exit_failure);
	auto r = cli({"--help"});
	CHECK(r.code == exit_ok);
	CHECK(r.out.find("eval") != std::string::npos);
}
