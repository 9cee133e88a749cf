#pragma once

#include <psel/learner_config.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace psel {

/// Everything a subcommand may be configured with, from PSEL_CONFIG and flags.
struct RunConfig
{
	LearnerConfig learner;
	std::size_t cutoff = 1024;
	std::string prefix;
	std::string format = "tsv";
	std::size_t threads = 1;
	std::uint64_t seed = 42;
};

/// Applies one `key = value` setting. Keys: method, cutoff, prefix, format, threads,
/// seed, knn.k, knn.idf, knn.self-weight, nb.w0, nb.tau1, nb.tau2, mepo.p0,
/// mepo.budget, ensemble. Throws ConfigError on unknown keys or bad values.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// Config file: one `key = value` per line, `#` comments, blank lines ignored.
void apply_config_text(RunConfig& cfg, std::string_view text);

/// Exit codes of the command-line front end.
enum ExitCode : int
{
	exit_ok = 0,
	exit_failure = 1, // parse, config, cycle, or usage errors
	exit_io = 2,      // unreadable input or unwritable output
};

/// Runs the `psel` command line. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace psel
