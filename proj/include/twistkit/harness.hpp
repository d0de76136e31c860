#pragma once

// Verification harness behind the command-line tool: seeded check suites, the
// configuration pipeline and report assembly.

#include "twistkit/dehn.hpp"
#include "twistkit/json_io.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace twistkit {

/// Bad flags or unreadable input.  Maps to exit code 2.
class UsageError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

struct RunConfig {
	std::string command;
	std::optional<std::string> config;
	std::optional<int> g, h, k1, k2;
	int trunc = kDefaultTrunc;
	std::uint64_t seed = 0;
	int trials = 100;
	std::string format = "text";
	std::string output;
	int pairing_sign = 1;
	std::string expansion = "builtin:massuyeau";
};

struct CheckResult {
	std::string name;
	bool passed = false;
	int trials = 0;
	int failures = 0;
	std::string detail;
};

/// Where per-genus expansion tables come from: the built-in one or a JSON file
/// (fixed genus).
class ExpansionSource {
public:
	/// Throws UsageError when the file cannot be read or parsed.
	static ExpansionSource from_spec(std::string const &spec);

	bool builtin() const { return !file_; }
	std::string id() const;
	int valid_degree() const;
	/// Throws UsageError if a file table does not cover the genus.
	ExpansionTable table(int genus) const;
	bool covers(int genus) const { return !file_ || file_->genus() == genus; }
	std::optional<int> fixed_genus() const;

private:
	std::optional<ExpansionTable> file_;
};

/// Derived per-suite seed, stable across platforms.
std::uint64_t suite_seed(std::uint64_t seed, std::string const &name);

struct TaskResult {
	std::vector<CheckResult> checks;
	Json data;
};

/// Runs the tasks on at most `threads` worker threads; results keep task order.
std::vector<TaskResult> run_parallel(std::vector<std::function<TaskResult()>> const &tasks, int threads);
/// TWISTKIT_THREADS if set and positive, else the hardware concurrency.
int thread_cap();

// Seeded check suites.  Every trial failure is counted, none aborts the suite.
CheckResult suite_n_map(int trials, std::uint64_t seed);
CheckResult suite_exp_log(int trials, std::uint64_t seed);
CheckResult suite_l_invariance(ExpansionSource const &src, int trials, std::uint64_t seed);
CheckResult suite_power_scaling(ExpansionSource const &src, int trials, std::uint64_t seed);
CheckResult suite_expansion_independence(int trials, std::uint64_t seed, Pairing pairing);
/// U N(v) U^{-1} = N(U v) for U cycling through IA_omega, Sp and composites.
CheckResult suite_conjugation_law(int trials, std::uint64_t seed, int trunc, Pairing pairing);
/// Degree-wise L identities on random hypothesis-satisfying pairs (degree 2, 4, 6 or 8).
CheckResult suite_lemma(int degree, int trials, std::uint64_t seed);

CheckResult boundary_check(ExpansionTable const &t, int claim);
/// Unique surviving convention per curve with homology equal to the transvection.
CheckResult calibration_check(TwistConvention const &conv);

/// Configuration from --config and the parameter flags; missing parameters take
/// the defaults of the canonical sweep.  Throws UsageError on invalid parameters.
Configuration configuration_from(RunConfig const &rc);

/// Exact rational as a JSON number when integral, else "p/q".
Json rational_json(Scalar const &q);
/// {"text": canonical rendering, "terms": [...]}.
Json tensor_json(TensorSeries const &u);

struct CommandOutput {
	int exit_code = 0;
	Json report;
	std::string text;
};

/// Runs one command.  Throws UsageError for bad input; check failures are reported
/// through exit_code 1.
CommandOutput run_command(RunConfig const &rc);

/// The rendered output in rc.format.
std::string render(CommandOutput const &out, RunConfig const &rc);

} // namespace twistkit
