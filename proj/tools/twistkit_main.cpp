#include "twistkit/harness.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace twistkit;

namespace {

void add_flags(CLI::App &sub, RunConfig &rc, std::string &sign)
{
	sub.set_help_flag("--help", "print this help");
	sub.add_option("--config", rc.config, "configuration: I, II-a, II-b, III-a, III-b, IV-a, IV-b");
	sub.add_option("--g", rc.g, "genus");
	sub.add_option("--h", rc.h, "handle parameter h");
	sub.add_option("--k1", rc.k1, "IV: handles inside x");
	sub.add_option("--k2", rc.k2, "IV: handles inside the second loop");
	sub.add_option("--trunc", rc.trunc, "truncation degree")->capture_default_str();
	sub.add_option("--seed", rc.seed, "random seed")->capture_default_str();
	sub.add_option("--trials", rc.trials, "trials per property suite")->capture_default_str();
	sub.add_option("--format", rc.format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
	sub.add_option("-o,--output", rc.output, "write the report here instead of stdout");
	sub.add_option("--pairing-sign", sign, "intersection pairing sign")->check(CLI::IsMember({"+", "-"}))->capture_default_str();
	sub.add_option("--expansion", rc.expansion, "expansion table: a JSON path or builtin:massuyeau")->capture_default_str();
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"twistkit: exact verification harness for generalized Dehn twists"};
	app.require_subcommand(1);
	RunConfig rc;
	std::string sign = "+";
	std::pair<char const *, char const *> const commands[] = {
	    {"verify-all", "run every check and summarize the configuration verdicts"},
	    {"table2", "degree-4 coordinates of L4(x), L4(y) and M"},
	    {"residual", "contradiction residual per configuration"},
	    {"coeffs", "solve for the twist coefficients"},
	    {"lemmas", "degree-wise L identities on random pairs"},
	    {"expansion-check", "boundary condition and group-likeness of the expansion table"},
	    {"calibrate", "match generator actions against exp(-L)"},
	};
	for (auto const &[name, help] : commands) {
		auto *sub = app.add_subcommand(name, help);
		add_flags(*sub, rc, sign);
		sub->callback([&rc, n = std::string(name)] { rc.command = n; });
	}
	try {
		app.parse(argc, argv);
	} catch (CLI::ParseError const &e) {
		int const code = app.exit(e);
		return code == 0 ? 0 : 2;
	}
	rc.pairing_sign = sign == "-" ? -1 : 1;

	try {
		auto const out = run_command(rc);
		auto const text = render(out, rc);
		if (rc.output.empty()) {
			std::cout << text;
		} else {
			std::ofstream f(rc.output, std::ios::binary);
			if (!(f << text))
				throw UsageError("cannot write '" + rc.output + "'");
		}
		return out.exit_code;
	} catch (UsageError const &e) {
		std::cerr << "twistkit: " << e.what() << "\n";
		return 2;
	} catch (std::exception const &e) {
		std::cerr << "twistkit: internal error: " << e.what() << "\n";
		return 2;
	}
}
