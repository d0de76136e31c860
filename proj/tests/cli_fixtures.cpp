// Writes expansion tables for the command-line tests: the built-in genus-2 table
// and a copy with the sign of the degree-2 part of log(theta(beta_1)) flipped.

#include "twistkit/expansion.hpp"

#include <fstream>
#include <iostream>

using namespace twistkit;

int main(int argc, char **argv)
{
	if (argc != 2) {
		std::cerr << "usage: cli_fixtures <dir>\n";
		return 2;
	}
	std::string const dir = argv[1];
	auto const t = massuyeau_expansion(2);
	auto logs = t.logs();
	logs[1] -= Scalar(2) * logs[1].degree_part(2);
	ExpansionTable const bad("corrupt-beta1", t.valid_degree(), logs);
	std::ofstream(dir + "/massuyeau_g2.json") << expansion_to_json(t);
	std::ofstream(dir + "/corrupt_beta1_g2.json") << expansion_to_json(bad);
	return 0;
}
