#pragma once

// Exact linear algebra over Q on dense row-major matrices.

#include "twistkit/tensor.hpp"

#include <vector>

namespace twistkit {

using RationalMatrix = std::vector<std::vector<Scalar>>;

int rank(RationalMatrix m);
/// Throws DomainError on a singular matrix.
RationalMatrix invert(RationalMatrix m);

/// Solution set of A x = b: particular + span(nullspace) when consistent.
struct LinearSolution {
	bool consistent = false;
	std::vector<Scalar> particular;
	std::vector<std::vector<Scalar>> nullspace;
	/// Nonzero rows of the reduced row echelon form of [A | b].
	RationalMatrix reduced;
};

LinearSolution solve(RationalMatrix a, std::vector<Scalar> b);

} // namespace twistkit
