#pragma once

// The L invariant of loops, generalized Dehn twists and the figure-eight pipeline:
// degree-wise closed forms, the degree-4 coordinate table, the coefficient solve and
// the contradiction residuals.

#include "twistkit/expansion.hpp"
#include "twistkit/group_word.hpp"
#include "twistkit/linalg.hpp"
#include "twistkit/symplectic.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace twistkit {

/// A stated hypothesis of a degree-wise identity is violated by the input.
class PreconditionError : public std::invalid_argument {
public:
	using std::invalid_argument::invalid_argument;
};

struct LInvariant {
	GroupWord word{1};
	std::string expansion_id;
	int trunc = 0;
	TensorSeries tensor;
	/// L_m only needs ell through degree m-1.
	int authoritative_degree = 0;
};

/// 1/2 N(ell ell).
TensorSeries l_of_log(TensorSeries const &ell);
/// L_m = 1/2 sum_{i=1}^{m-1} N(ell_i ell_{m-i}), the degree-m part of l_of_log.
TensorSeries l_part(TensorSeries const &ell, int m);

/// L(w) at the given truncation.  Requires 2 <= trunc <= valid_degree + 1; throws
/// UnspecifiedDegree past that.
LInvariant loop_invariant(ExpansionTable const &t, GroupWord const &w, int trunc);

enum class LemmaVariant { Product, InverseProduct };

struct LemmaIdentity {
	int degree = 0;
	LemmaVariant variant = LemmaVariant::Product;
	std::string name;
	TensorSeries lhs;
	TensorSeries rhs;
	bool holds() const { return lhs == rhs; }
};

/// Evaluates both sides of the degree-wise identity for the group-like pair with
/// logarithms ell_x, ell_y.  lhs comes from BCH and the definition of L; rhs from the
/// closed form.  degree 2 and 4 compare L_d(xy^{+-1}) - L_d(x) - L_d(y); degree 6 and 8
/// compare L_d(xy) + L_d(xy^{-1}) - 2L_d(x) - 2L_d(y).  The series must be exact through
/// `degree`.  Throws PreconditionError if [X,Y] != 0 (degrees 4, 6) or X, Y != 0 (8).
LemmaIdentity lemma_identity(TensorSeries const &ell_x, TensorSeries const &ell_y, int degree,
                             LemmaVariant variant = LemmaVariant::Product);

/// Right-hand side for degree 6: -1/12 N(Z Z), Z = [X, ell_2(y)] + [ell_2(x), Y].
TensorSeries closed_form_degree6(TensorSeries const &ell_x, TensorSeries const &ell_y);
/// Right-hand side for degree 8: -1/12 N([ell_2(x), ell_2(y)]^2).
TensorSeries closed_form_degree8(TensorSeries const &ell_x, TensorSeries const &ell_y);

/// A random pair of Lie series satisfying the hypothesis of the identity of the
/// given degree, exact through `degree`.
std::pair<TensorSeries, TensorSeries> random_lemma_pair(int genus, int degree, Rng &rng);

/// omega restricted to handles first..last: sum [A_i, B_i].
TensorSeries partial_omega(int genus, int trunc, int first, int last);

struct NamedBasis {
	std::vector<std::string> names;
	std::vector<TensorSeries> tensors;
};

/// Degree-4 basis of the configuration: u1, u2, u3 for II/III, N(w1 w1), N(w1 w2),
/// N(w2 w2) for IV.  Case I has none (std::invalid_argument).
NamedBasis degree4_basis(Configuration const &c);

/// Coefficient of each probe word in each tensor: rows are tensors, columns probes.
/// Throws DegreeError unless every tensor is homogeneous of the probes' degree.
RationalMatrix independence_matrix(std::vector<TensorSeries> const &tensors, std::vector<Word> const &probes);

/// Coordinates of target in the span of basis, or nullopt.  The basis must be
/// linearly independent (std::invalid_argument otherwise).
std::optional<std::vector<Scalar>> coordinates(TensorSeries const &target, std::vector<TensorSeries> const &basis);

struct Table2Row {
	Configuration config;
	std::string expansion_id;
	TensorSeries l4x, l4y, m;
	NamedBasis basis;
	std::array<std::vector<Scalar>, 3> coords; // l4x, l4y, m
	/// Rank of {l4x, l4y, m}.
	int rank = 0;
};

/// L_4(x), L_4(y), M = N(X ell_3(y) + Y ell_3(x)) + N(ell_2(x) ell_2(y)).
/// h >= 2 required for II-a / II-b.
Table2Row table2(Configuration const &c, ExpansionTable const &t);

struct CoefficientSolution {
	Configuration config;
	std::vector<int> degrees;
	LinearSolution system;
	/// Equations of the solved system, e.g. "m1 + m2 = 4".
	std::vector<std::string> constraints;
	/// When the curves C1 = C2 (II-a, h = 1) or C1 = C3 (II-b, h = 1) coincide this is
	/// the direction along which coefficients trade without changing the twist product.
	std::optional<std::array<Scalar, 3>> identified_direction;
	/// Every solution yields the same product of twists.
	bool determined = false;
	/// (2, 2, -1) when it lies in the solution set, else the particular solution.
	std::array<Scalar, 3> m{};
};

/// Coefficient comparison in m1 L(x) + m2 L(y) + m3 L(xy) = L(xy^{-1}) at degree 2
/// (case I), degree 4 (other cases) or degrees 2 and 4 (II-a/II-b at h = 1).
CoefficientSolution solve_coefficients(Configuration const &c, ExpansionTable const &t);

struct TwistReport {
	Configuration config;
	std::string expansion_id;
	CoefficientSolution coefficients;
	int residual_degree = 0;
	/// How the residual was obtained: "direct" or "closed-form".
	std::string method;
	TensorSeries residual;
	TensorSeries expected;
	bool matches_expected = false;
	bool nonzero = false;
	int authoritative_degree = 0;
	std::string verdict;
};

/// L(xy) + L(xy^{-1}) - 2L(x) - 2L(y) at the first degree where it can be nonzero:
/// 4 for case I (direct), 6 for II/III, 8 for IV (closed forms from ell_{<=2}).
TwistReport contradiction_residual(Configuration const &c, ExpansionTable const &t);

/// The same residual by direct L arithmetic at degree 4, 6 or 8.  Needs a table
/// valid through residual_degree - 1.
TensorSeries direct_residual(Configuration const &c, ExpansionTable const &t);

/// The residual written in letters: -1/12 N(Q Q) with Q = [A1, A2] (I),
/// [B_h, sum_{i<=h} [A_i,B_i]] (II), [B_h, sum_{i<h} [A_i,B_i]] (III),
/// [w1, w2] (IV).
TensorSeries expected_residual(Configuration const &c);

/// e^{-L(gamma)} acting on the truncated algebra.  Requires trunc <= valid_degree.
Automorphism generalized_twist(ExpansionTable const &t, GroupWord const &gamma, int trunc, Pairing pairing = {});

struct CandidateResult {
	GroupWord image{1};
	/// Highest degree through which theta(f(gen)) = e^{-L(C)} theta(gen) for all gens.
	int agreement_degree = -1;
};

struct TwistConvention {
	std::string curve;       // "a1" or "b1"
	int crossing_generator;  // the generator the twist moves
	std::vector<CandidateResult> candidates;
	std::optional<GroupWord> winner;
	int verified_degree = 0;
	RationalMatrix homology_action;
	bool homology_matches_transvection = false;
};

/// For C in {alpha_1, beta_1} tests the four standard generator actions against
/// e^{-L(C)} through degree min(3, valid_degree).
std::vector<TwistConvention> calibrate_twist_convention(ExpansionTable const &t, Pairing pairing = {});

/// Images of every generator under the calibrated twist along the curve.
std::vector<GroupWord> twist_action(TwistConvention const &conv, int genus);

/// L under the table perturbed by a random U in IA_omega equals U o L o U^{-1} as
/// derivations.  The base is the built-in expansion extended to trunc - 1.
bool expansion_independence_check(GroupWord const &gamma, std::uint64_t seed, int trunc, Pairing pairing = {},
                                  bool identity_perturbation = false);

/// L(f(gamma)) = T(f) o L(gamma) o T(f)^{-1} for f the calibrated twist along a1.
bool twist_equivariance_check(ExpansionTable const &t, TwistConvention const &conv, GroupWord const &gamma,
                              Pairing pairing = {});

} // namespace twistkit
