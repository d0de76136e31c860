#include "oracle.hpp"
#include "twistkit/calculus.hpp"
#include "twistkit/dehn.hpp"

#include <gtest/gtest.h>

using namespace twistkit;

namespace {

using K = ConfigKind;

TensorSeries A(int genus, int i, int trunc = kDefaultTrunc)
{
	return TensorSeries::monomial(genus, trunc, Word{2 * (i - 1)});
}

TensorSeries B(int genus, int i, int trunc = kDefaultTrunc)
{
	return TensorSeries::monomial(genus, trunc, Word{2 * (i - 1) + 1});
}

TensorSeries br(TensorSeries const &a, TensorSeries const &b)
{
	return commutator(a, b);
}

TensorSeries omega_range(int genus, int first, int last, int trunc = kDefaultTrunc)
{
	TensorSeries w(genus, trunc);
	for (int i = first; i <= last; ++i)
		w += br(A(genus, i, trunc), B(genus, i, trunc));
	return w;
}

TensorSeries NN(TensorSeries const &a, TensorSeries const &b)
{
	return cyclic_sum(a * b);
}

GroupWord W(char const *text, int genus)
{
	return GroupWord::parse(text, genus);
}

GroupWord random_word(int genus, int length, Rng &rng)
{
	std::vector<Syllable> s(static_cast<std::size_t>(length));
	for (auto &x : s)
		x = {rng.uniform(0, 2 * genus - 1), rng.coin() ? 1 : -1};
	return GroupWord(genus, std::move(s));
}

// 1/2 N(ell ell) through the naive oracle
TensorSeries oracle_L(TensorSeries const &ell)
{
	auto const p = oracle::from(ell);
	auto const n = oracle::nmap(oracle::mul(p, p, ell.trunc()));
	return Scalar(1, 2) * oracle::to(n, ell.genus(), ell.trunc());
}

struct Row {
	Configuration config;
	std::array<Scalar, 3> l4x, l4y, m;
};

} // namespace

TEST(LInvariant, Definition)
{
	auto const t = massuyeau_expansion(2);
	auto const x = W("a1 b2^-1", 2);
	auto const L = loop_invariant(t, x, 4);
	EXPECT_EQ(L.tensor, oracle_L(expansion_log(synthetic_extension(t, 4, 0), x, 4)));
	EXPECT_EQ(L.authoritative_degree, 4);
	EXPECT_EQ(L.expansion_id, t.id());
	EXPECT_TRUE(L.tensor.truncate(1).is_zero());
	auto const X = A(2, 1, 4) - B(2, 2, 4);
	EXPECT_EQ(L.tensor.degree_part(2), X * X);
	EXPECT_THROW(loop_invariant(t, x, 5), UnspecifiedDegree);
	EXPECT_THROW(loop_invariant(t, x, 1), std::invalid_argument);
}

TEST(LInvariant, SpecialCaseValues)
{
	// II-a at h = 1, where xy is the boundary loop
	auto const t = massuyeau_expansion(1);
	auto const u3 = NN(omega_range(1, 1, 1, 4), omega_range(1, 1, 1, 4));
	auto const bb = B(1, 1, 4) * B(1, 1, 4);
	auto const [x, y] = config_pair(Configuration::type_ii_iii(K::IIa, 1, 1));
	EXPECT_EQ(x * y, boundary_word(1));
	auto L = [&t](GroupWord const &w, int d) { return loop_invariant(t, w, 4).tensor.degree_part(d); };
	EXPECT_EQ(L(x, 2), bb);
	EXPECT_EQ(L(y, 2), bb);
	EXPECT_TRUE(L(x * y, 2).is_zero());
	EXPECT_EQ(L(x * y.inverse(), 2), Scalar(4) * bb);
	EXPECT_EQ(L(x, 4), Scalar(1, 24) * u3);
	EXPECT_EQ(L(y, 4), Scalar(1, 24) * u3);
	EXPECT_EQ(L(x * y, 4), Scalar(1, 2) * u3);
	EXPECT_EQ(L(x * y.inverse(), 4), Scalar(-1, 3) * u3);
	EXPECT_EQ(L(x * y.inverse(), 4), oracle_L(expansion_log(t, x * y.inverse(), 3).with_trunc(4)).degree_part(4));
	// degree 4 of m1 L(x) + m2 L(y) + m3 L(xy) = L(xy^-1) with m1 + m2 = 4 forces m3 = -1
	EXPECT_EQ(Scalar(4) * L(x, 4) - L(x * y, 4), L(x * y.inverse(), 4));
}

TEST(LIdentity, DegreeTwoAndFour)
{
	Rng rng(81);
	for (int trial = 0; trial < 50; ++trial) {
		auto const [lx, ly] = random_lemma_pair(2, 4, rng);
		for (auto v : {LemmaVariant::Product, LemmaVariant::InverseProduct}) {
			EXPECT_TRUE(lemma_identity(lx, ly, 2, v).holds());
			EXPECT_TRUE(lemma_identity(lx, ly, 4, v).holds());
		}
		// oracle: the degree-2 closed form
		auto const X = lx.degree_part(1), Y = ly.degree_part(1);
		auto const li = lemma_identity(lx, ly, 2);
		EXPECT_EQ(li.rhs.degree_part(2), NN(X, Y).degree_part(2).with_trunc(li.rhs.trunc()));
	}
}

TEST(LIdentity, HigherDegreeClosedForms)
{
	Rng rng(82);
	for (int trial = 0; trial < 20; ++trial) {
		auto const [x6, y6] = random_lemma_pair(2, 6, rng);
		auto const l6 = lemma_identity(x6, y6, 6);
		EXPECT_TRUE(l6.holds());
		auto const Z = br(x6.degree_part(1), y6.degree_part(2)) + br(x6.degree_part(2), y6.degree_part(1));
		EXPECT_EQ(l6.rhs, Scalar(-1, 12) * NN(Z, Z).with_trunc(l6.rhs.trunc()));

		auto const [x8, y8] = random_lemma_pair(2, 8, rng);
		auto const l8 = lemma_identity(x8, y8, 8);
		EXPECT_TRUE(l8.holds());
		EXPECT_TRUE(x8.degree_part(1).is_zero());
		auto const Q = br(x8.degree_part(2), y8.degree_part(2));
		EXPECT_EQ(l8.rhs, Scalar(-1, 12) * NN(Q, Q).with_trunc(l8.rhs.trunc()));
	}
}

TEST(LIdentity, Preconditions)
{
	auto const a = A(2, 1, 8), b = A(2, 2, 8);
	EXPECT_TRUE(lemma_identity(a, b, 2).holds());
	EXPECT_THROW(lemma_identity(a, b, 4), PreconditionError);
	EXPECT_THROW(lemma_identity(a, b, 6), PreconditionError);
	EXPECT_THROW(lemma_identity(a, Scalar(2) * a + br(a, b), 8), PreconditionError);
	EXPECT_THROW(lemma_identity(a, b, 5), std::invalid_argument);
}

TEST(Basis, ProbeMatrices)
{
	auto const basis = degree4_basis(Configuration::type_ii_iii(K::IIa, 2, 2));
	EXPECT_EQ(basis.names, (std::vector<std::string>{"u1", "u2", "u3"}));
	auto const w = omega_range(2, 1, 2), wh = omega_range(2, 2, 2);
	EXPECT_EQ(basis.tensors[0].with_trunc(8), NN(w, w));
	EXPECT_EQ(basis.tensors[1].with_trunc(8), NN(w, wh));
	EXPECT_EQ(basis.tensors[2].with_trunc(8), NN(wh, wh));
	std::vector<Word> const probes{Word::parse("A1*B1*A1*B1"), Word::parse("A1*B1*A2*B2"), Word::parse("A2*B2*A2*B2")};
	auto const m = independence_matrix(basis.tensors, probes);
	EXPECT_EQ(m, (RationalMatrix{{4, 2, 4}, {0, 1, 4}, {0, 0, 4}}));
	EXPECT_EQ(rank(m), 3);

	auto const dependent = independence_matrix(
	    {basis.tensors[0], basis.tensors[1], basis.tensors[0] - Scalar(3) * basis.tensors[1]}, probes);
	EXPECT_EQ(rank(dependent), 2);
	EXPECT_THROW(independence_matrix({A(2, 1)}, probes), DegreeError);

	auto const iv = degree4_basis(Configuration::type_iv(K::IVb, 1, 2, 0));
	auto const w1 = omega_range(3, 1, 1), w2 = omega_range(3, 2, 3);
	EXPECT_EQ(iv.tensors[0].with_trunc(8), NN(w1, w1));
	EXPECT_EQ(iv.tensors[1].with_trunc(8), NN(w1, w2));
	EXPECT_EQ(iv.tensors[2].with_trunc(8), NN(w2, w2));
	EXPECT_THROW(degree4_basis(Configuration::type_i(2)), std::invalid_argument);
}

TEST(Basis, Coordinates)
{
	auto const basis = degree4_basis(Configuration::type_ii_iii(K::IIIb, 3, 3)).tensors;
	auto const target = Scalar(1, 2) * basis[0] - basis[2];
	auto const c = coordinates(target, basis);
	ASSERT_TRUE(c);
	EXPECT_EQ(*c, (std::vector<Scalar>{Scalar(1, 2), 0, -1}));
	EXPECT_FALSE(coordinates(NN(A(3, 1), A(3, 1) * A(3, 1) * A(3, 1)), basis));
	EXPECT_THROW(coordinates(target, {basis[0], basis[0]}), std::invalid_argument);
}

TEST(DegreeFourTable, Rows)
{
	Scalar const h(1, 2), q(1, 24);
	std::vector<Row> const rows{
	    {Configuration::type_ii_iii(K::IIa, 2, 2), {h, -h, q}, {0, 0, q}, {0, h, Scalar(-1, 12)}},
	    {Configuration::type_ii_iii(K::IIb, 2, 2), {h, -h, q}, {h, 0, 0}, {-1, h, 0}},
	    {Configuration::type_ii_iii(K::IIIa, 2, 2), {h, -h, q}, {0, 0, q}, {0, -h, Scalar(5, 12)}},
	    // y = [a1,b1]^-1 has ell_2 = -(w - [A_h,B_h]), so L4(y) = 1/2 (u1 - 2 u2 + u3)
	    {Configuration::type_ii_iii(K::IIIb, 2, 2), {h, -h, q}, {h, -1, h}, {-1, Scalar(3, 2), -h}},
	    {Configuration::type_iv(K::IVa, 1, 1, 0), {h, 0, 0}, {0, 0, h}, {0, 1, 0}},
	    // x is the IV-a loop, so L4(x) = 1/2 N(w1 w1) here too
	    {Configuration::type_iv(K::IVb, 1, 1, 0), {h, 0, 0}, {h, 1, h}, {-1, -1, 0}},
	};
	auto const larger = larger_configurations();
	for (auto const &row : rows) {
		std::vector<Configuration> sets{row.config};
		for (auto const &c : larger)
			if (c.kind == row.config.kind)
				sets.push_back(c);
		ASSERT_EQ(sets.size(), 2U);
		for (auto const &c : sets) {
			auto const r = table2(c, massuyeau_expansion(c.genus));
			auto combo = [&r](std::array<Scalar, 3> const &k) {
				TensorSeries s(r.config.genus, r.l4x.trunc());
				for (std::size_t i = 0; i < 3; ++i)
					s += k[i] * r.basis.tensors[i];
				return s;
			};
			EXPECT_EQ(r.l4x, combo(row.l4x)) << c.label();
			EXPECT_EQ(r.l4y, combo(row.l4y)) << c.label();
			EXPECT_EQ(r.m, combo(row.m)) << c.label();
			for (std::size_t i = 0; i < 3; ++i) {
				EXPECT_EQ(r.coords[0][i], row.l4x[i]) << c.label();
				EXPECT_EQ(r.coords[1][i], row.l4y[i]) << c.label();
				EXPECT_EQ(r.coords[2][i], row.m[i]) << c.label();
			}
			EXPECT_EQ(r.rank, 3) << c.label();
		}
	}
}

TEST(DegreeFourTable, RejectedRowVariants)
{
	// the alternatives ruled out above really are different tensors
	auto const b = table2(Configuration::type_ii_iii(K::IIIb, 2, 2), massuyeau_expansion(2));
	auto const &u = b.basis.tensors;
	EXPECT_NE(b.l4y, Scalar(1, 2) * u[0] - u[1] - Scalar(1, 2) * u[2]);
	auto const d = table2(Configuration::type_iv(K::IVb, 1, 1, 0), massuyeau_expansion(2));
	EXPECT_NE(d.l4x, Scalar(1, 2) * d.basis.tensors[1]);
	auto const a = table2(Configuration::type_iv(K::IVa, 1, 1, 0), massuyeau_expansion(2));
	EXPECT_EQ(d.l4x, a.l4x);
}

TEST(DegreeFourTable, IndependentRecomputation)
{
	// L_4 via the oracle, M straight from the definition
	for (auto const &c : default_configurations()) {
		if (c.kind == K::I)
			continue;
		auto const t = massuyeau_expansion(c.genus);
		auto const r = table2(c, t);
		auto const [x, y] = config_pair(c);
		auto const lx = expansion_log(t, x, 3).with_trunc(4), ly = expansion_log(t, y, 3).with_trunc(4);
		EXPECT_EQ(r.l4x.with_trunc(4), oracle_L(lx).degree_part(4)) << c.label();
		EXPECT_EQ(r.l4y.with_trunc(4), oracle_L(ly).degree_part(4)) << c.label();
		auto l = [](TensorSeries const &s, int i) { return s.degree_part(i); };
		auto const m = NN(l(lx, 1), l(ly, 3)) + NN(l(ly, 1), l(lx, 3)) + NN(l(lx, 2), l(ly, 2));
		EXPECT_EQ(r.m.with_trunc(4), m) << c.label();
	}
	EXPECT_THROW(table2(Configuration::type_ii_iii(K::IIa, 1, 1), massuyeau_expansion(1)), std::invalid_argument);
}

TEST(DegreeFourTable, LargerParameters)
{
	for (auto const &c : larger_configurations()) {
		if (c.kind == K::I)
			continue;
		EXPECT_EQ(table2(c, massuyeau_expansion(c.genus)).rank, 3) << c.label();
	}
}

TEST(Coefficients, Solve)
{
	std::vector<Configuration> all = default_configurations();
	for (auto const &c : larger_configurations())
		all.push_back(c);
	for (auto const &c : all) {
		auto const s = solve_coefficients(c, massuyeau_expansion(c.genus));
		EXPECT_TRUE(s.system.consistent) << c.label();
		EXPECT_TRUE(s.system.nullspace.empty()) << c.label();
		EXPECT_TRUE(s.determined) << c.label();
		EXPECT_EQ(s.m, (std::array<Scalar, 3>{2, 2, -1})) << c.label();
		EXPECT_EQ(s.degrees, (std::vector<int>{c.kind == K::I ? 2 : 4})) << c.label();
	}
}

TEST(Coefficients, SpecialCases)
{
	auto const a = solve_coefficients(Configuration::type_ii_iii(K::IIa, 1, 1), massuyeau_expansion(1));
	EXPECT_EQ(a.degrees, (std::vector<int>{2, 4}));
	EXPECT_EQ(a.constraints, (std::vector<std::string>{"m1 + m2 = 4", "m3 = -1"}));
	ASSERT_TRUE(a.identified_direction);
	EXPECT_EQ(*a.identified_direction, (std::array<Scalar, 3>{1, -1, 0}));
	EXPECT_TRUE(a.determined);
	EXPECT_EQ(a.m, (std::array<Scalar, 3>{2, 2, -1}));

	auto const b = solve_coefficients(Configuration::type_ii_iii(K::IIb, 1, 1), massuyeau_expansion(1));
	EXPECT_EQ(b.constraints, (std::vector<std::string>{"m1 + m3 = 1", "m2 = 2"}));
	ASSERT_TRUE(b.identified_direction);
	EXPECT_EQ(*b.identified_direction, (std::array<Scalar, 3>{1, 0, -1}));
	EXPECT_TRUE(b.determined);
	EXPECT_EQ(b.m, (std::array<Scalar, 3>{2, 2, -1}));
}

TEST(Residual, ClosedForms)
{
	auto const r1 = contradiction_residual(Configuration::type_i(2), massuyeau_expansion(2));
	auto const q = br(A(2, 1), A(2, 2));
	EXPECT_EQ(r1.residual_degree, 4);
	EXPECT_EQ(r1.method, "direct");
	EXPECT_EQ(r1.residual.with_trunc(kDefaultTrunc), Scalar(-1, 12) * NN(q, q));

	for (auto const &c : {Configuration::type_ii_iii(K::IIa, 3, 2), Configuration::type_ii_iii(K::IIIb, 3, 3)}) {
		int const h = c.h, g = c.genus;
		auto const w = omega_range(g, 1, c.kind == K::IIa ? h : h - 1);
		auto const z = br(B(g, h), w);
		auto const r = contradiction_residual(c, massuyeau_expansion(g));
		EXPECT_EQ(r.residual_degree, 6);
		EXPECT_EQ(r.method, "closed-form");
		EXPECT_EQ(r.residual.with_trunc(kDefaultTrunc), Scalar(-1, 12) * NN(z, z)) << c.label();
	}

	auto const c4 = Configuration::type_iv(K::IVa, 1, 1, 0);
	auto const r4 = contradiction_residual(c4, massuyeau_expansion(2));
	EXPECT_EQ(r4.residual_degree, 8);
	auto const w1 = omega_range(2, 1, 1), w2 = omega_range(2, 2, 2);
	EXPECT_EQ(r4.residual.with_trunc(kDefaultTrunc), Scalar(-1, 12) * NN(br(w1, w2), br(w1, w2)));
}

TEST(Residual, AllConfigurations)
{
	std::vector<Configuration> all = default_configurations();
	for (auto const &c : larger_configurations())
		all.push_back(c);
	for (auto const &c : special_configurations())
		all.push_back(c);
	for (auto const &c : all) {
		auto const r = contradiction_residual(c, massuyeau_expansion(c.genus));
		EXPECT_TRUE(r.nonzero) << c.label();
		EXPECT_TRUE(r.matches_expected) << c.label();
		EXPECT_EQ(r.residual, r.expected) << c.label();
		EXPECT_EQ(r.verdict, "not a mapping class") << c.label();
		EXPECT_EQ(r.expected, expected_residual(c)) << c.label();
	}
}

TEST(Residual, DirectMatchesClosedFormOnSyntheticData)
{
	for (auto const &c : default_configurations()) {
		int const need = c.kind == K::I ? 3 : c.null_homologous() ? 7 : 5;
		for (std::uint64_t seed : {1U, 2U}) {
			auto const s = synthetic_extension(massuyeau_expansion(c.genus), need, seed);
			EXPECT_EQ(direct_residual(c, s), expected_residual(c)) << c.label();
		}
	}
	EXPECT_THROW(direct_residual(Configuration::type_iv(K::IVa, 1, 1, 0), massuyeau_expansion(2)), UnspecifiedDegree);
}

TEST(Twist, Generalized)
{
	auto const t = synthetic_extension(massuyeau_expansion(2), 5, 3);
	auto const c = W("a1 b2", 2);
	auto const tw = generalized_twist(t, c, 5);
	EXPECT_TRUE(preserves_omega(tw));
	// t_{C^m} = e^{-m^2 L(C)}
	auto const tw2 = generalized_twist(t, c.power(2), 5);
	EXPECT_EQ(tw2, tw.compose(tw).compose(tw).compose(tw));
	EXPECT_THROW(generalized_twist(massuyeau_expansion(2), c, 4), UnspecifiedDegree);
}

TEST(Twist, Calibration)
{
	auto const t = massuyeau_expansion(2);
	auto const plus = calibrate_twist_convention(t);
	ASSERT_EQ(plus.size(), 2U);
	EXPECT_EQ(plus[0].curve, "a1");
	ASSERT_TRUE(plus[0].winner);
	EXPECT_EQ(plus[0].winner->to_string(), "b1 a1");
	EXPECT_EQ(plus[0].verified_degree, 3);
	EXPECT_TRUE(plus[0].homology_matches_transvection);
	ASSERT_TRUE(plus[1].winner);
	EXPECT_EQ(plus[1].winner->to_string(), "a1 b1^-1");
	EXPECT_TRUE(plus[1].homology_matches_transvection);
	int best = 0;
	for (auto const &cand : plus[0].candidates)
		if (cand.agreement_degree >= 3)
			++best;
	EXPECT_EQ(best, 1);

	auto const minus = calibrate_twist_convention(t, Pairing{-1});
	ASSERT_TRUE(minus[0].winner);
	EXPECT_EQ(minus[0].winner->to_string(), "b1 a1^-1");
	ASSERT_TRUE(minus[1].winner);
	EXPECT_EQ(minus[1].winner->to_string(), "a1 b1");

	auto const act = twist_action(plus[0], 2);
	EXPECT_EQ(act[0], W("a1", 2));
	EXPECT_EQ(act[1], W("b1 a1", 2));
	EXPECT_EQ(act[2], W("a2", 2));
	EXPECT_TRUE(twist_equivariance_check(t, plus[0], W("b1 a2 b2^-1", 2)));
}

TEST(Twist, ExpansionIndependence)
{
	EXPECT_TRUE(expansion_independence_check(W("a1 b2 a1^-1 b1", 2), 0, 5, {}, true));
	for (std::uint64_t seed = 0; seed < 5; ++seed)
		EXPECT_TRUE(expansion_independence_check(W("a1 b2 a1^-1 b1", 2), seed, 6));
}

TEST(DehnProperty, LInvariance)
{
	Rng rng(91);
	for (int trial = 0; trial < 100; ++trial) {
		int const g = rng.uniform(1, 3);
		auto const t = trial % 2 == 0 ? massuyeau_expansion(g) : synthetic_extension(massuyeau_expansion(g), 5, trial);
		int const trunc = t.valid_degree() + 1;
		auto const x = random_word(g, rng.uniform(1, 6), rng), y = random_word(g, rng.uniform(1, 4), rng);
		auto const L = loop_invariant(t, x, trunc).tensor;
		ASSERT_EQ(loop_invariant(t, x.inverse(), trunc).tensor, L);
		ASSERT_EQ(loop_invariant(t, y * x * y.inverse(), trunc).tensor, L);
	}
}

TEST(DehnProperty, PowerScaling)
{
	Rng rng(92);
	for (int trial = 0; trial < 100; ++trial) {
		int const g = rng.uniform(1, 2);
		auto const t = massuyeau_expansion(g);
		auto const x = random_word(g, rng.uniform(1, 5), rng);
		int const m = rng.uniform(-3, 3);
		ASSERT_EQ(loop_invariant(t, x.power(m), 4).tensor, Scalar(m * m) * loop_invariant(t, x, 4).tensor);
	}
}

TEST(DehnProperty, ExpansionIndependence)
{
	Rng rng(93);
	for (int trial = 0; trial < 100; ++trial) {
		auto const gamma = random_word(2, rng.uniform(1, 4), rng);
		ASSERT_TRUE(expansion_independence_check(gamma, static_cast<std::uint64_t>(trial), 4)) << gamma.to_string();
	}
}
