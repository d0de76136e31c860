#include "twistkit/dehn.hpp"

#include <set>

namespace twistkit {

namespace {

TensorSeries nn(TensorSeries const &a, TensorSeries const &b)
{
	return cyclic_sum(a * b);
}

TensorSeries letter(int genus, int trunc, int code)
{
	return TensorSeries::monomial(genus, trunc, Word{code});
}

// L_m of one series, with the series first brought to the truncation m.
TensorSeries lpart(TensorSeries const &ell, int m)
{
	return l_part(ell.with_trunc(m), m);
}

int rank_of(std::vector<TensorSeries> const &tensors)
{
	std::set<Word> words;
	for (auto const &t : tensors)
		for (auto const &[w, c] : t.terms())
			words.insert(w);
	RationalMatrix m;
	for (auto const &t : tensors) {
		std::vector<Scalar> row;
		for (auto const &w : words)
			row.push_back(t.coefficient(w));
		m.push_back(std::move(row));
	}
	return words.empty() ? 0 : rank(std::move(m));
}

struct PairLogs {
	TensorSeries x, y, xy, xyi;
};

PairLogs pair_logs(ExpansionTable const &t, GroupWord const &x, GroupWord const &y, int trunc)
{
	return {expansion_log(t, x, trunc), expansion_log(t, y, trunc), expansion_log(t, x * y, trunc),
	        expansion_log(t, x * y.inverse(), trunc)};
}

std::string format_equation(std::vector<Scalar> const &row)
{
	std::string s;
	for (std::size_t i = 0; i + 1 < row.size(); ++i) {
		Scalar const &c = row[i];
		if (sgn(c) == 0)
			continue;
		Scalar const a = abs(c);
		std::string const var = "m" + std::to_string(i + 1);
		std::string const term = a == 1 ? var : to_string(a) + " " + var;
		if (s.empty())
			s = sgn(c) < 0 ? "-" + term : term;
		else
			s += (sgn(c) < 0 ? " - " : " + ") + term;
	}
	if (s.empty())
		s = "0";
	return s + " = " + to_string(row.back());
}

} // namespace

TensorSeries l_of_log(TensorSeries const &ell)
{
	return Scalar(1, 2) * nn(ell, ell);
}

TensorSeries l_part(TensorSeries const &ell, int m)
{
	TensorSeries out(ell.genus(), ell.trunc());
	for (int i = 1; i < m; ++i)
		out += TensorSeries::multiply(ell.degree_part(i), ell.degree_part(m - i), m);
	return Scalar(1, 2) * cyclic_sum(out);
}

LInvariant loop_invariant(ExpansionTable const &t, GroupWord const &w, int trunc)
{
	if (trunc < 2)
		throw std::invalid_argument("L: trunc must be at least 2");
	if (trunc > t.valid_degree() + 1)
		throw UnspecifiedDegree("L: expansion '" + t.id() + "' determines L only through degree " +
		                        std::to_string(t.valid_degree() + 1) + ", requested " + std::to_string(trunc));
	auto const ell = expansion_log(t, w, trunc - 1).with_trunc(trunc);
	return {w, t.id(), trunc, l_of_log(ell), t.valid_degree() + 1};
}

// ---------------------------------------------------------------------------
// degree-wise identities

TensorSeries closed_form_degree6(TensorSeries const &ell_x, TensorSeries const &ell_y)
{
	auto const x = ell_x.with_trunc(6), y = ell_y.with_trunc(6);
	auto const z = commutator(x.degree_part(1), y.degree_part(2)) + commutator(x.degree_part(2), y.degree_part(1));
	return Scalar(-1, 12) * nn(z, z);
}

TensorSeries closed_form_degree8(TensorSeries const &ell_x, TensorSeries const &ell_y)
{
	auto const x = ell_x.with_trunc(8), y = ell_y.with_trunc(8);
	auto const q = commutator(x.degree_part(2), y.degree_part(2));
	return Scalar(-1, 12) * nn(q, q);
}

LemmaIdentity lemma_identity(TensorSeries const &ell_x, TensorSeries const &ell_y, int degree, LemmaVariant variant)
{
	if (degree != 2 && degree != 4 && degree != 6 && degree != 8)
		throw std::invalid_argument("lemma_identity: degree must be 2, 4, 6 or 8");
	int const d = degree;
	auto const x = ell_x.with_trunc(d), y = ell_y.with_trunc(d);
	auto const X = x.degree_part(1), Y = y.degree_part(1);
	if ((d == 4 || d == 6) && !commutator(X, Y).is_zero())
		throw PreconditionError("degree " + std::to_string(d) + " identity requires [X,Y] = 0");
	if (d == 8 && !(X.is_zero() && Y.is_zero()))
		throw PreconditionError("degree 8 identity requires X = Y = 0");

	LemmaIdentity out;
	out.degree = d;
	auto const lx = l_part(x, d), ly = l_part(y, d);
	if (d <= 4) {
		out.variant = variant;
		bool const inv = variant == LemmaVariant::InverseProduct;
		auto const lz = l_part(bch(x, inv ? -y : y), d);
		out.lhs = lz - lx - ly;
		TensorSeries rhs = d == 2 ? nn(X, Y)
		                          : nn(X, y.degree_part(3)) + nn(Y, x.degree_part(3)) +
		                                nn(x.degree_part(2), y.degree_part(2));
		out.rhs = inv ? -rhs : rhs;
		out.name = std::string("L") + std::to_string(d) + (inv ? "(xy^-1)" : "(xy)");
	} else {
		auto const lp = l_part(bch(x, y), d), lm = l_part(bch(x, -y), d);
		out.lhs = lp + lm - Scalar(2) * lx - Scalar(2) * ly;
		out.rhs = d == 6 ? closed_form_degree6(x, y) : closed_form_degree8(x, y);
		out.name = "L" + std::to_string(d) + " symmetric";
	}
	return out;
}

std::pair<TensorSeries, TensorSeries> random_lemma_pair(int genus, int degree, Rng &rng)
{
	LieSeriesOptions opts;
	opts.terms_per_degree = 1;
	if (degree == 2)
		return {random_lie_series(genus, degree, 1, rng, opts), random_lie_series(genus, degree, 1, rng, opts)};
	if (degree == 8)
		return {random_lie_series(genus, degree, 2, rng, opts), random_lie_series(genus, degree, 2, rng, opts)};
	// [X, Y] = 0 through Y = q X.
	std::vector<TensorSeries::Term> t;
	int const n = rng.uniform(1, 3);
	for (int i = 0; i < n; ++i)
		t.emplace_back(Word{rng.uniform(0, 2 * genus - 1)}, rng.rational(3, 4));
	auto const X = TensorSeries::from_terms(genus, degree, std::move(t));
	Scalar q;
	switch (rng.uniform(0, 3)) {
	case 0: q = 2; break;
	case 1: q = -1; break;
	case 2: q = 0; break;
	default: q = rng.rational(3, 4); break;
	}
	return {X + random_lie_series(genus, degree, 2, rng, opts), q * X + random_lie_series(genus, degree, 2, rng, opts)};
}

TensorSeries partial_omega(int genus, int trunc, int first, int last)
{
	TensorSeries out(genus, trunc);
	for (int i = first; i <= last; ++i)
		out += commutator(letter(genus, trunc, Letter::a(i).code()), letter(genus, trunc, Letter::b(i).code()));
	return out;
}

// ---------------------------------------------------------------------------
// degree-4 coordinates

NamedBasis degree4_basis(Configuration const &c)
{
	c.validate();
	int const g = c.genus;
	if (c.kind == ConfigKind::I)
		throw std::invalid_argument("degree4_basis: case I has no degree-4 basis");
	if (c.null_homologous()) {
		auto const w1 = partial_omega(g, 4, 1, c.k1), w2 = partial_omega(g, 4, c.k1 + 1, c.k1 + c.k2);
		return {{"N(w1 w1)", "N(w1 w2)", "N(w2 w2)"}, {nn(w1, w1), nn(w1, w2), nn(w2, w2)}};
	}
	auto const w = partial_omega(g, 4, 1, c.h), p = partial_omega(g, 4, c.h, c.h);
	if (c.h == 1)
		return {{"u3"}, {nn(p, p)}};
	return {{"u1", "u2", "u3"}, {nn(w, w), nn(w, p), nn(p, p)}};
}

RationalMatrix independence_matrix(std::vector<TensorSeries> const &tensors, std::vector<Word> const &probes)
{
	if (probes.empty())
		return RationalMatrix(tensors.size());
	int const d = probes.front().degree();
	for (auto const &w : probes)
		if (w.degree() != d)
			throw DegreeError("independence_matrix: probe words have different degrees");
	RationalMatrix m;
	for (auto const &t : tensors) {
		if (!t.is_zero() && (t.min_degree() != d || t.max_degree() != d))
			throw DegreeError("independence_matrix: tensor is not homogeneous of degree " + std::to_string(d));
		std::vector<Scalar> row;
		for (auto const &w : probes)
			row.push_back(t.coefficient(w));
		m.push_back(std::move(row));
	}
	return m;
}

std::optional<std::vector<Scalar>> coordinates(TensorSeries const &target, std::vector<TensorSeries> const &basis)
{
	std::set<Word> words;
	for (auto const &[w, c] : target.terms())
		words.insert(w);
	for (auto const &b : basis)
		for (auto const &[w, c] : b.terms())
			words.insert(w);
	RationalMatrix a;
	std::vector<Scalar> rhs;
	for (auto const &w : words) {
		std::vector<Scalar> row;
		for (auto const &b : basis)
			row.push_back(b.coefficient(w));
		a.push_back(std::move(row));
		rhs.push_back(target.coefficient(w));
	}
	if (rank(a) < static_cast<int>(basis.size()))
		throw std::invalid_argument("coordinates: basis is linearly dependent");
	if (words.empty())
		return std::vector<Scalar>(basis.size(), 0);
	auto const sol = solve(std::move(a), std::move(rhs));
	if (!sol.consistent)
		return std::nullopt;
	return sol.particular;
}

Table2Row table2(Configuration const &c, ExpansionTable const &t)
{
	c.validate();
	if (c.kind == ConfigKind::I)
		throw std::invalid_argument("table2: case I has no row");
	if (c.special_h1())
		throw std::invalid_argument("table2: " + c.label() + " requires h >= 2");
	auto const [x, y] = config_pair(c);
	auto const lx = expansion_log(t, x, 3).with_trunc(4), ly = expansion_log(t, y, 3).with_trunc(4);
	Table2Row row;
	row.config = c;
	row.expansion_id = t.id();
	row.l4x = l_part(lx, 4);
	row.l4y = l_part(ly, 4);
	row.m = nn(lx.degree_part(1), ly.degree_part(3)) + nn(ly.degree_part(1), lx.degree_part(3)) +
	        nn(lx.degree_part(2), ly.degree_part(2));
	row.basis = degree4_basis(c);
	TensorSeries const *vals[] = {&row.l4x, &row.l4y, &row.m};
	for (int i = 0; i < 3; ++i)
		if (auto co = coordinates(*vals[i], row.basis.tensors))
			row.coords[static_cast<std::size_t>(i)] = *co;
	row.rank = rank_of({row.l4x, row.l4y, row.m});
	return row;
}

// ---------------------------------------------------------------------------
// coefficient solve

CoefficientSolution solve_coefficients(Configuration const &c, ExpansionTable const &t)
{
	c.validate();
	CoefficientSolution out;
	out.config = c;
	if (c.kind == ConfigKind::I)
		out.degrees = {2};
	else if (c.special_h1())
		out.degrees = {2, 4};
	else
		out.degrees = {4};

	auto const [x, y] = config_pair(c);
	RationalMatrix a;
	std::vector<Scalar> b;
	for (int d : out.degrees) {
		auto const logs = pair_logs(t, x, y, d - 1);
		TensorSeries const vals[] = {lpart(logs.x, d), lpart(logs.y, d), lpart(logs.xy, d), lpart(logs.xyi, d)};
		std::vector<TensorSeries> basis;
		if (d == 2) {
			auto const X = logs.x.with_trunc(2).degree_part(1), Y = logs.y.with_trunc(2).degree_part(1);
			if (c.kind == ConfigKind::I)
				basis = {X * X, Y * Y, nn(X, Y)};
			else {
				auto const bh = letter(c.genus, 2, Letter::b(c.h).code());
				basis = {bh * bh};
			}
		} else {
			basis = degree4_basis(c).tensors;
		}
		std::vector<std::vector<Scalar>> co;
		for (auto const &v : vals) {
			auto r = coordinates(v, basis);
			if (!r)
				break;
			co.push_back(*r);
		}
		if (co.size() == 4) {
			for (std::size_t k = 0; k < basis.size(); ++k) {
				a.push_back({co[0][k], co[1][k], co[2][k]});
				b.push_back(co[3][k]);
			}
		} else {
			// Outside the expected span: compare word coefficients instead.
			std::set<Word> words;
			for (auto const &v : vals)
				for (auto const &[w, cf] : v.terms())
					words.insert(w);
			for (auto const &w : words) {
				a.push_back({vals[0].coefficient(w), vals[1].coefficient(w), vals[2].coefficient(w)});
				b.push_back(vals[3].coefficient(w));
			}
		}
	}
	out.system = solve(a, b);
	for (auto const &row : out.system.reduced)
		out.constraints.push_back(format_equation(row));

	if (c.special_h1())
		out.identified_direction =
		    c.kind == ConfigKind::IIa ? std::array<Scalar, 3>{1, -1, 0} : std::array<Scalar, 3>{1, 0, -1};
	if (!out.system.consistent)
		return out;

	auto const &ns = out.system.nullspace;
	if (ns.empty())
		out.determined = true;
	else if (ns.size() == 1 && out.identified_direction) {
		auto const &dir = *out.identified_direction;
		int k = 0;
		while (sgn(dir[static_cast<std::size_t>(k)]) == 0)
			++k;
		Scalar const f = ns[0][static_cast<std::size_t>(k)] / dir[static_cast<std::size_t>(k)];
		out.determined = true;
		for (std::size_t i = 0; i < 3; ++i)
			out.determined = out.determined && ns[0][i] == f * dir[i];
	}

	std::array<Scalar, 3> const canonical{2, 2, -1};
	bool fits = true;
	for (std::size_t r = 0; r < a.size(); ++r)
		fits = fits && a[r][0] * canonical[0] + a[r][1] * canonical[1] + a[r][2] * canonical[2] == b[r];
	if (fits)
		out.m = canonical;
	else
		for (std::size_t i = 0; i < 3; ++i)
			out.m[i] = out.system.particular[i];
	return out;
}

// ---------------------------------------------------------------------------
// residuals

namespace {

int residual_degree_of(Configuration const &c)
{
	if (c.kind == ConfigKind::I)
		return 4;
	return c.null_homologous() ? 8 : 6;
}

TensorSeries combine(TensorSeries const &lxy, TensorSeries const &lxyi, TensorSeries const &lx, TensorSeries const &ly)
{
	return lxy + lxyi - Scalar(2) * lx - Scalar(2) * ly;
}

} // namespace

TensorSeries direct_residual(Configuration const &c, ExpansionTable const &t)
{
	c.validate();
	int const d = residual_degree_of(c);
	auto const [x, y] = config_pair(c);
	auto const logs = pair_logs(t, x, y, d - 1);
	return combine(lpart(logs.xy, d), lpart(logs.xyi, d), lpart(logs.x, d), lpart(logs.y, d));
}

TensorSeries expected_residual(Configuration const &c)
{
	c.validate();
	int const g = c.genus, d = residual_degree_of(c);
	TensorSeries q(g, d);
	switch (c.kind) {
	case ConfigKind::I:
		q = commutator(letter(g, d, Letter::a(1).code()), letter(g, d, Letter::a(2).code()));
		break;
	case ConfigKind::IIa:
	case ConfigKind::IIb:
		q = commutator(letter(g, d, Letter::b(c.h).code()), partial_omega(g, d, 1, c.h));
		break;
	case ConfigKind::IIIa:
	case ConfigKind::IIIb:
		q = commutator(letter(g, d, Letter::b(c.h).code()), partial_omega(g, d, 1, c.h - 1));
		break;
	case ConfigKind::IVa:
	case ConfigKind::IVb:
		q = commutator(partial_omega(g, d, 1, c.k1), partial_omega(g, d, c.k1 + 1, c.k1 + c.k2));
		break;
	}
	return Scalar(-1, 12) * nn(q, q);
}

TwistReport contradiction_residual(Configuration const &c, ExpansionTable const &t)
{
	c.validate();
	TwistReport r;
	r.config = c;
	r.expansion_id = t.id();
	r.coefficients = solve_coefficients(c, t);
	r.residual_degree = residual_degree_of(c);
	if (c.kind == ConfigKind::I) {
		r.method = "direct";
		r.residual = direct_residual(c, t);
	} else {
		r.method = "closed-form";
		auto const [x, y] = config_pair(c);
		auto const lx = expansion_log(t, x, 2), ly = expansion_log(t, y, 2);
		auto const X = lx.degree_part(1), Y = ly.degree_part(1);
		if (r.residual_degree == 6) {
			if (!commutator(X, Y).is_zero())
				throw PreconditionError(c.label() + ": [X,Y] != 0");
			r.residual = closed_form_degree6(lx, ly);
		} else {
			if (!X.is_zero() || !Y.is_zero())
				throw PreconditionError(c.label() + ": X, Y not both zero");
			r.residual = closed_form_degree8(lx, ly);
		}
	}
	r.authoritative_degree = r.residual_degree;
	r.expected = expected_residual(c);
	r.matches_expected = r.residual == r.expected;
	r.nonzero = !r.residual.is_zero();
	auto const &co = r.coefficients;
	if (!co.system.consistent)
		r.verdict = "no mapping-class candidate";
	else if (r.nonzero && co.determined && co.m == std::array<Scalar, 3>{2, 2, -1})
		r.verdict = "not a mapping class";
	else
		r.verdict = "undecided";
	return r;
}

// ---------------------------------------------------------------------------
// twists

Automorphism generalized_twist(ExpansionTable const &t, GroupWord const &gamma, int trunc, Pairing pairing)
{
	if (trunc > t.valid_degree())
		throw UnspecifiedDegree("generalized_twist: expansion '" + t.id() + "' is valid through degree " +
		                        std::to_string(t.valid_degree()) + ", requested " + std::to_string(trunc));
	auto const l = loop_invariant(t, gamma, trunc + 1);
	return exp_derivation(-Derivation::from_tensor(l.tensor, pairing).truncated(trunc));
}

namespace {

GroupWord substitute(std::vector<GroupWord> const &images, GroupWord const &w)
{
	GroupWord out(w.genus());
	for (auto s : w.letters()) {
		auto const &im = images.at(static_cast<std::size_t>(s.generator));
		out = out * (s.exponent > 0 ? im : im.inverse());
	}
	return out;
}

RationalMatrix abelian_matrix(std::vector<GroupWord> const &images)
{
	std::size_t const n = images.size();
	RationalMatrix m(n, std::vector<Scalar>(n, 0));
	for (std::size_t j = 0; j < n; ++j) {
		auto const v = images[j].abelianization();
		for (std::size_t i = 0; i < n; ++i)
			m[i][j] = v[i];
	}
	return m;
}

} // namespace

std::vector<GroupWord> twist_action(TwistConvention const &conv, int genus)
{
	std::vector<GroupWord> out;
	for (int gen = 0; gen < 2 * genus; ++gen)
		out.push_back(gen == conv.crossing_generator && conv.winner ? *conv.winner : GroupWord::generator(genus, gen));
	return out;
}

std::vector<TwistConvention> calibrate_twist_convention(ExpansionTable const &t, Pairing pairing)
{
	int const g = t.genus();
	int const d = std::min(3, t.valid_degree());
	auto const a = GroupWord::alpha(g, 1), ai = GroupWord::alpha(g, 1, -1);
	auto const b = GroupWord::beta(g, 1), bi = GroupWord::beta(g, 1, -1);

	struct Spec {
		std::string name;
		GroupWord curve;
		int crossing;
		std::vector<GroupWord> candidates;
	};
	std::vector<Spec> const specs{
	    {"a1", a, 1, {b * a, a * b, b * ai, ai * b}},
	    {"b1", b, 0, {a * b, b * a, a * bi, bi * a}},
	};

	std::vector<TwistConvention> out;
	for (auto const &s : specs) {
		TwistConvention conv;
		conv.curve = s.name;
		conv.crossing_generator = s.crossing;
		auto const phi = generalized_twist(t, s.curve, d, pairing);
		std::vector<TensorSeries> target;
		for (int gen = 0; gen < 2 * g; ++gen)
			target.push_back(phi(evaluate(t, GroupWord::generator(g, gen), d)));
		std::vector<std::size_t> survivors;
		for (auto const &cand : s.candidates) {
			CandidateResult cr{cand, d};
			for (int gen = 0; gen < 2 * g; ++gen) {
				auto const w = gen == s.crossing ? cand : GroupWord::generator(g, gen);
				auto const v = evaluate(t, w, d);
				auto const &tg = target[static_cast<std::size_t>(gen)];
				for (int n = 0; n <= d; ++n)
					if (!(v.degree_part(n) == tg.degree_part(n))) {
						cr.agreement_degree = std::min(cr.agreement_degree, n - 1);
						break;
					}
			}
			if (cr.agreement_degree >= std::min(2, d))
				survivors.push_back(conv.candidates.size());
			conv.candidates.push_back(cr);
		}
		if (survivors.size() == 1) {
			auto const &w = conv.candidates[survivors[0]];
			conv.winner = w.image;
			conv.verified_degree = w.agreement_degree;
		}
		conv.homology_action = phi.linear_part();
		RationalMatrix expected(static_cast<std::size_t>(2 * g), std::vector<Scalar>(static_cast<std::size_t>(2 * g), 0));
		int const cc = s.curve.letters().front().generator;
		for (int j = 0; j < 2 * g; ++j) {
			expected[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] += 1;
			expected[static_cast<std::size_t>(cc)][static_cast<std::size_t>(j)] -= pairing(j, cc);
		}
		conv.homology_matches_transvection = conv.winner && conv.homology_action == expected &&
		                                     abelian_matrix(twist_action(conv, g)) == expected;
		out.push_back(std::move(conv));
	}
	return out;
}

bool expansion_independence_check(GroupWord const &gamma, std::uint64_t seed, int trunc, Pairing pairing,
                                  bool identity_perturbation)
{
	if (trunc < 2)
		throw std::invalid_argument("expansion_independence_check: trunc must be at least 2");
	int const g = gamma.genus();
	auto base = massuyeau_expansion(g);
	if (trunc - 1 > base.valid_degree())
		base = synthetic_extension(base, trunc - 1, seed);
	Rng rng(seed * 0x9E3779B97F4A7C15ULL + 1);
	auto const u = identity_perturbation ? Automorphism::identity(g, trunc - 1) : random_ia_omega(g, trunc - 1, rng, pairing);
	auto const moved = perturb_expansion(base, u);
	auto const lp = loop_invariant(moved, gamma, trunc).tensor;
	auto const l = loop_invariant(base, gamma, trunc).tensor;
	auto const lhs = Derivation::from_tensor(lp, pairing).truncated(trunc - 1);
	auto const rhs = conjugate(u, Derivation::from_tensor(l, pairing).truncated(trunc - 1));
	return lhs == rhs;
}

bool twist_equivariance_check(ExpansionTable const &t, TwistConvention const &conv, GroupWord const &gamma,
                              Pairing pairing)
{
	if (!conv.winner)
		return false;
	int const g = t.genus();
	int const d = std::min(3, t.valid_degree());
	auto const fg = substitute(twist_action(conv, g), gamma);
	auto const tf = generalized_twist(t, GroupWord::parse(conv.curve, g), d, pairing);
	auto const lhs = Derivation::from_tensor(loop_invariant(t, fg, d + 1).tensor, pairing).truncated(d);
	auto const rhs = conjugate(tf, Derivation::from_tensor(loop_invariant(t, gamma, d + 1).tensor, pairing).truncated(d));
	return lhs == rhs;
}

} // namespace twistkit
