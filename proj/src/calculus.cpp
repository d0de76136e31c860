#include "twistkit/calculus.hpp"

#include <algorithm>

namespace twistkit {

TensorSeries exp(TensorSeries const &u)
{
	if (sgn(u.constant_term()) != 0)
		throw DomainError("exp: argument has nonzero constant term " + to_string(u.constant_term()));
	int const g = u.genus(), trunc = u.trunc();
	if (u.is_zero())
		return TensorSeries::unit(g, trunc);
	int const d = u.min_degree();
	int const top = trunc / d;
	auto const one = TensorSeries::unit(g, trunc);
	// Horner: S_k = 1 + (u / k) S_{k+1}; S_k is only needed through trunc - (k-1)d.
	TensorSeries s = one;
	for (int k = top; k >= 1; --k)
		s = one + TensorSeries::multiply(u, s, trunc - (k - 1) * d) * Scalar(1, k);
	return s;
}

TensorSeries log(TensorSeries const &u)
{
	if (u.constant_term() != 1)
		throw DomainError("log: constant term is " + to_string(u.constant_term()) + ", expected 1");
	int const g = u.genus(), trunc = u.trunc();
	auto const z = u - TensorSeries::unit(g, trunc);
	if (z.is_zero())
		return z;
	int const d = z.min_degree();
	int const top = trunc / d;
	auto coeff = [](int k) { return Scalar(k % 2 == 1 ? 1 : -1, k); };
	TensorSeries s = TensorSeries::constant(g, trunc, coeff(top));
	for (int k = top - 1; k >= 1; --k)
		s = TensorSeries::constant(g, trunc, coeff(k)) + TensorSeries::multiply(z, s, trunc - k * d);
	return TensorSeries::multiply(z, s, trunc);
}

TensorSeries bch(TensorSeries const &u, TensorSeries const &v)
{
	u.require_compatible(v, "bch");
	return log(exp(u) * exp(v));
}

TensorSeries dynkin_bracketing(TensorSeries const &u)
{
	return map_words(u, [](Word w, Scalar const &c, std::vector<TensorSeries::Term> &out) {
		if (w.empty())
			return;
		// r <- r X - X r, tracked as signed words
		std::vector<std::pair<Word, int>> r{{Word{w.at(0)}, 1}};
		for (int i = 1; i < w.degree(); ++i) {
			Word const x{w.at(i)};
			std::vector<std::pair<Word, int>> next;
			next.reserve(2 * r.size());
			for (auto const &[v, s] : r) {
				next.emplace_back(v.concat(x), s);
				next.emplace_back(x.concat(v), -s);
			}
			r = std::move(next);
		}
		for (auto const &[v, s] : r)
			out.emplace_back(v, s > 0 ? c : Scalar(-c));
	});
}

bool is_lie_element(TensorSeries const &u)
{
	if (sgn(u.constant_term()) != 0)
		return false;
	for (int n = 1; n <= u.max_degree(); ++n) {
		auto const part = u.degree_part(n);
		if (part.is_zero())
			continue;
		if (!(dynkin_bracketing(part) == part * Scalar(n)))
			return false;
	}
	return true;
}

Scalar Rng::rational(int max_num, int max_den)
{
	int p = 0;
	while (p == 0)
		p = uniform(-max_num, max_num);
	Scalar q(p, uniform(1, max_den));
	q.canonicalize();
	return q;
}

TensorSeries left_normed_bracket(int genus, int trunc, std::span<const int> letters)
{
	auto r = TensorSeries::monomial(genus, trunc, Word{letters[0]});
	for (std::size_t i = 1; i < letters.size(); ++i)
		r = commutator(r, TensorSeries::monomial(genus, trunc, Word{letters[i]}));
	return r;
}

TensorSeries random_lie_series(int genus, int trunc, int min_degree, Rng &rng, LieSeriesOptions const &opts)
{
	if (min_degree < 1 || min_degree > trunc)
		throw DegreeError("random_lie_series: min_degree must lie in 1..trunc");
	int const top = opts.max_degree < 0 ? trunc : std::min(opts.max_degree, trunc);
	TensorSeries out(genus, trunc);
	std::vector<int> letters;
	for (int n = min_degree; n <= top; ++n) {
		int const count = n <= opts.max_bracket_letters ? opts.terms_per_degree : opts.high_degree_terms;
		for (int t = 0; t < count; ++t) {
			letters.assign(static_cast<std::size_t>(n), 0);
			for (auto &x : letters)
				x = rng.uniform(0, 2 * genus - 1);
			out += left_normed_bracket(genus, trunc, letters) * rng.rational();
		}
	}
	return out;
}

TensorSeries random_lie_series(int genus, int trunc, int min_degree, std::uint64_t seed, LieSeriesOptions const &opts)
{
	Rng rng(seed);
	return random_lie_series(genus, trunc, min_degree, rng, opts);
}

} // namespace twistkit
