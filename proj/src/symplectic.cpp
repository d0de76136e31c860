#include "twistkit/symplectic.hpp"

#include <map>

namespace twistkit {

Scalar Pairing::operator()(TensorSeries const &y, TensorSeries const &x) const
{
	Scalar s = 0;
	auto const y1 = y.degree_part(1), x1 = x.degree_part(1);
	for (auto const &[wy, cy] : y1.terms())
		for (auto const &[wx, cx] : x1.terms())
			s += cy * cx * (*this)(wy.at(0), wx.at(0));
	return s;
}

TensorSeries symplectic_form(int genus, int trunc)
{
	std::vector<TensorSeries::Term> t;
	for (int i = 1; i <= genus; ++i) {
		t.emplace_back(Word::of({Letter::a(i), Letter::b(i)}), 1);
		t.emplace_back(Word::of({Letter::b(i), Letter::a(i)}), -1);
	}
	return TensorSeries::from_terms(genus, trunc, std::move(t));
}

TensorSeries cyclic_sum(TensorSeries const &u)
{
	return map_words(u, [](Word w, Scalar const &c, std::vector<TensorSeries::Term> &out) {
		for (int i = 0; i < w.degree(); ++i)
			out.emplace_back(w.rotate(i), c);
	});
}

// ---------------------------------------------------------------------------
// Derivation

Derivation::Derivation(int genus, int trunc) : genus_(genus), trunc_(trunc)
{
	images_.assign(static_cast<std::size_t>(2 * genus), TensorSeries(genus, trunc));
}

Derivation::Derivation(std::vector<TensorSeries> images) : images_(std::move(images))
{
	if (images_.empty() || images_.size() % 2 != 0)
		throw StructuralError("derivation needs one image per letter");
	genus_ = images_.front().genus();
	trunc_ = images_.front().trunc();
	if (images_.size() != static_cast<std::size_t>(2 * genus_))
		throw StructuralError("derivation needs exactly 2g images");
	for (auto const &im : images_)
		images_.front().require_compatible(im, "derivation");
}

Derivation Derivation::from_tensor(TensorSeries const &t, Pairing pairing)
{
	if (sgn(t.constant_term()) != 0)
		throw DomainError("derivation_from_tensor: tensor has a constant term");
	int const g = t.genus();
	std::vector<std::vector<TensorSeries::Term>> parts(static_cast<std::size_t>(2 * g));
	for (auto const &[w, c] : t.terms()) {
		int const lead = w.at(0);
		Word const rest = w.suffix_from(1);
		for (int y = 0; y < 2 * g; ++y)
			if (int const p = pairing(y, lead); p != 0)
				parts[static_cast<std::size_t>(y)].emplace_back(rest, p > 0 ? c : Scalar(-c));
	}
	std::vector<TensorSeries> images;
	for (auto &p : parts)
		images.push_back(TensorSeries::from_terms(g, t.trunc(), std::move(p)));
	return Derivation(std::move(images));
}

bool Derivation::is_zero() const
{
	for (auto const &im : images_)
		if (!im.is_zero())
			return false;
	return true;
}

TensorSeries Derivation::operator()(TensorSeries const &u) const
{
	if (u.genus() != genus_ || u.trunc() != trunc_)
		throw StructuralError("apply_derivation: operand lives in a different algebra");
	int const trunc = trunc_;
	return map_words(u, [&](Word w, Scalar const &c, std::vector<TensorSeries::Term> &out) {
		int const n = w.degree();
		for (int i = 0; i < n; ++i) {
			Word const pre = w.prefix(i);
			Word const post = w.suffix_from(i + 1);
			int const room = trunc - (n - 1);
			for (auto const &[v, d] : images_[static_cast<std::size_t>(w.at(i))].terms()) {
				if (v.degree() > room)
					break;
				out.emplace_back(pre.concat(v).concat(post), c * d);
			}
		}
	});
}

Derivation Derivation::truncated(int d) const
{
	std::vector<TensorSeries> im;
	for (auto const &x : images_)
		im.push_back(x.with_trunc(d));
	return Derivation(std::move(im));
}

Derivation Derivation::operator-() const
{
	std::vector<TensorSeries> im;
	for (auto const &x : images_)
		im.push_back(-x);
	return Derivation(std::move(im));
}

Derivation operator+(Derivation const &a, Derivation const &b)
{
	std::vector<TensorSeries> im;
	for (std::size_t i = 0; i < a.images_.size(); ++i)
		im.push_back(a.images_[i] + b.images_.at(i));
	return Derivation(std::move(im));
}

Derivation operator-(Derivation const &a, Derivation const &b)
{
	return a + (-b);
}

Derivation operator*(Scalar const &c, Derivation const &d)
{
	std::vector<TensorSeries> im;
	for (auto const &x : d.images_)
		im.push_back(c * x);
	return Derivation(std::move(im));
}

std::string Derivation::to_string() const
{
	std::string s;
	for (std::size_t i = 0; i < images_.size(); ++i) {
		if (i)
			s += "; ";
		s += Letter::from_code(static_cast<int>(i)).name() + " -> " + images_[i].to_string();
	}
	return s;
}

Derivation bracket(Derivation const &d1, Derivation const &d2)
{
	if (d1.genus() != d2.genus() || d1.trunc() != d2.trunc())
		throw StructuralError("derivation_bracket: operands live in different algebras");
	std::vector<TensorSeries> im;
	for (int y = 0; y < 2 * d1.genus(); ++y)
		im.push_back(d1(d2.image(y)) - d2(d1.image(y)));
	return Derivation(std::move(im));
}

bool kills_omega(Derivation const &d)
{
	return d(symplectic_form(d.genus(), d.trunc())).is_zero();
}

// ---------------------------------------------------------------------------
// Automorphism

Automorphism::Automorphism(std::vector<TensorSeries> images) : images_(std::move(images))
{
	if (images_.empty() || images_.size() % 2 != 0)
		throw StructuralError("automorphism needs one image per letter");
	genus_ = images_.front().genus();
	trunc_ = images_.front().trunc();
	if (images_.size() != static_cast<std::size_t>(2 * genus_))
		throw StructuralError("automorphism needs exactly 2g images");
	for (auto const &im : images_) {
		images_.front().require_compatible(im, "automorphism");
		if (sgn(im.constant_term()) != 0)
			throw DomainError("automorphism: letter image has a constant term");
	}
	if (trunc_ >= 1 && rank(linear_part()) != 2 * genus_)
		throw DomainError("automorphism: degree-1 part is not invertible");
}

Automorphism Automorphism::identity(int genus, int trunc)
{
	std::vector<TensorSeries> im;
	for (int y = 0; y < 2 * genus; ++y)
		im.push_back(TensorSeries::monomial(genus, trunc, Word{y}));
	return Automorphism(std::move(im));
}

Automorphism Automorphism::linear(int genus, int trunc, RationalMatrix const &m)
{
	std::vector<TensorSeries> im;
	for (int j = 0; j < 2 * genus; ++j) {
		std::vector<TensorSeries::Term> t;
		for (int i = 0; i < 2 * genus; ++i)
			t.emplace_back(Word{i}, m.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j)));
		im.push_back(TensorSeries::from_terms(genus, trunc, std::move(t)));
	}
	return Automorphism(std::move(im));
}

TensorSeries Automorphism::apply(TensorSeries const &u, int max_degree) const
{
	// Horner in the leading letter: U(c + sum_Y Y u_Y) = c + sum_Y U(Y) U(u_Y).
	TensorSeries out = TensorSeries::constant(genus_, trunc_, u.constant_term());
	if (max_degree <= 0)
		return out;
	std::vector<std::vector<TensorSeries::Term>> tails(static_cast<std::size_t>(2 * genus_));
	for (auto const &[w, c] : u.terms())
		if (!w.empty() && w.degree() <= max_degree)
			tails[static_cast<std::size_t>(w.at(0))].emplace_back(w.suffix_from(1), c);
	for (int y = 0; y < 2 * genus_; ++y) {
		auto &t = tails[static_cast<std::size_t>(y)];
		if (t.empty())
			continue;
		auto const tail = TensorSeries::from_terms(genus_, trunc_, std::move(t));
		out += TensorSeries::multiply(images_[static_cast<std::size_t>(y)], apply(tail, max_degree - 1), max_degree);
	}
	return out;
}

TensorSeries Automorphism::operator()(TensorSeries const &u) const
{
	if (u.genus() != genus_ || u.trunc() != trunc_)
		throw StructuralError("automorphism: operand lives in a different algebra");
	return apply(u, trunc_);
}

Automorphism Automorphism::compose(Automorphism const &inner) const
{
	std::vector<TensorSeries> im;
	for (auto const &x : inner.images_)
		im.push_back((*this)(x));
	return Automorphism(std::move(im));
}

RationalMatrix Automorphism::linear_part() const
{
	auto const n = static_cast<std::size_t>(2 * genus_);
	RationalMatrix m(n, std::vector<Scalar>(n, 0));
	for (std::size_t j = 0; j < n; ++j)
		for (std::size_t i = 0; i < n; ++i)
			m[i][j] = images_[j].coefficient(Word{static_cast<int>(i)});
	return m;
}

bool Automorphism::acts_trivially_on_homology() const
{
	auto const m = linear_part();
	for (std::size_t i = 0; i < m.size(); ++i)
		for (std::size_t j = 0; j < m.size(); ++j)
			if (m[i][j] != (i == j ? 1 : 0))
				return false;
	return true;
}

Automorphism Automorphism::inverse() const
{
	// Start from the inverse of the linear part and remove the degree-k error of
	// U(V(Y)) - Y for k = 2, 3, ...; that error only needs both maps truncated at k.
	auto const lin_inv = linear(genus_, trunc_, invert(linear_part()));
	std::vector<TensorSeries> v;
	for (int y = 0; y < 2 * genus_; ++y)
		v.push_back(lin_inv.image(y));
	for (int k = 2; k <= trunc_; ++k) {
		auto const uk = truncated(k);
		for (int y = 0; y < 2 * genus_; ++y) {
			auto &vy = v[static_cast<std::size_t>(y)];
			auto const e = uk(vy.with_trunc(k)).degree_part(k);
			vy -= lin_inv(e.with_trunc(trunc_));
		}
	}
	return Automorphism(std::move(v));
}

Automorphism Automorphism::truncated(int d) const
{
	std::vector<TensorSeries> im;
	for (auto const &x : images_)
		im.push_back(x.with_trunc(d));
	return Automorphism(std::move(im));
}

Automorphism exp_derivation(Derivation const &d)
{
	int const g = d.genus(), trunc = d.trunc();
	int const max_terms = 4 * (trunc + 1) * 2 * g + 1;
	std::vector<TensorSeries> im;
	for (int y = 0; y < 2 * g; ++y) {
		auto term = TensorSeries::monomial(g, trunc, Word{y});
		auto sum = term;
		int k = 1;
		for (; k <= max_terms; ++k) {
			term = d(term) * Scalar(1, k);
			if (term.is_zero())
				break;
			sum += term;
		}
		if (k > max_terms)
			throw DomainError("exp_derivation: action does not terminate at trunc " + std::to_string(trunc));
		im.push_back(std::move(sum));
	}
	return Automorphism(std::move(im));
}

Derivation conjugate(Automorphism const &u, Derivation const &d)
{
	auto const inv = u.inverse();
	std::vector<TensorSeries> im;
	for (int y = 0; y < 2 * u.genus(); ++y)
		im.push_back(u(d(inv.image(y))));
	return Derivation(std::move(im));
}

bool preserves_omega(Automorphism const &u)
{
	auto const w = symplectic_form(u.genus(), u.trunc());
	return u(w) == w;
}

bool conjugation_law_holds(Automorphism const &u, TensorSeries const &v, Pairing pairing)
{
	if (v.genus() != u.genus() || v.trunc() != u.trunc())
		throw StructuralError("conjugation_law_holds: operands live in different algebras");
	int const d = u.trunc() - 1;
	auto const lhs = conjugate(u.truncated(d), Derivation::from_tensor(cyclic_sum(v), pairing).truncated(d));
	auto const rhs = Derivation::from_tensor(cyclic_sum(u(v)), pairing).truncated(d);
	return lhs == rhs;
}

Automorphism transvection(TensorSeries const &x, Pairing pairing)
{
	int const g = x.genus(), trunc = x.trunc();
	auto const x1 = x.degree_part(1);
	if (!(x1 == x))
		throw DomainError("transvection: vector must be homogeneous of degree 1");
	std::vector<TensorSeries> im;
	for (int y = 0; y < 2 * g; ++y) {
		auto const ly = TensorSeries::monomial(g, trunc, Word{y});
		im.push_back(ly + pairing(ly, x1) * x1);
	}
	return Automorphism(std::move(im));
}

Automorphism random_symplectic_linear(int genus, int trunc, Rng &rng, Pairing pairing, int count)
{
	auto u = Automorphism::identity(genus, trunc);
	for (int k = 0; k < count; ++k) {
		std::vector<TensorSeries::Term> t;
		for (int y = 0; y < 2 * genus; ++y)
			t.emplace_back(Word{y}, rng.uniform(-2, 2));
		auto const x = TensorSeries::from_terms(genus, trunc, std::move(t));
		if (x.is_zero())
			continue;
		u = transvection(x, pairing).compose(u);
	}
	return u;
}

Automorphism random_ia_omega(int genus, int trunc, Rng &rng, Pairing pairing)
{
	std::vector<TensorSeries::Term> t;
	for (int k = 0; k < 3; ++k) {
		std::vector<int> letters(3);
		for (auto &x : letters)
			x = rng.uniform(0, 2 * genus - 1);
		t.emplace_back(Word(std::span<const int>(letters)), rng.rational(3, 4));
	}
	auto const w = TensorSeries::from_terms(genus, trunc, std::move(t));
	return exp_derivation(Derivation::from_tensor(cyclic_sum(w), pairing));
}

} // namespace twistkit
