#pragma once

// The symplectic form, the cyclic map N, derivations of the truncated tensor algebra
// and filter-preserving algebra automorphisms.

#include "twistkit/calculus.hpp"
#include "twistkit/linalg.hpp"
#include "twistkit/tensor.hpp"

#include <vector>

namespace twistkit {

/// Intersection pairing on H: (A_i . B_i) = sign, (B_i . A_i) = -sign, all other
/// pairs of basis letters 0.
struct Pairing {
	int sign = 1;

	int operator()(int y, int x) const
	{
		if (y / 2 != x / 2 || y == x)
			return 0;
		return (y % 2 == 0) ? sign : -sign;
	}
	Scalar operator()(TensorSeries const &y, TensorSeries const &x) const;
};

/// omega = sum_i A_i B_i - B_i A_i.
TensorSeries symplectic_form(int genus, int trunc = kDefaultTrunc);

/// N(X1...Xm) = sum of the m cyclic rotations of the word; N(1) = 0.
TensorSeries cyclic_sum(TensorSeries const &u);

/// A derivation of the truncated algebra, determined by the images of the 2g
/// letters and extended by the Leibniz rule.
class Derivation {
public:
	Derivation(int genus, int trunc);
	explicit Derivation(std::vector<TensorSeries> images);

	/// Contracts the leading letter of each word of t against the argument:
	/// X u  |->  (Y |-> (Y . X) u).  t must have zero constant term.
	static Derivation from_tensor(TensorSeries const &t, Pairing pairing = {});

	int genus() const { return genus_; }
	int trunc() const { return trunc_; }
	TensorSeries const &image(int letter) const { return images_.at(static_cast<std::size_t>(letter)); }
	std::vector<TensorSeries> const &images() const { return images_; }
	bool is_zero() const;

	TensorSeries operator()(TensorSeries const &u) const;

	Derivation truncated(int d) const;
	Derivation operator-() const;
	friend Derivation operator+(Derivation const &a, Derivation const &b);
	friend Derivation operator-(Derivation const &a, Derivation const &b);
	friend Derivation operator*(Scalar const &c, Derivation const &d);
	friend bool operator==(Derivation const &a, Derivation const &b) = default;

	std::string to_string() const;

private:
	int genus_;
	int trunc_;
	std::vector<TensorSeries> images_;
};

/// Letter-wise commutator D1 D2 - D2 D1.
Derivation bracket(Derivation const &d1, Derivation const &d2);

/// D(omega) == 0 at the derivation's truncation.
bool kills_omega(Derivation const &d);

/// Filter-preserving algebra automorphism: every letter maps into T_1 and the
/// induced linear map on H is invertible.
class Automorphism {
public:
	explicit Automorphism(std::vector<TensorSeries> images);

	static Automorphism identity(int genus, int trunc);
	/// Letter j maps to sum_i m[i][j] * letter i.
	static Automorphism linear(int genus, int trunc, RationalMatrix const &m);

	int genus() const { return genus_; }
	int trunc() const { return trunc_; }
	TensorSeries const &image(int letter) const { return images_.at(static_cast<std::size_t>(letter)); }
	std::vector<TensorSeries> const &images() const { return images_; }

	TensorSeries operator()(TensorSeries const &u) const;

	/// (this o inner)(Y) = this(inner(Y)).
	Automorphism compose(Automorphism const &inner) const;
	Automorphism inverse() const;
	Automorphism truncated(int d) const;
	/// Induced map on H as a matrix.
	RationalMatrix linear_part() const;
	bool acts_trivially_on_homology() const;

	friend bool operator==(Automorphism const &a, Automorphism const &b) = default;

private:
	TensorSeries apply(TensorSeries const &u, int max_degree) const;

	int genus_;
	int trunc_;
	std::vector<TensorSeries> images_;
};

/// Letter-wise sum_k D^k / k!.  Throws DomainError when the series does not
/// terminate in the truncated algebra (degree-preserving part not nilpotent).
Automorphism exp_derivation(Derivation const &d);

/// U o D o U^{-1}.
Derivation conjugate(Automorphism const &u, Derivation const &d);

bool preserves_omega(Automorphism const &u);

/// U o D_{N(v)} o U^{-1} == D_{N(U(v))}, compared through degree trunc - 1 where both
/// sides are exact.
bool conjugation_law_holds(Automorphism const &u, TensorSeries const &v, Pairing pairing = {});

/// Y |-> Y + (Y . X) X for a degree-1 element X.
Automorphism transvection(TensorSeries const &x, Pairing pairing = {});

/// Product of `count` transvections along random integral degree-1 vectors.
Automorphism random_symplectic_linear(int genus, int trunc, Rng &rng, Pairing pairing = {}, int count = 3);
/// exp of the derivation N(w) for a random sparse w of degree 3 (an element of the
/// omega-preserving IA group).
Automorphism random_ia_omega(int genus, int trunc, Rng &rng, Pairing pairing = {});

} // namespace twistkit
