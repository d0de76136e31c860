#pragma once

// Exponential, logarithm and Baker-Campbell-Hausdorff product on truncated series,
// plus primitivity (Lie-element) detection.

#include "twistkit/tensor.hpp"

#include <cstdint>
#include <random>

namespace twistkit {

/// sum_{k <= trunc} u^k / k!.  Requires a zero constant term.
TensorSeries exp(TensorSeries const &u);
/// sum_{k >= 1} (-1)^{k+1} (u - 1)^k / k.  Requires constant term 1.
TensorSeries log(TensorSeries const &u);
/// log(exp(u) exp(v)).
TensorSeries bch(TensorSeries const &u, TensorSeries const &v);

/// Left-normed bracketing X1...Xn -> [..[[X1,X2],X3],..,Xn], extended linearly
/// (the empty word maps to 0).
TensorSeries dynkin_bracketing(TensorSeries const &u);

/// True iff every homogeneous component u_n of u satisfies the Dynkin criterion
/// bracketing(u_n) == n * u_n.  A nonzero constant term is never Lie.
bool is_lie_element(TensorSeries const &u);

/// Explicitly passed random source; same seed, same stream on every platform.
class Rng {
public:
	explicit Rng(std::uint64_t seed) : engine_(seed) {}
	/// Uniform in [lo, hi].
	int uniform(int lo, int hi)
	{
		auto const span = static_cast<std::uint64_t>(hi - lo + 1);
		return lo + static_cast<int>(engine_() % span);
	}
	bool coin() { return (engine_() & 1U) != 0; }
	/// Random nonzero rational p/q with |p| <= max_num, 1 <= q <= max_den.
	Scalar rational(int max_num = 6, int max_den = 12);

private:
	std::mt19937_64 engine_;
};

struct LieSeriesOptions {
	int max_bracket_letters = 4; // brackets of at most this many letters...
	int terms_per_degree = 2;
	int high_degree_terms = 1;   // ...except components above that degree, kept sparse
	int max_degree = -1;         // highest nonzero component; -1 means trunc
};

/// Random Lie series with components in degrees [min_degree, max_degree]; each
/// component is a rational combination of left-normed brackets of letters.
TensorSeries random_lie_series(int genus, int trunc, int min_degree, Rng &rng, LieSeriesOptions const &opts = {});
TensorSeries random_lie_series(int genus, int trunc, int min_degree, std::uint64_t seed,
                               LieSeriesOptions const &opts = {});

/// Left-normed bracket [..[[x1,x2],x3],..,xn] of letter codes.
TensorSeries left_normed_bracket(int genus, int trunc, std::span<const int> letters);

} // namespace twistkit
