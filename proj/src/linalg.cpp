#include "twistkit/linalg.hpp"

namespace twistkit {

int rank(RationalMatrix m)
{
	int r = 0;
	std::size_t const rows = m.size();
	std::size_t const cols = rows ? m[0].size() : 0;
	for (std::size_t c = 0; c < cols && r < static_cast<int>(rows); ++c) {
		std::size_t piv = static_cast<std::size_t>(r);
		while (piv < rows && sgn(m[piv][c]) == 0)
			++piv;
		if (piv == rows)
			continue;
		std::swap(m[piv], m[static_cast<std::size_t>(r)]);
		auto const &prow = m[static_cast<std::size_t>(r)];
		for (std::size_t i = static_cast<std::size_t>(r) + 1; i < rows; ++i) {
			if (sgn(m[i][c]) == 0)
				continue;
			Scalar const f = m[i][c] / prow[c];
			for (std::size_t k = c; k < cols; ++k)
				m[i][k] -= f * prow[k];
		}
		++r;
	}
	return r;
}

RationalMatrix invert(RationalMatrix m)
{
	std::size_t const n = m.size();
	RationalMatrix inv(n, std::vector<Scalar>(n, 0));
	for (std::size_t i = 0; i < n; ++i)
		inv[i][i] = 1;
	for (std::size_t c = 0; c < n; ++c) {
		std::size_t piv = c;
		while (piv < n && sgn(m[piv][c]) == 0)
			++piv;
		if (piv == n)
			throw DomainError("matrix is singular");
		std::swap(m[piv], m[c]);
		std::swap(inv[piv], inv[c]);
		Scalar const p = m[c][c];
		for (std::size_t k = 0; k < n; ++k) {
			m[c][k] /= p;
			inv[c][k] /= p;
		}
		for (std::size_t i = 0; i < n; ++i) {
			if (i == c || sgn(m[i][c]) == 0)
				continue;
			Scalar const f = m[i][c];
			for (std::size_t k = 0; k < n; ++k) {
				m[i][k] -= f * m[c][k];
				inv[i][k] -= f * inv[c][k];
			}
		}
	}
	return inv;
}

LinearSolution solve(RationalMatrix a, std::vector<Scalar> b)
{
	if (a.size() != b.size())
		throw std::invalid_argument("solve: row count mismatch");
	std::size_t const rows = a.size();
	std::size_t const cols = rows ? a[0].size() : 0;
	for (std::size_t i = 0; i < rows; ++i)
		a[i].push_back(b[i]);
	std::vector<std::size_t> pivots;
	std::size_t r = 0;
	for (std::size_t c = 0; c < cols && r < rows; ++c) {
		std::size_t piv = r;
		while (piv < rows && sgn(a[piv][c]) == 0)
			++piv;
		if (piv == rows)
			continue;
		std::swap(a[piv], a[r]);
		Scalar const p = a[r][c];
		for (auto &x : a[r])
			x /= p;
		for (std::size_t i = 0; i < rows; ++i) {
			if (i == r || sgn(a[i][c]) == 0)
				continue;
			Scalar const f = a[i][c];
			for (std::size_t k = c; k <= cols; ++k)
				a[i][k] -= f * a[r][k];
		}
		pivots.push_back(c);
		++r;
	}
	LinearSolution out;
	out.consistent = true;
	for (std::size_t i = r; i < rows; ++i)
		if (sgn(a[i][cols]) != 0)
			out.consistent = false;
	for (std::size_t i = 0; i < rows; ++i) {
		bool nonzero = false;
		for (auto const &x : a[i])
			nonzero = nonzero || sgn(x) != 0;
		if (nonzero)
			out.reduced.push_back(a[i]);
	}
	if (!out.consistent)
		return out;
	out.particular.assign(cols, 0);
	for (std::size_t i = 0; i < pivots.size(); ++i)
		out.particular[pivots[i]] = a[i][cols];
	std::vector<bool> is_pivot(cols, false);
	for (auto p : pivots)
		is_pivot[p] = true;
	for (std::size_t f = 0; f < cols; ++f) {
		if (is_pivot[f])
			continue;
		std::vector<Scalar> v(cols, 0);
		v[f] = 1;
		for (std::size_t i = 0; i < pivots.size(); ++i)
			v[pivots[i]] = -a[i][f];
		out.nullspace.push_back(std::move(v));
	}
	return out;
}

} // namespace twistkit
