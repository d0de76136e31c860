#pragma once

// Sparse elements of the degree-truncated tensor algebra on H = H_1(surface; Q).
//
// A basis of H is A1, B1, ..., Ag, Bg.  Letters are encoded as the integers
// 0..2g-1 in exactly that order (A_i -> 2(i-1), B_i -> 2(i-1)+1), and words
// are compared by (degree, lexicographic letter sequence).

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace twistkit {

using Scalar = mpq_class;

inline constexpr int kDefaultTrunc = 8;
inline constexpr int kMaxGenus = 8;
inline constexpr int kMaxDegree = 16;

/// Operands live in different algebras (genus or truncation mismatch).
class StructuralError : public std::invalid_argument {
public:
	using std::invalid_argument::invalid_argument;
};

/// An operation was applied outside its domain (e.g. log of a series with constant
/// term other than 1).
class DomainError : public std::domain_error {
public:
	using std::domain_error::domain_error;
};

/// A requested degree lies outside the retained window.
class DegreeError : public std::out_of_range {
public:
	using std::out_of_range::out_of_range;
};

struct Letter {
	enum class Kind : std::uint8_t { A, B };

	Kind kind = Kind::A;
	int index = 1; // 1-based handle number

	constexpr int code() const { return 2 * (index - 1) + (kind == Kind::B ? 1 : 0); }
	static constexpr Letter from_code(int code)
	{
		return Letter{code % 2 == 0 ? Kind::A : Kind::B, code / 2 + 1};
	}
	static constexpr Letter a(int i) { return Letter{Kind::A, i}; }
	static constexpr Letter b(int i) { return Letter{Kind::B, i}; }

	std::string name() const;
	/// Parses "A3" / "B1".
	static Letter parse(std::string_view text);

	friend constexpr bool operator==(Letter, Letter) = default;
};

/// A monomial X_1 ... X_m.  Letters are packed four bits each, first letter in
/// the most significant position, so that integer order of the packed code is
/// lexicographic order among words of equal degree.
class Word {
public:
	constexpr Word() = default;
	Word(std::initializer_list<int> codes);
	explicit Word(std::span<const int> codes);

	static Word of(std::initializer_list<Letter> letters);
	/// Parses "A1*B1*A1" (or "1" for the empty word).
	static Word parse(std::string_view text);

	constexpr int degree() const { return length_; }
	constexpr bool empty() const { return length_ == 0; }
	int at(int i) const { return static_cast<int>((code_ >> (4 * (length_ - 1 - i))) & 0xF); }
	std::vector<int> letters() const;

	Word concat(Word rhs) const;
	/// Cyclic rotation that brings the letter at position i to the front.
	Word rotate(int i) const;
	Word prefix(int n) const;
	Word suffix_from(int i) const;
	int max_letter() const;

	std::string to_string() const;

	constexpr std::uint64_t packed() const { return code_; }

	friend constexpr bool operator==(Word, Word) = default;
	friend constexpr std::strong_ordering operator<=>(Word a, Word b)
	{
		if (auto c = a.length_ <=> b.length_; c != 0)
			return c;
		return a.code_ <=> b.code_;
	}

private:
	constexpr Word(std::uint64_t code, int length) : code_(code), length_(static_cast<std::uint8_t>(length)) {}

	std::uint64_t code_ = 0;
	std::uint8_t length_ = 0;
};

struct WordHash {
	std::size_t operator()(Word w) const noexcept
	{
		return static_cast<std::size_t>((w.packed() * 0x9E3779B97F4A7C15ULL) ^ static_cast<std::uint64_t>(w.degree()));
	}
};

/// Canonical rendering of a rational: "p" for integers, "p/q" otherwise.
std::string to_string(Scalar const &q);
Scalar parse_scalar(std::string_view text);

/// An element of T / T_{trunc+1}.  Values are immutable; all arithmetic returns new
/// series.  Stored terms are sorted canonically and never carry a zero coefficient,
/// so structural equality is mathematical equality.
class TensorSeries {
public:
	using Term = std::pair<Word, Scalar>;

	/// The zero series in genus 1 truncated at 0; placeholder for result structs.
	TensorSeries() : TensorSeries(1, 0) {}
	explicit TensorSeries(int genus, int trunc = kDefaultTrunc);

	/// Builds from arbitrary terms: duplicates are summed, zeros and words of degree
	/// above trunc are dropped.
	static TensorSeries from_terms(int genus, int trunc, std::vector<Term> terms);
	static TensorSeries constant(int genus, int trunc, Scalar c);
	static TensorSeries unit(int genus, int trunc) { return constant(genus, trunc, 1); }
	static TensorSeries monomial(int genus, int trunc, Word w, Scalar c = 1);
	static TensorSeries letter(int genus, int trunc, Letter x) { return monomial(genus, trunc, Word{x.code()}); }

	int genus() const { return genus_; }
	int trunc() const { return trunc_; }
	std::span<const Term> terms() const { return terms_; }
	std::size_t size() const { return terms_.size(); }
	bool is_zero() const { return terms_.empty(); }

	Scalar coefficient(Word w) const;
	Scalar constant_term() const { return coefficient(Word{}); }
	TensorSeries degree_part(int m) const;
	/// Projection onto degrees <= d (d <= trunc), keeping the window at trunc.
	TensorSeries truncate(int d) const;
	/// Same terms in the algebra truncated at d.  Lowering discards degrees > d;
	/// raising embeds the polynomial unchanged.
	TensorSeries with_trunc(int d) const;
	/// -1 for the zero series.
	int min_degree() const;
	int max_degree() const;

	TensorSeries operator-() const;
	TensorSeries &operator+=(TensorSeries const &rhs);
	TensorSeries &operator-=(TensorSeries const &rhs);
	TensorSeries &operator*=(Scalar const &c);

	friend TensorSeries operator+(TensorSeries a, TensorSeries const &b) { return a += b; }
	friend TensorSeries operator-(TensorSeries a, TensorSeries const &b) { return a -= b; }
	friend TensorSeries operator*(TensorSeries const &a, TensorSeries const &b) { return multiply(a, b, a.trunc()); }
	friend TensorSeries operator*(Scalar const &c, TensorSeries a) { return a *= c; }
	friend TensorSeries operator*(TensorSeries a, Scalar const &c) { return a *= c; }

	/// Product with every output degree above max_degree discarded.
	static TensorSeries multiply(TensorSeries const &a, TensorSeries const &b, int max_degree);

	friend bool operator==(TensorSeries const &a, TensorSeries const &b);

	/// Terms sorted by (degree, word), e.g. "1 + A1*B1 - B1*A1".
	std::string to_string() const;
	/// Inverse of to_string; also accepts unsorted and repeated terms.
	static TensorSeries parse(std::string_view text, int genus, int trunc = kDefaultTrunc);

	void require_compatible(TensorSeries const &other, char const *op) const;

private:
	TensorSeries(int genus, int trunc, std::vector<Term> sorted_terms);

	int genus_;
	int trunc_;
	std::vector<Term> terms_;
};

TensorSeries commutator(TensorSeries const &a, TensorSeries const &b);

/// "[genus g, trunc T] <to_string>".
std::ostream &operator<<(std::ostream &os, TensorSeries const &u);

/// Linear map applied word-by-word: out += c * f(w) for each term (w, c).
template <class F> TensorSeries map_words(TensorSeries const &u, F &&f)
{
	std::vector<TensorSeries::Term> out;
	for (auto const &[w, c] : u.terms())
		f(w, c, out);
	return TensorSeries::from_terms(u.genus(), u.trunc(), std::move(out));
}

} // namespace twistkit
