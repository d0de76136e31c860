#pragma once

// Magnus expansions as data: per-generator logarithms, valid through a stated degree.

#include "twistkit/group_word.hpp"
#include "twistkit/symplectic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace twistkit {

/// Thrown when a computation would read expansion data beyond the degree through
/// which the table is authoritative.
class UnspecifiedDegree : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// log(theta(generator)) for every generator.  Components above valid_degree are
/// unspecified; the stored series carry trunc == valid_degree.
class ExpansionTable {
public:
	/// Validates the Magnus condition: the degree-1 part of log(theta(alpha_i)) is A_i,
	/// of log(theta(beta_i)) is B_i, and every log has zero constant term.
	ExpansionTable(std::string id, int valid_degree, std::vector<TensorSeries> logs);

	std::string const &id() const { return id_; }
	int genus() const { return genus_; }
	int valid_degree() const { return valid_degree_; }
	TensorSeries const &log_of(int generator) const { return logs_.at(static_cast<std::size_t>(generator)); }
	std::vector<TensorSeries> const &logs() const { return logs_; }

	/// Per-generator exp(+log) and exp(-log) at the given truncation.
	TensorSeries generator_value(int generator, int exponent, int trunc) const;

	friend bool operator==(ExpansionTable const &, ExpansionTable const &) = default;

private:
	std::string id_;
	int genus_;
	int valid_degree_;
	std::vector<TensorSeries> logs_;
};

/// The low-degree symplectic expansion known modulo T_4 (valid_degree 3).
ExpansionTable massuyeau_expansion(int genus);

/// theta(w): ordered product over syllables of exp(+-log(generator)), truncated at
/// trunc.  Throws UnspecifiedDegree when trunc > valid_degree.
TensorSeries evaluate(ExpansionTable const &t, GroupWord const &w, int trunc);
/// log(theta(w)).
TensorSeries expansion_log(ExpansionTable const &t, GroupWord const &w, int trunc);

enum class BoundaryStatus { Holds, Fails, Unverifiable };
std::string to_string(BoundaryStatus s);

struct BoundaryCheck {
	BoundaryStatus status;
	int claim_degree;
	/// Lowest degree where theta(zeta) and exp(omega) differ (Fails only).
	std::optional<int> first_mismatch;
};

/// Compares theta(zeta) with exp(omega) through degree `claim`.
BoundaryCheck check_boundary(ExpansionTable const &t, int claim);

/// log'(gen) = U(log(gen)); U must preserve omega and act trivially on H.
ExpansionTable perturb_expansion(ExpansionTable const &t, Automorphism const &u);

/// The same low-degree data extended by random Lie components in degrees
/// valid_degree+1 .. trunc, yielding a table that is exact through trunc.  Used as a
/// full-precision stand-in when validating degree-local identities.
ExpansionTable synthetic_extension(ExpansionTable const &t, int trunc, std::uint64_t seed);

/// {genus, valid_degree, id, entries:[{gen, terms:[{word, coeff}]}]}.
std::string expansion_to_json(ExpansionTable const &t);
ExpansionTable expansion_from_json(std::string const &text);

std::string generator_name(int generator);
int parse_generator_name(std::string_view text);

} // namespace twistkit
