#pragma once

// Words in the free fundamental group pi generated by alpha_1, beta_1, ..., alpha_g,
// beta_g, and the figure-eight configuration dictionary.

#include "twistkit/tensor.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace twistkit {

/// Generators share the letter encoding of H: alpha_i -> 2(i-1), beta_i -> 2(i-1)+1.
struct Syllable {
	int generator = 0;
	int exponent = 1; // +1 or -1

	friend bool operator==(Syllable, Syllable) = default;
};

/// A freely reduced word; the empty word is the identity.  The product xy traverses
/// x first.
class GroupWord {
public:
	explicit GroupWord(int genus) : genus_(genus) {}
	GroupWord(int genus, std::vector<Syllable> letters);

	static GroupWord generator(int genus, int gen, int exponent = 1);
	static GroupWord alpha(int genus, int i, int exponent = 1) { return generator(genus, 2 * (i - 1), exponent); }
	static GroupWord beta(int genus, int i, int exponent = 1) { return generator(genus, 2 * (i - 1) + 1, exponent); }

	/// "a1 b1 a1^-1 b1^-1", "[a1,b1]", "zeta(2)", or "1".
	static GroupWord parse(std::string_view text, int genus);

	int genus() const { return genus_; }
	std::vector<Syllable> const &letters() const { return letters_; }
	bool is_identity() const { return letters_.empty(); }
	std::size_t length() const { return letters_.size(); }

	GroupWord inverse() const;
	GroupWord power(int m) const;
	/// Exponent sum of each generator, the class [w] in H_1(surface; Z).
	std::vector<int> abelianization() const;
	/// [w] as a degree-1 tensor.
	TensorSeries homology_class(int trunc) const;

	std::string to_string() const;

	friend GroupWord operator*(GroupWord const &x, GroupWord const &y);
	friend bool operator==(GroupWord const &, GroupWord const &) = default;

private:
	int genus_;
	std::vector<Syllable> letters_;
};

/// Free reduction; idempotent.
std::vector<Syllable> freely_reduce(std::vector<Syllable> letters);

/// x y x^{-1} y^{-1}.
GroupWord group_commutator(GroupWord const &x, GroupWord const &y);

/// prod_{i=first}^{last} [alpha_i, beta_i] (identity when last < first).
GroupWord commutator_product(int genus, int first, int last);

/// The boundary loop prod_{i=1}^g [alpha_i, beta_i].
GroupWord boundary_word(int genus);

enum class ConfigKind { I, IIa, IIb, IIIa, IIIb, IVa, IVb };

/// A figure-eight configuration.  For IV-a/IV-b genus = k1 + k2 + h.
struct Configuration {
	ConfigKind kind = ConfigKind::I;
	int genus = 2;
	int h = 0;
	int k1 = 0;
	int k2 = 0;

	static Configuration type_i(int g) { return {ConfigKind::I, g, 0, 0, 0}; }
	static Configuration type_ii_iii(ConfigKind kind, int g, int h) { return {kind, g, h, 0, 0}; }
	static Configuration type_iv(ConfigKind kind, int k1, int k2, int h) { return {kind, k1 + k2 + h, h, k1, k2}; }

	bool separating() const { return kind != ConfigKind::I; }
	bool null_homologous() const { return kind == ConfigKind::IVa || kind == ConfigKind::IVb; }
	/// II-a / II-b with h = 1, where two boundary curves of the neighbourhood coincide.
	bool special_h1() const { return (kind == ConfigKind::IIa || kind == ConfigKind::IIb) && h == 1; }

	/// Throws std::invalid_argument naming the violated parameter range.
	void validate() const;
	std::string name() const;
	/// e.g. "II-a(g=2,h=2)".
	std::string label() const;
};

std::string to_string(ConfigKind kind);
ConfigKind parse_config_kind(std::string_view text);

/// The based loops (x, y) cut out of the figure eight at its double point.
std::pair<GroupWord, GroupWord> config_pair(Configuration const &c);

/// Canonical parameter sets swept by the verification harness.
std::vector<Configuration> default_configurations();
std::vector<Configuration> larger_configurations();
/// II-a and II-b at h = 1 (g = 1).
std::vector<Configuration> special_configurations();

} // namespace twistkit
