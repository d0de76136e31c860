#include "twistkit/group_word.hpp"

#include <cctype>
#include <stdexcept>

namespace twistkit {

std::vector<Syllable> freely_reduce(std::vector<Syllable> letters)
{
	std::vector<Syllable> out;
	out.reserve(letters.size());
	for (auto s : letters) {
		if (!out.empty() && out.back().generator == s.generator && out.back().exponent == -s.exponent)
			out.pop_back();
		else
			out.push_back(s);
	}
	return out;
}

GroupWord::GroupWord(int genus, std::vector<Syllable> letters) : genus_(genus)
{
	if (genus < 1 || genus > kMaxGenus)
		throw StructuralError("genus must lie in 1.." + std::to_string(kMaxGenus));
	for (auto s : letters) {
		if (s.generator < 0 || s.generator >= 2 * genus)
			throw StructuralError("generator outside genus " + std::to_string(genus));
		if (s.exponent != 1 && s.exponent != -1)
			throw std::invalid_argument("syllable exponent must be +1 or -1");
	}
	letters_ = freely_reduce(std::move(letters));
}

GroupWord GroupWord::generator(int genus, int gen, int exponent)
{
	return GroupWord(genus, {Syllable{gen, exponent}});
}

GroupWord GroupWord::inverse() const
{
	std::vector<Syllable> out(letters_.rbegin(), letters_.rend());
	for (auto &s : out)
		s.exponent = -s.exponent;
	return GroupWord(genus_, std::move(out));
}

GroupWord GroupWord::power(int m) const
{
	GroupWord base = m < 0 ? inverse() : *this;
	GroupWord out(genus_);
	for (int k = 0; k < (m < 0 ? -m : m); ++k)
		out = out * base;
	return out;
}

GroupWord operator*(GroupWord const &x, GroupWord const &y)
{
	if (x.genus_ != y.genus_)
		throw StructuralError("concat: words of different genus");
	std::vector<Syllable> all = x.letters_;
	all.insert(all.end(), y.letters_.begin(), y.letters_.end());
	return GroupWord(x.genus_, std::move(all));
}

std::vector<int> GroupWord::abelianization() const
{
	std::vector<int> v(static_cast<std::size_t>(2 * genus_), 0);
	for (auto s : letters_)
		v[static_cast<std::size_t>(s.generator)] += s.exponent;
	return v;
}

TensorSeries GroupWord::homology_class(int trunc) const
{
	std::vector<TensorSeries::Term> t;
	auto const v = abelianization();
	for (std::size_t i = 0; i < v.size(); ++i)
		t.emplace_back(Word{static_cast<int>(i)}, v[i]);
	return TensorSeries::from_terms(genus_, trunc, std::move(t));
}

std::string GroupWord::to_string() const
{
	if (letters_.empty())
		return "1";
	std::string s;
	for (auto l : letters_) {
		if (!s.empty())
			s += ' ';
		s += (l.generator % 2 == 0 ? "a" : "b") + std::to_string(l.generator / 2 + 1);
		if (l.exponent < 0)
			s += "^-1";
	}
	return s;
}

GroupWord group_commutator(GroupWord const &x, GroupWord const &y)
{
	return x * y * x.inverse() * y.inverse();
}

GroupWord commutator_product(int genus, int first, int last)
{
	GroupWord out(genus);
	for (int i = first; i <= last; ++i)
		out = out * group_commutator(GroupWord::alpha(genus, i), GroupWord::beta(genus, i));
	return out;
}

GroupWord boundary_word(int genus)
{
	return commutator_product(genus, 1, genus);
}

// ---------------------------------------------------------------------------
// parser

namespace {

class WordParser {
public:
	WordParser(std::string_view text, int genus) : text_(text), genus_(genus) {}

	GroupWord parse()
	{
		auto w = word();
		skip();
		if (pos_ != text_.size())
			fail("unexpected '" + std::string(1, text_[pos_]) + "'");
		return w;
	}

private:
	[[noreturn]] void fail(std::string const &msg) const
	{
		throw std::invalid_argument("group word parse error at offset " + std::to_string(pos_) + ": " + msg);
	}

	void skip()
	{
		while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
			++pos_;
	}

	bool peek(char c)
	{
		skip();
		return pos_ < text_.size() && text_[pos_] == c;
	}

	void expect(char c)
	{
		if (!peek(c))
			fail(std::string("expected '") + c + "'");
		++pos_;
	}

	int integer()
	{
		skip();
		bool neg = false;
		if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+'))
			neg = text_[pos_++] == '-';
		std::size_t start = pos_;
		while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
			++pos_;
		if (start == pos_)
			fail("expected integer");
		int v = std::stoi(std::string(text_.substr(start, pos_ - start)));
		return neg ? -v : v;
	}

	bool at_factor_start()
	{
		skip();
		if (pos_ >= text_.size())
			return false;
		char c = text_[pos_];
		return c == 'a' || c == 'b' || c == '[' || c == '(' || c == 'z' || c == '1';
	}

	GroupWord word()
	{
		GroupWord w(genus_);
		while (at_factor_start())
			w = w * factor();
		return w;
	}

	GroupWord factor()
	{
		auto base = atom();
		if (peek('^')) {
			++pos_;
			return base.power(integer());
		}
		return base;
	}

	GroupWord atom()
	{
		skip();
		char c = text_[pos_];
		if (c == '[') {
			++pos_;
			auto x = word();
			expect(',');
			auto y = word();
			expect(']');
			return group_commutator(x, y);
		}
		if (c == '(') {
			++pos_;
			auto x = word();
			expect(')');
			return x;
		}
		if (c == '1') {
			++pos_;
			return GroupWord(genus_);
		}
		if (text_.substr(pos_, 5) == "zeta(") {
			pos_ += 5;
			int g = integer();
			expect(')');
			if (g != genus_)
				fail("zeta(" + std::to_string(g) + ") in a genus-" + std::to_string(genus_) + " word");
			return boundary_word(genus_);
		}
		if (c == 'a' || c == 'b') {
			++pos_;
			std::size_t start = pos_;
			while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
				++pos_;
			if (start == pos_)
				fail("generator index missing");
			int i = std::stoi(std::string(text_.substr(start, pos_ - start)));
			if (i < 1 || i > genus_)
				fail("generator index " + std::to_string(i) + " outside 1.." + std::to_string(genus_));
			return c == 'a' ? GroupWord::alpha(genus_, i) : GroupWord::beta(genus_, i);
		}
		fail("unexpected character");
	}

	std::string_view text_;
	int genus_;
	std::size_t pos_ = 0;
};

} // namespace

GroupWord GroupWord::parse(std::string_view text, int genus)
{
	return WordParser(text, genus).parse();
}

// ---------------------------------------------------------------------------
// configurations

std::string to_string(ConfigKind kind)
{
	switch (kind) {
	case ConfigKind::I: return "I";
	case ConfigKind::IIa: return "II-a";
	case ConfigKind::IIb: return "II-b";
	case ConfigKind::IIIa: return "III-a";
	case ConfigKind::IIIb: return "III-b";
	case ConfigKind::IVa: return "IV-a";
	case ConfigKind::IVb: return "IV-b";
	}
	return "?";
}

ConfigKind parse_config_kind(std::string_view text)
{
	for (auto k : {ConfigKind::I, ConfigKind::IIa, ConfigKind::IIb, ConfigKind::IIIa, ConfigKind::IIIb,
	               ConfigKind::IVa, ConfigKind::IVb})
		if (to_string(k) == text)
			return k;
	throw std::invalid_argument("unknown configuration '" + std::string(text) + "'");
}

std::string Configuration::name() const
{
	return twistkit::to_string(kind);
}

std::string Configuration::label() const
{
	std::string s = name() + "(g=" + std::to_string(genus);
	switch (kind) {
	case ConfigKind::I: break;
	case ConfigKind::IVa:
	case ConfigKind::IVb:
		s += ",k1=" + std::to_string(k1) + ",k2=" + std::to_string(k2) + ",h=" + std::to_string(h);
		break;
	default: s += ",h=" + std::to_string(h);
	}
	return s + ")";
}

void Configuration::validate() const
{
	auto bad = [&](std::string const &why) { throw std::invalid_argument(label() + ": " + why); };
	if (genus < 1 || genus > kMaxGenus)
		bad("genus must lie in 1.." + std::to_string(kMaxGenus));
	switch (kind) {
	case ConfigKind::I:
		if (genus < 2)
			bad("case I requires g >= 2");
		break;
	case ConfigKind::IIa:
	case ConfigKind::IIb:
		if (h < 1 || h > genus)
			bad("requires 1 <= h <= g");
		break;
	case ConfigKind::IIIa:
	case ConfigKind::IIIb:
		if (h < 2 || h > genus)
			bad("requires 2 <= h <= g");
		break;
	case ConfigKind::IVa:
	case ConfigKind::IVb:
		if (k1 < 1 || k2 < 1)
			bad("requires k1 >= 1 and k2 >= 1");
		if (h < 0)
			bad("requires h >= 0");
		if (k1 + k2 + h != genus)
			bad("requires k1 + k2 + h = g");
		break;
	}
}

std::pair<GroupWord, GroupWord> config_pair(Configuration const &c)
{
	c.validate();
	int const g = c.genus, h = c.h;
	auto x_sep = [&] { return commutator_product(g, 1, h) * GroupWord::beta(g, h); };
	switch (c.kind) {
	case ConfigKind::I: return {GroupWord::alpha(g, 1), GroupWord::alpha(g, 2)};
	case ConfigKind::IIa: return {x_sep(), GroupWord::beta(g, h, -1)};
	case ConfigKind::IIb: return {x_sep(), commutator_product(g, 1, h).inverse()};
	case ConfigKind::IIIa:
		return {x_sep(), GroupWord::alpha(g, h) * GroupWord::beta(g, h, -1) * GroupWord::alpha(g, h, -1)};
	case ConfigKind::IIIb: return {x_sep(), commutator_product(g, 1, h - 1).inverse()};
	case ConfigKind::IVa: return {commutator_product(g, 1, c.k1), commutator_product(g, c.k1 + 1, c.k1 + c.k2)};
	case ConfigKind::IVb: return {commutator_product(g, 1, c.k1), commutator_product(g, 1, c.k1 + c.k2).inverse()};
	}
	throw std::logic_error("unreachable");
}

std::vector<Configuration> default_configurations()
{
	using K = ConfigKind;
	return {Configuration::type_i(2),
	        Configuration::type_ii_iii(K::IIa, 2, 2),
	        Configuration::type_ii_iii(K::IIb, 2, 2),
	        Configuration::type_ii_iii(K::IIIa, 2, 2),
	        Configuration::type_ii_iii(K::IIIb, 2, 2),
	        Configuration::type_iv(K::IVa, 1, 1, 0),
	        Configuration::type_iv(K::IVb, 1, 1, 0)};
}

std::vector<Configuration> larger_configurations()
{
	using K = ConfigKind;
	return {Configuration::type_i(3),
	        Configuration::type_ii_iii(K::IIa, 3, 2),
	        Configuration::type_ii_iii(K::IIb, 3, 3),
	        Configuration::type_ii_iii(K::IIIa, 3, 3),
	        Configuration::type_ii_iii(K::IIIb, 3, 2),
	        Configuration::type_iv(K::IVa, 1, 2, 0),
	        Configuration::type_iv(K::IVb, 1, 1, 1)};
}

std::vector<Configuration> special_configurations()
{
	return {Configuration::type_ii_iii(ConfigKind::IIa, 1, 1), Configuration::type_ii_iii(ConfigKind::IIb, 1, 1)};
}

} // namespace twistkit
