#include "twistkit/tensor.hpp"

#include <cctype>

#include <algorithm>
#include <charconv>
#include <ostream>
#include <unordered_map>

namespace twistkit {

std::string Letter::name() const
{
	return (kind == Kind::A ? "A" : "B") + std::to_string(index);
}

Letter Letter::parse(std::string_view text)
{
	if (text.size() < 2 || (text[0] != 'A' && text[0] != 'B'))
		throw std::invalid_argument("bad letter name '" + std::string(text) + "'");
	int index = 0;
	auto [p, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), index);
	if (ec != std::errc{} || p != text.data() + text.size() || index < 1)
		throw std::invalid_argument("bad letter name '" + std::string(text) + "'");
	return Letter{text[0] == 'A' ? Kind::A : Kind::B, index};
}

Word::Word(std::initializer_list<int> codes) : Word(std::span<const int>(codes.begin(), codes.size())) {}

Word::Word(std::span<const int> codes)
{
	if (codes.size() > static_cast<std::size_t>(kMaxDegree))
		throw DegreeError("word longer than " + std::to_string(kMaxDegree));
	for (int c : codes) {
		if (c < 0 || c >= 2 * kMaxGenus)
			throw std::invalid_argument("letter code out of range: " + std::to_string(c));
		code_ = (code_ << 4) | static_cast<std::uint64_t>(c);
	}
	length_ = static_cast<std::uint8_t>(codes.size());
}

Word Word::of(std::initializer_list<Letter> letters)
{
	std::vector<int> codes;
	for (auto x : letters)
		codes.push_back(x.code());
	return Word(std::span<const int>(codes));
}

Word Word::parse(std::string_view text)
{
	if (text == "1" || text.empty())
		return Word{};
	std::vector<int> codes;
	std::size_t pos = 0;
	while (pos <= text.size()) {
		auto next = text.find('*', pos);
		if (next == std::string_view::npos)
			next = text.size();
		codes.push_back(Letter::parse(text.substr(pos, next - pos)).code());
		pos = next + 1;
	}
	return Word(std::span<const int>(codes));
}

std::vector<int> Word::letters() const
{
	std::vector<int> out(length_);
	for (int i = 0; i < length_; ++i)
		out[i] = at(i);
	return out;
}

Word Word::concat(Word rhs) const
{
	int const len = length_ + rhs.length_;
	if (len > kMaxDegree)
		throw DegreeError("word longer than " + std::to_string(kMaxDegree));
	std::uint64_t const shifted = rhs.length_ == 16 ? 0 : (code_ << (4 * rhs.length_));
	return Word(shifted | rhs.code_, len);
}

Word Word::prefix(int n) const
{
	return Word(code_ >> (4 * (length_ - n)), n);
}

Word Word::suffix_from(int i) const
{
	int const n = length_ - i;
	std::uint64_t const mask = n == 16 ? ~0ULL : ((1ULL << (4 * n)) - 1);
	return Word(code_ & mask, n);
}

Word Word::rotate(int i) const
{
	if (i == 0)
		return *this;
	return suffix_from(i).concat(prefix(i));
}

int Word::max_letter() const
{
	int m = -1;
	for (int i = 0; i < length_; ++i)
		m = std::max(m, at(i));
	return m;
}

std::string Word::to_string() const
{
	if (length_ == 0)
		return "1";
	std::string s;
	for (int i = 0; i < length_; ++i) {
		if (i)
			s += '*';
		s += Letter::from_code(at(i)).name();
	}
	return s;
}

std::string to_string(Scalar const &q)
{
	Scalar c = q;
	c.canonicalize();
	return c.get_str();
}

Scalar parse_scalar(std::string_view text)
{
	Scalar q;
	if (q.set_str(std::string(text), 10) != 0)
		throw std::invalid_argument("bad rational '" + std::string(text) + "'");
	q.canonicalize();
	return q;
}

namespace {

void check_window(int genus, int trunc)
{
	if (genus < 1 || genus > kMaxGenus)
		throw StructuralError("genus must lie in 1.." + std::to_string(kMaxGenus));
	if (trunc < 0 || trunc > kMaxDegree)
		throw StructuralError("truncation degree must lie in 0.." + std::to_string(kMaxDegree));
}

bool term_less(TensorSeries::Term const &a, TensorSeries::Term const &b)
{
	return a.first < b.first;
}

} // namespace

TensorSeries::TensorSeries(int genus, int trunc) : genus_(genus), trunc_(trunc)
{
	check_window(genus, trunc);
}

TensorSeries::TensorSeries(int genus, int trunc, std::vector<Term> sorted_terms)
    : genus_(genus), trunc_(trunc), terms_(std::move(sorted_terms))
{
}

TensorSeries TensorSeries::from_terms(int genus, int trunc, std::vector<Term> terms)
{
	check_window(genus, trunc);
	for (auto &t : terms) {
		if (t.first.max_letter() >= 2 * genus)
			throw StructuralError("word " + t.first.to_string() + " uses a letter outside genus " +
			                      std::to_string(genus));
		t.second.canonicalize();
	}
	std::sort(terms.begin(), terms.end(), term_less);
	std::vector<Term> out;
	out.reserve(terms.size());
	for (auto &t : terms) {
		if (t.first.degree() > trunc)
			continue;
		if (!out.empty() && out.back().first == t.first)
			out.back().second += t.second;
		else {
			if (!out.empty() && sgn(out.back().second) == 0)
				out.pop_back();
			out.push_back(std::move(t));
		}
	}
	if (!out.empty() && sgn(out.back().second) == 0)
		out.pop_back();
	return TensorSeries(genus, trunc, std::move(out));
}

TensorSeries TensorSeries::constant(int genus, int trunc, Scalar c)
{
	return monomial(genus, trunc, Word{}, std::move(c));
}

TensorSeries TensorSeries::monomial(int genus, int trunc, Word w, Scalar c)
{
	std::vector<Term> t;
	t.emplace_back(w, std::move(c));
	return from_terms(genus, trunc, std::move(t));
}

Scalar TensorSeries::coefficient(Word w) const
{
	auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{w, 0}, term_less);
	if (it != terms_.end() && it->first == w)
		return it->second;
	return 0;
}

TensorSeries TensorSeries::degree_part(int m) const
{
	if (m < 0 || m > trunc_)
		throw DegreeError("degree " + std::to_string(m) + " outside 0.." + std::to_string(trunc_));
	std::vector<Term> out;
	for (auto const &t : terms_)
		if (t.first.degree() == m)
			out.push_back(t);
	return TensorSeries(genus_, trunc_, std::move(out));
}

TensorSeries TensorSeries::truncate(int d) const
{
	if (d < 0 || d > trunc_)
		throw DegreeError("truncation " + std::to_string(d) + " outside 0.." + std::to_string(trunc_));
	std::vector<Term> out;
	for (auto const &t : terms_)
		if (t.first.degree() <= d)
			out.push_back(t);
	return TensorSeries(genus_, trunc_, std::move(out));
}

TensorSeries TensorSeries::with_trunc(int d) const
{
	check_window(genus_, d);
	std::vector<Term> out;
	for (auto const &t : terms_)
		if (t.first.degree() <= d)
			out.push_back(t);
	return TensorSeries(genus_, d, std::move(out));
}

int TensorSeries::min_degree() const
{
	return terms_.empty() ? -1 : terms_.front().first.degree();
}

int TensorSeries::max_degree() const
{
	return terms_.empty() ? -1 : terms_.back().first.degree();
}

void TensorSeries::require_compatible(TensorSeries const &other, char const *op) const
{
	if (genus_ != other.genus_ || trunc_ != other.trunc_)
		throw StructuralError(std::string(op) + ": operands live in different algebras (genus " +
		                      std::to_string(genus_) + "/" + std::to_string(other.genus_) + ", trunc " +
		                      std::to_string(trunc_) + "/" + std::to_string(other.trunc_) + ")");
}

TensorSeries TensorSeries::operator-() const
{
	TensorSeries r = *this;
	for (auto &t : r.terms_)
		t.second = -t.second;
	return r;
}

namespace {

std::vector<TensorSeries::Term> merge(std::span<const TensorSeries::Term> a, std::span<const TensorSeries::Term> b,
                                      int sign)
{
	std::vector<TensorSeries::Term> out;
	out.reserve(a.size() + b.size());
	std::size_t i = 0, j = 0;
	while (i < a.size() || j < b.size()) {
		if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
			out.push_back(a[i++]);
		} else if (i == a.size() || b[j].first < a[i].first) {
			out.emplace_back(b[j].first, sign > 0 ? b[j].second : Scalar(-b[j].second));
			++j;
		} else {
			Scalar s = sign > 0 ? Scalar(a[i].second + b[j].second) : Scalar(a[i].second - b[j].second);
			if (sgn(s) != 0)
				out.emplace_back(a[i].first, std::move(s));
			++i;
			++j;
		}
	}
	return out;
}

} // namespace

TensorSeries &TensorSeries::operator+=(TensorSeries const &rhs)
{
	require_compatible(rhs, "add");
	terms_ = merge(terms_, rhs.terms_, +1);
	return *this;
}

TensorSeries &TensorSeries::operator-=(TensorSeries const &rhs)
{
	require_compatible(rhs, "sub");
	terms_ = merge(terms_, rhs.terms_, -1);
	return *this;
}

TensorSeries &TensorSeries::operator*=(Scalar const &c)
{
	if (sgn(c) == 0) {
		terms_.clear();
		return *this;
	}
	for (auto &t : terms_)
		t.second *= c;
	return *this;
}

TensorSeries TensorSeries::multiply(TensorSeries const &a, TensorSeries const &b, int max_degree)
{
	a.require_compatible(b, "mul");
	max_degree = std::min(max_degree, a.trunc_);
	std::unordered_map<Word, Scalar, WordHash> acc;
	acc.reserve(a.terms_.size() + b.terms_.size());
	mpq_class prod;
	for (auto const &[wa, ca] : a.terms_) {
		int const room = max_degree - wa.degree();
		if (room < 0)
			break; // terms are sorted by degree
		for (auto const &[wb, cb] : b.terms_) {
			if (wb.degree() > room)
				break;
			mpq_mul(prod.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
			auto [it, inserted] = acc.try_emplace(wa.concat(wb));
			if (inserted)
				it->second.swap(prod);
			else
				mpq_add(it->second.get_mpq_t(), it->second.get_mpq_t(), prod.get_mpq_t());
		}
	}
	std::vector<Term> out;
	out.reserve(acc.size());
	for (auto &[w, c] : acc)
		if (sgn(c) != 0)
			out.emplace_back(w, std::move(c));
	std::sort(out.begin(), out.end(), term_less);
	return TensorSeries(a.genus_, a.trunc_, std::move(out));
}

bool operator==(TensorSeries const &a, TensorSeries const &b)
{
	return a.genus_ == b.genus_ && a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
}

std::string TensorSeries::to_string() const
{
	if (terms_.empty())
		return "0";
	std::string s;
	bool first = true;
	for (auto const &[w, c] : terms_) {
		bool const negative = sgn(c) < 0;
		Scalar const mag = abs(c);
		if (first)
			s += negative ? "-" : "";
		else
			s += negative ? " - " : " + ";
		first = false;
		if (w.empty())
			s += twistkit::to_string(mag);
		else if (mag == 1)
			s += w.to_string();
		else
			s += twistkit::to_string(mag) + "*" + w.to_string();
	}
	return s;
}

TensorSeries TensorSeries::parse(std::string_view text, int genus, int trunc)
{
	std::string compact;
	for (char ch : text)
		if (ch != ' ')
			compact += ch;
	if (compact.empty())
		throw std::invalid_argument("empty series text");
	std::vector<Term> terms;
	std::size_t pos = 0;
	while (pos < compact.size()) {
		int sign = 1;
		if (compact[pos] == '+' || compact[pos] == '-') {
			sign = compact[pos] == '-' ? -1 : 1;
			++pos;
		} else if (pos != 0) {
			throw std::invalid_argument("bad series text '" + std::string(text) + "'");
		}
		std::size_t end = compact.find_first_of("+-", pos);
		std::string term = compact.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
		pos = end == std::string::npos ? compact.size() : end;
		if (term.empty())
			throw std::invalid_argument("bad series text '" + std::string(text) + "'");
		Scalar c = 1;
		std::string word = term;
		if (std::isdigit(static_cast<unsigned char>(term[0]))) {
			auto const star = term.find('*');
			c = parse_scalar(term.substr(0, star));
			word = star == std::string::npos ? "1" : term.substr(star + 1);
		}
		terms.emplace_back(Word::parse(word), sign * c);
	}
	return from_terms(genus, trunc, std::move(terms));
}

TensorSeries commutator(TensorSeries const &a, TensorSeries const &b)
{
	a.require_compatible(b, "commutator");
	return a * b - b * a;
}

std::ostream &operator<<(std::ostream &os, TensorSeries const &u)
{
	return os << "[genus " << u.genus() << ", trunc " << u.trunc() << "] " << u.to_string();
}

} // namespace twistkit
