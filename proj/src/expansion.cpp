#include "twistkit/expansion.hpp"

#include "twistkit/json_io.hpp"

#include <map>

namespace twistkit {

std::string generator_name(int generator)
{
	return (generator % 2 == 0 ? "a" : "b") + std::to_string(generator / 2 + 1);
}

int parse_generator_name(std::string_view text)
{
	if (text.size() < 2 || (text[0] != 'a' && text[0] != 'b'))
		throw std::invalid_argument("bad generator name '" + std::string(text) + "'");
	int const i = std::stoi(std::string(text.substr(1)));
	if (i < 1)
		throw std::invalid_argument("bad generator name '" + std::string(text) + "'");
	return 2 * (i - 1) + (text[0] == 'b' ? 1 : 0);
}

ExpansionTable::ExpansionTable(std::string id, int valid_degree, std::vector<TensorSeries> logs)
    : id_(std::move(id)), valid_degree_(valid_degree), logs_(std::move(logs))
{
	if (logs_.empty() || logs_.size() % 2 != 0)
		throw StructuralError("expansion table needs one log per generator");
	genus_ = static_cast<int>(logs_.size() / 2);
	if (valid_degree_ < 1)
		throw StructuralError("expansion table valid_degree must be >= 1");
	for (std::size_t gen = 0; gen < logs_.size(); ++gen) {
		auto &l = logs_[gen];
		if (l.genus() != genus_)
			throw StructuralError("expansion table: log of " + generator_name(static_cast<int>(gen)) +
			                      " has the wrong genus");
		l = l.with_trunc(valid_degree_);
		if (sgn(l.constant_term()) != 0)
			throw DomainError("expansion table: log of " + generator_name(static_cast<int>(gen)) +
			                  " has a constant term");
		if (!(l.degree_part(1) == TensorSeries::monomial(genus_, valid_degree_, Word{static_cast<int>(gen)})))
			throw DomainError("expansion table: log of " + generator_name(static_cast<int>(gen)) +
			                  " violates theta(x) = 1 + [x] mod T_2");
	}
}

TensorSeries ExpansionTable::generator_value(int generator, int exponent, int trunc) const
{
	auto l = log_of(generator).with_trunc(trunc);
	return exp(exponent > 0 ? l : -l);
}

ExpansionTable massuyeau_expansion(int genus)
{
	int const trunc = 3;
	auto letter = [&](int code) { return TensorSeries::monomial(genus, trunc, Word{code}); };
	std::vector<TensorSeries> logs;
	for (int i = 1; i <= genus; ++i) {
		auto const a = letter(Letter::a(i).code());
		auto const b = letter(Letter::b(i).code());
		auto const ab = commutator(a, b);
		TensorSeries lower(genus, trunc); // sum_{j<i} [A_j, B_j]
		for (int j = 1; j < i; ++j)
			lower += commutator(letter(Letter::a(j).code()), letter(Letter::b(j).code()));
		logs.push_back(a + Scalar(1, 2) * ab - Scalar(1, 12) * commutator(b, ab) +
		               Scalar(1, 2) * commutator(a, lower));
		logs.push_back(b - Scalar(1, 2) * ab + Scalar(1, 12) * commutator(a, ab) + Scalar(1, 4) * commutator(b, ab) +
		               Scalar(1, 2) * commutator(b, lower));
	}
	return ExpansionTable("builtin:massuyeau", trunc, std::move(logs));
}

namespace {

TensorSeries evaluate_padded(ExpansionTable const &t, GroupWord const &w, int trunc)
{
	if (w.genus() != t.genus())
		throw StructuralError("evaluate: word genus differs from expansion genus");
	std::map<std::pair<int, int>, TensorSeries> cache;
	auto out = TensorSeries::unit(t.genus(), trunc);
	for (auto s : w.letters()) {
		auto key = std::make_pair(s.generator, s.exponent);
		auto it = cache.find(key);
		if (it == cache.end())
			it = cache.emplace(key, t.generator_value(s.generator, s.exponent, trunc)).first;
		out = out * it->second;
	}
	return out;
}

} // namespace

TensorSeries evaluate(ExpansionTable const &t, GroupWord const &w, int trunc)
{
	if (trunc > t.valid_degree())
		throw UnspecifiedDegree("expansion '" + t.id() + "' is only specified through degree " +
		                        std::to_string(t.valid_degree()) + ", requested " + std::to_string(trunc));
	return evaluate_padded(t, w, trunc);
}

TensorSeries expansion_log(ExpansionTable const &t, GroupWord const &w, int trunc)
{
	return log(evaluate(t, w, trunc));
}

std::string to_string(BoundaryStatus s)
{
	switch (s) {
	case BoundaryStatus::Holds: return "holds";
	case BoundaryStatus::Fails: return "fails";
	case BoundaryStatus::Unverifiable: return "unverifiable";
	}
	return "?";
}

BoundaryCheck check_boundary(ExpansionTable const &t, int claim)
{
	// zeta is a product of commutators, so its degree-n value only involves the
	// generator logs through degree n-1: one degree past valid_degree is still
	// determined by the table.
	if (claim > t.valid_degree() + 1 || claim < 0)
		return {BoundaryStatus::Unverifiable, claim, std::nullopt};
	int const g = t.genus();
	auto const lhs = evaluate_padded(t, boundary_word(g), claim);
	auto const rhs = exp(symplectic_form(g, claim));
	for (int n = 0; n <= claim; ++n)
		if (!(lhs.degree_part(n) == rhs.degree_part(n)))
			return {BoundaryStatus::Fails, claim, n};
	return {BoundaryStatus::Holds, claim, std::nullopt};
}

ExpansionTable perturb_expansion(ExpansionTable const &t, Automorphism const &u)
{
	if (u.genus() != t.genus())
		throw StructuralError("perturb_expansion: genus mismatch");
	if (!u.acts_trivially_on_homology() || !preserves_omega(u))
		throw DomainError("perturb_expansion: U must preserve omega and act trivially on H");
	int const d = std::min(t.valid_degree(), u.trunc());
	auto const ud = u.truncated(d);
	std::vector<TensorSeries> logs;
	for (auto const &l : t.logs())
		logs.push_back(ud(l.with_trunc(d)));
	return ExpansionTable(t.id() + "+perturbed", d, std::move(logs));
}

ExpansionTable synthetic_extension(ExpansionTable const &t, int trunc, std::uint64_t seed)
{
	if (trunc <= t.valid_degree())
		return t;
	Rng rng(seed);
	LieSeriesOptions opts;
	opts.terms_per_degree = 1;
	opts.high_degree_terms = 1;
	std::vector<TensorSeries> logs;
	for (auto const &l : t.logs())
		logs.push_back(l.with_trunc(trunc) + random_lie_series(t.genus(), trunc, t.valid_degree() + 1, rng, opts));
	return ExpansionTable(t.id() + "+synthetic(" + std::to_string(seed) + ")", trunc, std::move(logs));
}

std::string expansion_to_json(ExpansionTable const &t)
{
	Json entries = Json::array();
	for (int gen = 0; gen < 2 * t.genus(); ++gen)
		entries.push_back(Json{{"gen", generator_name(gen)}, {"terms", series_to_json(t.log_of(gen))}});
	Json j{{"genus", t.genus()}, {"valid_degree", t.valid_degree()}, {"id", t.id()}, {"entries", entries}};
	return j.dump(2);
}

ExpansionTable expansion_from_json(std::string const &text)
{
	Json j = Json::parse(text);
	int const genus = j.at("genus").get<int>();
	int const valid = j.at("valid_degree").get<int>();
	std::string id = j.contains("id") ? j.at("id").get<std::string>() : std::string("imported");
	std::vector<std::optional<TensorSeries>> logs(static_cast<std::size_t>(2 * genus));
	for (auto const &e : j.at("entries")) {
		int const gen = parse_generator_name(e.at("gen").get<std::string>());
		if (gen >= 2 * genus)
			throw StructuralError("expansion JSON: generator outside genus");
		logs[static_cast<std::size_t>(gen)] = series_from_json(e.at("terms"), genus, valid);
	}
	std::vector<TensorSeries> out;
	for (std::size_t gen = 0; gen < logs.size(); ++gen) {
		if (!logs[gen])
			throw StructuralError("expansion JSON: missing entry for " + generator_name(static_cast<int>(gen)));
		out.push_back(*logs[gen]);
	}
	return ExpansionTable(std::move(id), valid, std::move(out));
}

} // namespace twistkit
