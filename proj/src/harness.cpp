#include "twistkit/harness.hpp"

#include "twistkit/calculus.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace twistkit {

namespace {

GroupWord random_word(int genus, int length, Rng &rng)
{
	std::vector<Syllable> s(static_cast<std::size_t>(length));
	for (auto &x : s)
		x = {rng.uniform(0, 2 * genus - 1), rng.coin() ? 1 : -1};
	return GroupWord(genus, std::move(s));
}

// a few random words with random coefficients, lengths in [lo, hi]
TensorSeries random_tensor(int genus, int trunc, int lo, int hi, Rng &rng)
{
	std::vector<TensorSeries::Term> t;
	int const n = rng.uniform(1, 4);
	for (int i = 0; i < n; ++i) {
		std::vector<int> codes(static_cast<std::size_t>(rng.uniform(lo, hi)));
		for (auto &c : codes)
			c = rng.uniform(0, 2 * genus - 1);
		t.emplace_back(Word(std::span<const int>(codes)), rng.rational());
	}
	return TensorSeries::from_terms(genus, trunc, std::move(t));
}

std::string trials_detail(int trials, int failures, std::string const &first)
{
	std::string s = std::to_string(trials) + " trials, " + std::to_string(failures) + " failures";
	if (!first.empty())
		s += "; first: " + first;
	return s;
}

// runs body(trial, rng) `trials` times; body returns an empty string on success
CheckResult run_trials(std::string name, int trials, std::uint64_t seed,
                       std::function<std::string(int, Rng &)> const &body)
{
	CheckResult r{std::move(name), false, trials, 0, {}};
	Rng rng(seed);
	std::string first;
	for (int trial = 0; trial < trials; ++trial) {
		std::string why;
		try {
			why = body(trial, rng);
		} catch (std::exception const &e) {
			why = std::string("exception: ") + e.what();
		}
		if (!why.empty()) {
			++r.failures;
			if (first.empty())
				first = "trial " + std::to_string(trial) + ": " + why;
		}
	}
	r.passed = r.failures == 0;
	r.detail = trials_detail(trials, r.failures, first);
	return r;
}

std::string pairing_text(int sign)
{
	return sign > 0 ? "+" : "-";
}

} // namespace

ExpansionSource ExpansionSource::from_spec(std::string const &spec)
{
	ExpansionSource s;
	if (spec == "builtin:massuyeau")
		return s;
	if (spec.rfind("builtin:", 0) == 0)
		throw UsageError("unknown built-in expansion '" + spec + "'");
	std::ifstream in(spec);
	if (!in)
		throw UsageError("cannot read expansion file '" + spec + "'");
	std::stringstream buf;
	buf << in.rdbuf();
	try {
		s.file_ = expansion_from_json(buf.str());
	} catch (std::exception const &e) {
		throw UsageError("invalid expansion file '" + spec + "': " + e.what());
	}
	return s;
}

std::string ExpansionSource::id() const
{
	return file_ ? file_->id() : "builtin:massuyeau";
}

int ExpansionSource::valid_degree() const
{
	return file_ ? file_->valid_degree() : 3;
}

std::optional<int> ExpansionSource::fixed_genus() const
{
	if (file_)
		return file_->genus();
	return std::nullopt;
}

ExpansionTable ExpansionSource::table(int genus) const
{
	if (!file_)
		return massuyeau_expansion(genus);
	if (file_->genus() != genus)
		throw UsageError("expansion file has genus " + std::to_string(file_->genus()) + ", genus " +
		                 std::to_string(genus) + " requested");
	return *file_;
}

std::uint64_t suite_seed(std::uint64_t seed, std::string const &name)
{
	// FNV-1a over the name, then a splitmix64 step
	std::uint64_t h = 1469598103934665603ULL;
	for (unsigned char c : name)
		h = (h ^ c) * 1099511628211ULL;
	std::uint64_t z = seed + h + 0x9e3779b97f4a7c15ULL;
	z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
	z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
	return z ^ (z >> 31);
}

int thread_cap()
{
	if (char const *env = std::getenv("TWISTKIT_THREADS")) {
		int n = 0;
		std::string_view const v(env);
		auto const [p, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
		if (ec == std::errc() && p == v.data() + v.size() && n > 0)
			return n;
	}
	return std::max(1U, std::thread::hardware_concurrency());
}

std::vector<TaskResult> run_parallel(std::vector<std::function<TaskResult()>> const &tasks, int threads)
{
	std::vector<TaskResult> out(tasks.size());
	std::vector<std::exception_ptr> errors(tasks.size());
	std::atomic<std::size_t> next{0};
	auto work = [&] {
		for (std::size_t i; (i = next++) < tasks.size();) {
			try {
				out[i] = tasks[i]();
			} catch (...) {
				errors[i] = std::current_exception();
			}
		}
	};
	auto const n = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, threads)), tasks.size());
	if (n <= 1) {
		work();
	} else {
		std::vector<std::thread> pool;
		for (std::size_t i = 0; i < n; ++i)
			pool.emplace_back(work);
		for (auto &t : pool)
			t.join();
	}
	for (auto const &e : errors)
		if (e)
			std::rethrow_exception(e);
	return out;
}

CheckResult suite_n_map(int trials, std::uint64_t seed)
{
	return run_trials("property:n_map", trials, seed, [](int, Rng &rng) -> std::string {
		auto const u = random_tensor(2, 8, 1, 3, rng), v = random_tensor(2, 8, 1, 3, rng);
		auto const w = random_tensor(2, 8, 1, 2, rng);
		if (cyclic_sum(u * v) != cyclic_sum(v * u))
			return "N(uv) != N(vu)";
		if (cyclic_sum(commutator(u, v) * w) != cyclic_sum(u * commutator(v, w)))
			return "N([u,v]w) != N(u[v,w])";
		if (!kills_omega(Derivation::from_tensor(cyclic_sum(random_tensor(2, 6, 2, 4, rng)))))
			return "derivation of N(v) moves omega";
		return {};
	});
}

CheckResult suite_exp_log(int trials, std::uint64_t seed)
{
	return run_trials("property:exp_log", trials, seed, [](int, Rng &rng) -> std::string {
		int const trunc = rng.uniform(1, 8);
		int const genus = rng.uniform(1, 3);
		auto const v = random_lie_series(genus, trunc, 1, rng);
		if (log(exp(v)) != v)
			return "log(exp v) != v";
		auto const w = TensorSeries::unit(genus, trunc) + v + v * v;
		if (exp(log(w)) != w)
			return "exp(log w) != w";
		return {};
	});
}

CheckResult suite_l_invariance(ExpansionSource const &src, int trials, std::uint64_t seed)
{
	return run_trials("property:l_invariance", trials, seed, [&src](int trial, Rng &rng) -> std::string {
		int const g = src.fixed_genus().value_or(rng.uniform(1, 3));
		auto const base = src.table(g);
		auto const t = trial % 2 == 0 ? base
		                              : synthetic_extension(base, base.valid_degree() + 2, rng.uniform(0, 1 << 20));
		int const trunc = t.valid_degree() + 1;
		auto const x = random_word(g, rng.uniform(1, 6), rng), y = random_word(g, rng.uniform(1, 4), rng);
		auto const L = loop_invariant(t, x, trunc).tensor;
		if (loop_invariant(t, x.inverse(), trunc).tensor != L)
			return "L(x^-1) != L(x) for x = " + x.to_string();
		if (loop_invariant(t, y * x * y.inverse(), trunc).tensor != L)
			return "L(y x y^-1) != L(x) for x = " + x.to_string() + ", y = " + y.to_string();
		return {};
	});
}

CheckResult suite_power_scaling(ExpansionSource const &src, int trials, std::uint64_t seed)
{
	return run_trials("property:power_scaling", trials, seed, [&src](int, Rng &rng) -> std::string {
		int const g = src.fixed_genus().value_or(rng.uniform(1, 2));
		auto const t = src.table(g);
		int const trunc = t.valid_degree() + 1;
		auto const x = random_word(g, rng.uniform(1, 5), rng);
		int const m = rng.uniform(-3, 3);
		if (loop_invariant(t, x.power(m), trunc).tensor != Scalar(m * m) * loop_invariant(t, x, trunc).tensor)
			return "L(x^m) != m^2 L(x) for x = " + x.to_string() + ", m = " + std::to_string(m);
		return {};
	});
}

CheckResult suite_expansion_independence(int trials, std::uint64_t seed, Pairing pairing)
{
	return run_trials("property:expansion_independence", trials, seed,
	                  [pairing](int trial, Rng &rng) -> std::string {
		                  auto const gamma = random_word(2, rng.uniform(1, 4), rng);
		                  auto const s = static_cast<std::uint64_t>(trial) + 1000U * static_cast<std::uint64_t>(rng.uniform(0, 1 << 20));
		                  if (!expansion_independence_check(gamma, s, 4, pairing))
			                  return "gamma = " + gamma.to_string();
		                  return {};
	                  });
}

CheckResult suite_conjugation_law(int trials, std::uint64_t seed, int trunc, Pairing pairing)
{
	return run_trials("property:conjugation_law", trials, seed, [trunc, pairing](int trial, Rng &rng) -> std::string {
		auto const v = random_tensor(2, trunc, 2, 3, rng);
		Automorphism const u = trial % 3 == 0   ? random_ia_omega(2, trunc, rng, pairing)
		                       : trial % 3 == 1 ? random_symplectic_linear(2, trunc, rng, pairing)
		                                        : random_ia_omega(2, trunc, rng, pairing)
		                                              .compose(random_symplectic_linear(2, trunc, rng, pairing));
		if (!conjugation_law_holds(u, v, pairing))
			return "v = " + v.to_string();
		return {};
	});
}

CheckResult suite_lemma(int degree, int trials, std::uint64_t seed)
{
	auto name = "lemma:degree" + std::to_string(degree);
	return run_trials(std::move(name), trials, seed, [degree](int trial, Rng &rng) -> std::string {
		int const genus = trial % 4 == 3 ? 3 : 2;
		auto const [lx, ly] = random_lemma_pair(genus, degree, rng);
		std::vector<LemmaVariant> variants{LemmaVariant::Product};
		if (degree <= 4)
			variants.push_back(LemmaVariant::InverseProduct);
		for (auto v : variants) {
			auto const li = lemma_identity(lx, ly, degree, v);
			if (!li.holds())
				return li.name + ": lhs " + li.lhs.to_string() + " != rhs " + li.rhs.to_string();
		}
		return {};
	});
}

CheckResult boundary_check(ExpansionTable const &t, int claim)
{
	auto const b = check_boundary(t, claim);
	CheckResult r{"check_boundary:g=" + std::to_string(t.genus()), b.status == BoundaryStatus::Holds, 1, 0, {}};
	switch (b.status) {
	case BoundaryStatus::Holds:
		r.detail = "theta(zeta) = exp(omega) through degree " + std::to_string(claim);
		break;
	case BoundaryStatus::Fails:
		r.failures = 1;
		r.detail = "theta(zeta) != exp(omega), first mismatch at degree " + std::to_string(b.first_mismatch.value_or(-1));
		break;
	case BoundaryStatus::Unverifiable:
		r.failures = 1;
		r.detail = "degree " + std::to_string(claim) + " is beyond the table";
		break;
	}
	return r;
}

CheckResult calibration_check(TwistConvention const &conv)
{
	int survivors = 0;
	for (auto const &c : conv.candidates)
		if (c.agreement_degree >= conv.verified_degree)
			++survivors;
	CheckResult r{"calibration:" + conv.curve, false, 1, 0, {}};
	r.passed = conv.winner && survivors == 1 && conv.homology_matches_transvection;
	auto const gen = generator_name(conv.crossing_generator);
	if (conv.winner)
		r.detail = "t_" + conv.curve + ": " + gen + " -> " + conv.winner->to_string() + " (through degree " +
		           std::to_string(conv.verified_degree) + ")";
	else
		r.detail = "t_" + conv.curve + ": " + std::to_string(survivors) + " conventions survive";
	r.detail += conv.homology_matches_transvection ? ", homology is the transvection" : ", homology mismatch";
	r.failures = r.passed ? 0 : 1;
	return r;
}

Configuration configuration_from(RunConfig const &rc)
{
	if (!rc.config)
		throw UsageError("--config is required");
	ConfigKind kind{};
	try {
		kind = parse_config_kind(*rc.config);
	} catch (std::invalid_argument const &e) {
		throw UsageError(e.what());
	}
	Configuration c;
	switch (kind) {
	case ConfigKind::I:
		c = Configuration::type_i(rc.g.value_or(2));
		break;
	case ConfigKind::IIa:
	case ConfigKind::IIb:
	case ConfigKind::IIIa:
	case ConfigKind::IIIb: {
		int const h = rc.h.value_or(rc.g ? std::min(*rc.g, 2) : 2);
		c = Configuration::type_ii_iii(kind, rc.g.value_or(std::max(2, h)), h);
		break;
	}
	case ConfigKind::IVa:
	case ConfigKind::IVb:
		c = Configuration::type_iv(kind, rc.k1.value_or(1), rc.k2.value_or(1), rc.h.value_or(0));
		if (rc.g && *rc.g != c.genus)
			throw UsageError("IV configurations need k1 + k2 + h = g");
		break;
	}
	try {
		c.validate();
	} catch (std::invalid_argument const &e) {
		throw UsageError(e.what());
	}
	if (c.genus > kMaxGenus)
		throw UsageError("genus above " + std::to_string(kMaxGenus));
	return c;
}

Json rational_json(Scalar const &q)
{
	if (q.get_den() == 1 && q.get_num().fits_slong_p())
		return q.get_num().get_si();
	return to_string(q);
}

Json tensor_json(TensorSeries const &u)
{
	return {{"text", u.to_string()}, {"terms", series_to_json(u)}};
}

namespace {

Json rationals_json(std::vector<Scalar> const &v)
{
	Json a = Json::array();
	for (auto const &q : v)
		a.push_back(rational_json(q));
	return a;
}

Json matrix_json(RationalMatrix const &m)
{
	Json a = Json::array();
	for (auto const &row : m)
		a.push_back(rationals_json(row));
	return a;
}

Json config_json(Configuration const &c)
{
	Json j{{"label", c.label()}, {"kind", c.name()}, {"g", c.genus}};
	if (c.kind != ConfigKind::I)
		j["h"] = c.h;
	if (c.null_homologous()) {
		j["k1"] = c.k1;
		j["k2"] = c.k2;
	}
	return j;
}

std::string join(std::vector<std::string> const &parts, std::string const &sep)
{
	std::string s;
	for (std::size_t i = 0; i < parts.size(); ++i)
		s += (i ? sep : "") + parts[i];
	return s;
}

std::string rationals_text(std::vector<Scalar> const &v)
{
	std::vector<std::string> parts;
	for (auto const &q : v)
		parts.push_back(to_string(q));
	return "(" + join(parts, ", ") + ")";
}

int residual_degree_of(Configuration const &c)
{
	return c.kind == ConfigKind::I ? 4 : c.null_homologous() ? 8 : 6;
}

// everything a command needs, plus the accumulated output
struct Session {
	RunConfig rc;
	ExpansionSource src;
	Pairing pairing;
	int threads = 1;
	std::vector<CheckResult> checks;
	Json results = Json::object();
	std::vector<std::string> lines;

	void add(std::vector<TaskResult> const &done)
	{
		for (auto const &t : done)
			for (auto const &c : t.checks)
				checks.push_back(c);
	}
};

Session open_session(RunConfig const &rc)
{
	if (rc.trunc < 2 || rc.trunc > kMaxDegree)
		throw UsageError("--trunc must lie in [2, " + std::to_string(kMaxDegree) + "]");
	if (rc.trials < 1)
		throw UsageError("--trials must be positive");
	if (rc.pairing_sign != 1 && rc.pairing_sign != -1)
		throw UsageError("--pairing-sign must be + or -");
	Session s{rc, ExpansionSource::from_spec(rc.expansion), Pairing{rc.pairing_sign}, thread_cap(), {}, {}, {}};
	return s;
}

// the explicit configuration, or the canonical sweep restricted to what the source covers
std::vector<Configuration> selected_configs(Session const &s, bool with_case_i)
{
	if (s.rc.config) {
		auto const c = configuration_from(s.rc);
		if (!s.src.covers(c.genus))
			throw UsageError("expansion file does not cover genus " + std::to_string(c.genus));
		return {c};
	}
	std::vector<Configuration> out;
	for (auto const &c : default_configurations())
		if ((with_case_i || c.kind != ConfigKind::I) && s.src.covers(c.genus))
			out.push_back(c);
	return out;
}

TaskResult table2_task(Session const &s, Configuration const &c)
{
	auto const r = table2(c, s.src.table(c.genus));
	TaskResult out;
	Json j = config_json(c);
	j["basis"] = r.basis.names;
	char const *keys[] = {"l4x", "l4y", "m"};
	TensorSeries const *tensors[] = {&r.l4x, &r.l4y, &r.m};
	for (std::size_t i = 0; i < 3; ++i)
		j[keys[i]] = {{"coords", rationals_json(r.coords[i])}, {"tensor", tensor_json(*tensors[i])}};
	j["rank"] = r.rank;
	j["authoritative_degree"] = 4;
	j["expansion_id"] = r.expansion_id;
	out.data = j;
	out.checks.push_back({"config:" + c.label() + ":table2", r.rank == 3, 1, r.rank == 3 ? 0 : 1,
	                      "rank " + std::to_string(r.rank) + " in " + join(r.basis.names, ", ")});
	return out;
}

std::vector<std::string> table2_text(Json const &row)
{
	std::vector<std::string> l{row.at("label").get<std::string>() + "  basis " +
	                           join(row.at("basis").get<std::vector<std::string>>(), ", ") + "  rank " +
	                           std::to_string(row.at("rank").get<int>())};
	for (char const *k : {"l4x", "l4y", "m"}) {
		std::vector<std::string> parts;
		for (auto const &q : row.at(k).at("coords"))
			parts.push_back(q.is_string() ? q.get<std::string>() : std::to_string(q.get<long>()));
		l.push_back(std::string("  ") + (std::string(k) == "m" ? "M   " : std::string(k) == "l4x" ? "L4x " : "L4y ") +
		            "(" + join(parts, ", ") + ")  = " + row.at(k).at("tensor").at("text").get<std::string>());
	}
	return l;
}

bool is_221(std::array<Scalar, 3> const &m)
{
	return m[0] == 2 && m[1] == 2 && m[2] == -1;
}

TaskResult coeffs_task(Session const &s, Configuration const &c)
{
	auto const r = solve_coefficients(c, s.src.table(c.genus));
	TaskResult out;
	Json j = config_json(c);
	j["degrees"] = r.degrees;
	j["constraints"] = r.constraints;
	j["consistent"] = r.system.consistent;
	j["determined"] = r.determined;
	j["m"] = rationals_json({r.m[0], r.m[1], r.m[2]});
	j["nullspace"] = Json::array();
	for (auto const &v : r.system.nullspace)
		j["nullspace"].push_back(rationals_json(v));
	j["identified_direction"] = r.identified_direction
	                                ? rationals_json({(*r.identified_direction)[0], (*r.identified_direction)[1],
	                                                  (*r.identified_direction)[2]})
	                                : Json(nullptr);
	j["authoritative_degree"] = 4;
	out.data = j;
	bool const ok = r.system.consistent && r.determined && is_221(r.m);
	out.checks.push_back({"config:" + c.label() + ":coefficients", ok, 1, ok ? 0 : 1,
	                      "m = " + rationals_text({r.m[0], r.m[1], r.m[2]}) + "; " + join(r.constraints, ", ")});
	return out;
}

TaskResult residual_task(Session const &s, Configuration const &c)
{
	auto const r = contradiction_residual(c, s.src.table(c.genus));
	TaskResult out;
	Json j = config_json(c);
	j["residual_degree"] = r.residual_degree;
	j["method"] = r.method;
	j["nonzero"] = r.nonzero;
	j["matches_expected"] = r.matches_expected;
	j["residual"] = tensor_json(r.residual);
	j["expected"] = tensor_json(r.expected);
	j["verdict"] = r.verdict;
	j["authoritative_degree"] = r.authoritative_degree;
	out.data = j;
	bool const ok = r.nonzero && r.matches_expected;
	out.checks.push_back({"config:" + c.label() + ":residual", ok, 1, ok ? 0 : 1,
	                      "degree " + std::to_string(r.residual_degree) + " (" + r.method + "), " +
	                          (r.nonzero ? "nonzero" : "zero") +
	                          (r.matches_expected ? ", matches closed form" : ", differs from closed form")});
	return out;
}

Json skipped_json(Configuration const &c, std::string const &why)
{
	Json j = config_json(c);
	j["skipped"] = why;
	return j;
}

void cmd_table2(Session &s)
{
	std::vector<Configuration> configs;
	for (auto const &c : selected_configs(s, false)) {
		if (c.kind == ConfigKind::I)
			throw UsageError("case I has no degree-4 table row");
		configs.push_back(c);
	}
	if (s.rc.trunc < 4)
		throw UsageError("table2 needs --trunc >= 4");
	std::vector<std::function<TaskResult()>> tasks;
	for (auto const &c : configs)
		tasks.push_back([&s, c] { return table2_task(s, c); });
	auto const done = run_parallel(tasks, s.threads);
	s.add(done);
	s.results["rows"] = Json::array();
	for (auto const &t : done) {
		s.results["rows"].push_back(t.data);
		for (auto const &l : table2_text(t.data))
			s.lines.push_back(l);
	}
}

void cmd_coeffs(Session &s)
{
	if (s.rc.trunc < 4)
		throw UsageError("coeffs needs --trunc >= 4");
	std::vector<std::function<TaskResult()>> tasks;
	for (auto const &c : selected_configs(s, true))
		tasks.push_back([&s, c] { return coeffs_task(s, c); });
	auto const done = run_parallel(tasks, s.threads);
	s.add(done);
	if (s.rc.config) {
		s.results = done.front().data;
	} else {
		s.results["configurations"] = Json::array();
		for (auto const &t : done)
			s.results["configurations"].push_back(t.data);
	}
	for (auto const &c : s.checks)
		s.lines.push_back(c.name.substr(7, c.name.rfind(':') - 7) + "  " + c.detail);
}

void cmd_residual(Session &s)
{
	std::vector<std::function<TaskResult()>> tasks;
	std::vector<Json> skipped;
	for (auto const &c : selected_configs(s, true)) {
		if (residual_degree_of(c) > s.rc.trunc) {
			if (s.rc.config)
				throw UsageError("the residual of " + c.label() + " lives in degree " +
				                 std::to_string(residual_degree_of(c)) + ", above --trunc");
			skipped.push_back(skipped_json(c, "residual degree above --trunc"));
			continue;
		}
		tasks.push_back([&s, c] { return residual_task(s, c); });
	}
	auto const done = run_parallel(tasks, s.threads);
	s.add(done);
	Json list = Json::array();
	for (auto const &t : done) {
		list.push_back(t.data);
		s.lines.push_back(t.data.at("label").get<std::string>() + "  " + t.data.at("verdict").get<std::string>() +
		                  "  degree " + std::to_string(t.data.at("residual_degree").get<int>()) + " residual:");
		s.lines.push_back("  " + t.data.at("residual").at("text").get<std::string>());
	}
	for (auto const &j : skipped) {
		list.push_back(j);
		s.lines.push_back(j.at("label").get<std::string>() + "  skipped: " + j.at("skipped").get<std::string>());
	}
	if (s.rc.config && !done.empty())
		s.results = done.front().data;
	else
		s.results["configurations"] = list;
}

std::vector<int> lemma_degrees(int trunc)
{
	std::vector<int> d;
	for (int k : {2, 4, 6, 8})
		if (k <= trunc)
			d.push_back(k);
	return d;
}

void cmd_lemmas(Session &s)
{
	std::vector<std::function<TaskResult()>> tasks;
	for (int d : lemma_degrees(s.rc.trunc))
		tasks.push_back([&s, d] {
			auto const name = "lemma:degree" + std::to_string(d);
			return TaskResult{{suite_lemma(d, s.rc.trials, suite_seed(s.rc.seed, name))}, {}};
		});
	auto const done = run_parallel(tasks, s.threads);
	s.add(done);
	s.results["suites"] = Json::array();
	for (auto const &c : s.checks)
		s.results["suites"].push_back({{"name", c.name}, {"trials", c.trials}, {"failures", c.failures}});
}

std::vector<int> source_genera(Session const &s, std::vector<int> const &fallback)
{
	if (auto const g = s.src.fixed_genus()) {
		if (s.rc.g && *s.rc.g != *g)
			throw UsageError("expansion file has genus " + std::to_string(*g));
		return {*g};
	}
	if (s.rc.g) {
		if (*s.rc.g < 1 || *s.rc.g > kMaxGenus)
			throw UsageError("--g out of range");
		return {*s.rc.g};
	}
	return fallback;
}

void cmd_expansion_check(Session &s)
{
	s.results["tables"] = Json::array();
	for (int g : source_genera(s, {1, 2, 3})) {
		auto const t = s.src.table(g);
		int const claim = t.valid_degree() + 1;
		s.checks.push_back(boundary_check(t, claim));
		Json claims = Json::array();
		for (int d = 1; d <= std::max(claim, s.rc.trunc); ++d) {
			auto const b = check_boundary(t, d);
			Json e{{"degree", d}, {"status", to_string(b.status)}};
			if (b.first_mismatch)
				e["first_mismatch"] = *b.first_mismatch;
			claims.push_back(e);
		}
		bool lie = true;
		for (auto const &l : t.logs())
			lie = lie && is_lie_element(l);
		s.checks.push_back({"group_like:g=" + std::to_string(g), lie, 1, lie ? 0 : 1,
		                    lie ? "every generator log is a Lie series" : "a generator log is not Lie"});
		s.results["tables"].push_back({{"genus", g}, {"expansion_id", t.id()}, {"valid_degree", t.valid_degree()},
		                               {"claims", claims}, {"logs_are_lie", lie}});
	}
}

Json calibration_json(TwistConvention const &conv)
{
	Json cands = Json::array();
	for (auto const &c : conv.candidates)
		cands.push_back({{"image", c.image.to_string()}, {"agreement_degree", c.agreement_degree}});
	return {{"curve", conv.curve},
	        {"crossing_generator", generator_name(conv.crossing_generator)},
	        {"candidates", cands},
	        {"winner", conv.winner ? Json(conv.winner->to_string()) : Json(nullptr)},
	        {"verified_degree", conv.verified_degree},
	        {"homology_action", matrix_json(conv.homology_action)},
	        {"homology_matches_transvection", conv.homology_matches_transvection}};
}

int calibration_genus(Session const &s)
{
	return source_genera(s, {2}).front();
}

void cmd_calibrate(Session &s)
{
	auto const convs = calibrate_twist_convention(s.src.table(calibration_genus(s)), s.pairing);
	s.results["conventions"] = Json::array();
	for (auto const &conv : convs) {
		s.checks.push_back(calibration_check(conv));
		s.results["conventions"].push_back(calibration_json(conv));
	}
}

void cmd_verify_all(Session &s)
{
	auto const &rc = s.rc;
	std::vector<std::function<TaskResult()>> tasks;
	auto suite = [&](std::string const &name, std::function<CheckResult(std::uint64_t)> f) {
		tasks.push_back([name, f, &rc] { return TaskResult{{f(suite_seed(rc.seed, name))}, {}}; });
	};
	for (int g : source_genera(s, {1, 2, 3}))
		tasks.push_back([&s, g] {
			auto const t = s.src.table(g);
			return TaskResult{{boundary_check(t, t.valid_degree() + 1)}, {}};
		});
	tasks.push_back([&s] {
		TaskResult r;
		for (auto const &conv : calibrate_twist_convention(s.src.table(calibration_genus(s)), s.pairing)) {
			r.checks.push_back(calibration_check(conv));
			r.data.push_back(calibration_json(conv));
		}
		return r;
	});
	for (int d : lemma_degrees(rc.trunc))
		suite("lemma:degree" + std::to_string(d), [d, &rc](std::uint64_t seed) { return suite_lemma(d, rc.trials, seed); });
	suite("property:n_map", [&rc](std::uint64_t seed) { return suite_n_map(rc.trials, seed); });
	suite("property:exp_log", [&rc](std::uint64_t seed) { return suite_exp_log(rc.trials, seed); });
	suite("property:l_invariance",
	      [&s](std::uint64_t seed) { return suite_l_invariance(s.src, s.rc.trials, seed); });
	suite("property:power_scaling",
	      [&s](std::uint64_t seed) { return suite_power_scaling(s.src, s.rc.trials, seed); });
	suite("property:expansion_independence",
	      [&s](std::uint64_t seed) { return suite_expansion_independence(s.rc.trials, seed, s.pairing); });
	suite("property:conjugation_law", [&s](std::uint64_t seed) {
		return suite_conjugation_law(s.rc.trials, seed, std::min(s.rc.trunc, 5), s.pairing);
	});
	std::size_t const first_config = tasks.size();
	std::vector<Configuration> configs;
	std::vector<Json> skipped;
	for (auto const &c : default_configurations()) {
		if (!s.src.covers(c.genus)) {
			skipped.push_back(skipped_json(c, "expansion does not cover this genus"));
			continue;
		}
		if (residual_degree_of(c) > rc.trunc) {
			skipped.push_back(skipped_json(c, "residual degree above --trunc"));
			continue;
		}
		configs.push_back(c);
		tasks.push_back([&s, c] {
			TaskResult r;
			Json j = config_json(c);
			if (c.kind != ConfigKind::I) {
				auto const t2 = table2_task(s, c);
				r.checks.push_back(t2.checks.front());
				j["table2_rank"] = t2.data.at("rank");
			}
			auto const co = coeffs_task(s, c);
			auto const re = residual_task(s, c);
			r.checks.push_back(co.checks.front());
			r.checks.push_back(re.checks.front());
			j["m"] = co.data.at("m");
			j["residual_degree"] = re.data.at("residual_degree");
			j["nonzero"] = re.data.at("nonzero");
			j["verdict"] = re.data.at("verdict");
			r.data = j;
			return r;
		});
	}
	auto const done = run_parallel(tasks, s.threads);
	s.add(done);
	Json conventions = done[source_genera(s, {1, 2, 3}).size()].data;
	s.results["calibration"] = conventions.is_null() ? Json::array() : conventions;
	Json list = Json::array();
	for (std::size_t i = first_config; i < done.size(); ++i)
		list.push_back(done[i].data);
	for (auto const &j : skipped)
		list.push_back(j);
	s.results["configurations"] = list;
	s.lines.push_back("configurations:");
	for (auto const &j : list)
		s.lines.push_back("  " + j.at("label").get<std::string>() + "  " +
		                  (j.contains("skipped") ? "skipped: " + j.at("skipped").get<std::string>()
		                                         : j.at("verdict").get<std::string>()));
}

} // namespace

CommandOutput run_command(RunConfig const &rc)
{
	auto s = open_session(rc);
	static std::map<std::string, void (*)(Session &)> const commands{
	    {"verify-all", cmd_verify_all},     {"table2", cmd_table2}, {"residual", cmd_residual},
	    {"coeffs", cmd_coeffs},             {"lemmas", cmd_lemmas}, {"expansion-check", cmd_expansion_check},
	    {"calibrate", cmd_calibrate}};
	auto const it = commands.find(rc.command);
	if (it == commands.end())
		throw UsageError("unknown command '" + rc.command + "'");
	try {
		it->second(s);
	} catch (UsageError const &) {
		throw;
	} catch (UnspecifiedDegree const &e) {
		throw UsageError(std::string("expansion too short: ") + e.what());
	}

	std::stable_sort(s.checks.begin(), s.checks.end(),
	                 [](CheckResult const &a, CheckResult const &b) { return a.name < b.name; });
	int passed = 0;
	Json checks = Json::array();
	for (auto const &c : s.checks) {
		passed += c.passed ? 1 : 0;
		checks.push_back({{"name", c.name}, {"passed", c.passed}, {"trials", c.trials}, {"failures", c.failures},
		                  {"detail", c.detail}});
	}
	int const failed = static_cast<int>(s.checks.size()) - passed;

	CommandOutput out;
	out.exit_code = failed == 0 ? 0 : 1;
	Json run{{"trunc", rc.trunc},
	         {"seed", rc.seed},
	         {"trials", rc.trials},
	         {"pairing_sign", pairing_text(rc.pairing_sign)},
	         {"expansion", rc.expansion},
	         {"config", rc.config ? Json(configuration_from(rc).label()) : Json(nullptr)}};
	out.report = {{"schema_version", 1},
	              {"tool", "twistkit"},
	              {"command", rc.command},
	              {"run", run},
	              {"provenance",
	               {{"expansion_id", s.src.id()},
	                {"authoritative_degree", s.src.valid_degree()},
	                {"seed", rc.seed},
	                {"trunc", rc.trunc}}},
	              {"checks", checks},
	              {"results", s.results},
	              {"summary", {{"passed", passed}, {"failed", failed}, {"status", failed == 0 ? "pass" : "fail"}}},
	              {"exit_code", out.exit_code}};

	std::ostringstream text;
	text << "twistkit " << rc.command << "  expansion " << s.src.id() << " (authoritative through degree "
	     << s.src.valid_degree() << ")  trunc " << rc.trunc << "  seed " << rc.seed << "  trials " << rc.trials
	     << "  pairing " << pairing_text(rc.pairing_sign) << "\n";
	for (auto const &l : s.lines)
		text << l << "\n";
	for (auto const &c : s.checks)
		text << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  " << c.detail << "\n";
	text << "result: " << passed << " passed, " << failed << " failed\n";
	out.text = text.str();
	return out;
}

std::string render(CommandOutput const &out, RunConfig const &rc)
{
	if (rc.format == "json")
		return out.report.dump(2) + "\n";
	return out.text;
}

} // namespace twistkit
