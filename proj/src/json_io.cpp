#include "twistkit/json_io.hpp"

namespace twistkit {

Json series_to_json(TensorSeries const &u)
{
	Json out = Json::array();
	for (auto const &[w, c] : u.terms()) {
		Json word = Json::array();
		for (int x : w.letters())
			word.push_back(Letter::from_code(x).name());
		out.push_back(Json{{"word", std::move(word)}, {"coeff", to_string(c)}});
	}
	return out;
}

TensorSeries series_from_json(Json const &terms, int genus, int trunc)
{
	if (!terms.is_array())
		throw std::invalid_argument("series terms must be a JSON array");
	std::vector<TensorSeries::Term> t;
	for (auto const &entry : terms) {
		std::vector<int> codes;
		for (auto const &name : entry.at("word"))
			codes.push_back(Letter::parse(name.get<std::string>()).code());
		auto const &coeff = entry.at("coeff");
		Scalar c = coeff.is_string() ? parse_scalar(coeff.get<std::string>()) : Scalar(coeff.get<long>());
		t.emplace_back(Word(std::span<const int>(codes)), std::move(c));
	}
	return TensorSeries::from_terms(genus, trunc, std::move(t));
}

} // namespace twistkit
