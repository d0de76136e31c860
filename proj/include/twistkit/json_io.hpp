#pragma once

#include "twistkit/tensor.hpp"

#include "json.hpp"

namespace twistkit {

using Json = nlohmann::json;

/// [{word:[letter names], coeff:"p/q"}, ...] in canonical term order.
Json series_to_json(TensorSeries const &u);
TensorSeries series_from_json(Json const &terms, int genus, int trunc);

} // namespace twistkit
