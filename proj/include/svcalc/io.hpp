#pragma once

#include <string>

#include <json.hpp>

#include "svcalc/approximant.hpp"
#include "svcalc/compact_set.hpp"
#include "svcalc/derivative_field.hpp"
#include "svcalc/set_ops.hpp"

namespace svc {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

nlohmann::json to_json(const CompactSet& a);
CompactSet compact_set_from_json(const nlohmann::json& j, double dedup_tol = 1e-12);

/// One point per line, coordinates separated by spaces; round-trips exactly.
std::string to_text(const CompactSet& a);
CompactSet compact_set_from_text(const std::string& text, double dedup_tol = 1e-12);

nlohmann::json to_json(const MetricPairSet& pairs);
nlohmann::json to_json(const DerivativeField& field);
nlohmann::json to_json(const OrderFit& fit);
nlohmann::json to_json(const ErrorCurve& curve);
std::string to_csv(const ErrorCurve& curve);

}  // namespace svc
