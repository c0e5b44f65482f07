#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "svcalc/compact_set.hpp"
#include "svcalc/derivative_field.hpp"
#include "svcalc/tolerances.hpp"

namespace svc {

/// Closed-form companions a catalog entry may carry: exact one-sided
/// derivative fields (sampled at the requested resolution) and, where known,
/// the expected approximation error as a function of the step.
struct AnalyticData {
    std::function<DerivativeField(double x0, Side side, int resolution, const Tolerances&)>
        derivative_field;
    std::function<double(double h)> approximant_error;  // may be empty
};

/// A set-valued function on an open interval, evaluated as a finite point
/// cloud whose density is controlled by `resolution`.
class SetValuedFunction {
public:
    using Evaluator = std::function<std::vector<Point>(double x, int resolution)>;

    SetValuedFunction(std::string name, double domain_lo, double domain_hi, int dim,
                      Evaluator evaluator);

    const std::string& name() const { return name_; }
    double domain_lo() const { return lo_; }
    double domain_hi() const { return hi_; }
    int dim() const { return dim_; }
    bool contains(double x) const { return x > lo_ && x < hi_; }

    /// Evaluates the image at x. Throws std::domain_error outside the open
    /// domain and std::invalid_argument for resolution < 1.
    CompactSet eval(double x, int resolution, double dedup_tol = 1e-12) const;

    bool has_analytic() const { return analytic_.has_value(); }
    const AnalyticData& analytic() const;
    void set_analytic(AnalyticData data) { analytic_ = std::move(data); }

private:
    std::string name_;
    double lo_;
    double hi_;
    int dim_;
    Evaluator evaluator_;
    std::optional<AnalyticData> analytic_;
};

/// Samples the lattice {i * step : i integer} restricted to [lo, hi] and
/// appends both endpoints exactly. Nearby intervals therefore share interior
/// sample points bit for bit, and endpoint values are always present.
std::vector<double> sample_interval(double lo, double hi, double step);

/// Catalog of built-in functions. Parameters arrive as a JSON object; unknown
/// keys are rejected.
SetValuedFunction gallery(const std::string& name, const nlohmann::json& params);

std::vector<std::string> gallery_names();

struct GalleryInfo {
    std::string name;
    std::string summary;
    std::string params;
};
std::vector<GalleryInfo> gallery_info();

/// Builds a piecewise function from a JSON description:
///   { "domain": [a, b],
///     "grid_scale": s,                // optional reference scale
///     "pieces": [ { "on": [u, v],
///                   "intervals": [[lo, hi], ...],   // optional, 1-d only
///                   "points": ["expr", ...] } ] }   // optional
/// Interval bounds and point coordinates are polynomial expressions in x.
/// The first piece whose closed range contains x applies.
SetValuedFunction make_custom(const nlohmann::json& config);

}  // namespace svc
