#include "svcalc/svf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "svcalc/expr.hpp"

namespace svc {

namespace {

double ipow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

// d/dx x^n evaluated at x, for integer n >= 0.
double ipow_deriv(double x, int n) {
    if (n == 0) return 0.0;
    return static_cast<double>(n) * ipow(x, n - 1);
}

void require_open(double x, double lo, double hi, const std::string& what) {
    if (!(x > lo && x < hi)) {
        throw std::domain_error(what + ": x = " + std::to_string(x) + " outside open interval (" +
                                std::to_string(lo) + ", " + std::to_string(hi) + ")");
    }
}

void check_params(const nlohmann::json& params, const std::string& name,
                  std::initializer_list<const char*> allowed) {
    if (params.is_null()) return;
    if (!params.is_object()) {
        throw std::invalid_argument("gallery '" + name + "': params must be a JSON object");
    }
    for (const auto& item : params.items()) {
        bool known = false;
        for (const char* k : allowed) {
            if (item.key() == k) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw std::invalid_argument("gallery '" + name + "': unknown parameter '" +
                                        item.key() + "'");
        }
    }
}

int int_param(const nlohmann::json& params, const std::string& name, const char* key,
              int fallback) {
    if (params.is_null() || !params.contains(key)) return fallback;
    const auto& v = params.at(key);
    if (!v.is_number_integer()) {
        throw std::invalid_argument("gallery '" + name + "': parameter '" + key +
                                    "' must be an integer");
    }
    return v.get<int>();
}

std::pair<double, double> domain_param(const nlohmann::json& params, const std::string& name,
                                       double def_lo, double def_hi) {
    if (params.is_null() || !params.contains("domain")) return {def_lo, def_hi};
    const auto& v = params.at("domain");
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw std::invalid_argument("gallery '" + name +
                                    "': 'domain' must be an array [lo, hi] of two numbers");
    }
    double lo = v[0].get<double>();
    double hi = v[1].get<double>();
    if (!(lo < hi)) {
        throw std::invalid_argument("gallery '" + name + "': domain must satisfy lo < hi");
    }
    return {lo, hi};
}

// Field whose per-anchor sets are known exactly; residuals are empty and every
// anchor is marked converged.
DerivativeField exact_field(const CompactSet& anchors, double x0, Side side, int resolution,
                            const std::function<CompactSet(const Point&)>& dmap) {
    DerivativeField field;
    field.x0 = x0;
    field.side = side;
    field.resolution = resolution;
    field.converged = true;
    field.anchors.reserve(anchors.size());
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        field.anchors.push_back(AnchorDerivative{anchors[i], dmap(anchors[i]), {}, true});
    }
    return field;
}

SetValuedFunction make_two_powers(const nlohmann::json& params) {
    check_params(params, "two_powers", {"alpha", "beta"});
    const int alpha = int_param(params, "two_powers", "alpha", 1);
    const int beta = int_param(params, "two_powers", "beta", 2);
    if (alpha < 0 || beta < 0 || alpha == beta) {
        throw std::invalid_argument(
            "gallery 'two_powers': alpha and beta must be distinct nonnegative integers");
    }
    auto ev = [alpha, beta](double x, int) {
        return std::vector<Point>{{ipow(x, alpha)}, {ipow(x, beta)}};
    };
    SetValuedFunction f("two_powers", 0.0, 2.0, 1, ev);

    AnalyticData data;
    data.derivative_field = [alpha, beta](double x0, Side side, int resolution,
                                          const Tolerances& tol) {
        require_open(x0, 0.0, 2.0, "two_powers derivative field");
        const double pa = ipow(x0, alpha);
        const double pb = ipow(x0, beta);
        const double da = ipow_deriv(x0, alpha);
        const double db = ipow_deriv(x0, beta);
        CompactSet anchors(std::vector<Point>{{pa}, {pb}}, tol.dedup_tol);
        auto dmap = [&](const Point& y) {
            if (anchors.size() == 1) {
                return CompactSet(std::vector<Point>{{da}, {db}}, tol.dedup_tol);
            }
            const double d = std::abs(y[0] - pa) <= std::abs(y[0] - pb) ? da : db;
            return CompactSet(std::vector<Point>{{d}}, tol.dedup_tol);
        };
        return exact_field(anchors, x0, side, resolution, dmap);
    };
    f.set_analytic(std::move(data));
    return f;
}

SetValuedFunction make_interval_growth(const nlohmann::json& params) {
    check_params(params, "interval_growth", {});
    auto ev = [](double x, int resolution) {
        return sample_interval(0.0, 1.0 + x, 1.0 / resolution);
    };
    auto lift = [](std::vector<double> xs) {
        std::vector<Point> pts;
        pts.reserve(xs.size());
        for (double v : xs) pts.push_back({v});
        return pts;
    };
    SetValuedFunction f("interval_growth", -1.0, 1.0, 1,
                        [ev, lift](double x, int r) { return lift(ev(x, r)); });

    AnalyticData data;
    data.derivative_field = [ev, lift](double x0, Side side, int resolution,
                                       const Tolerances& tol) {
        if (x0 != 0.0) {
            throw std::invalid_argument(
                "interval_growth: closed-form derivative field is available only at x0 = 0");
        }
        CompactSet anchors(lift(ev(0.0, resolution)), tol.dedup_tol);
        CompactSet top_right(lift(sample_interval(0.0, 1.0, 1.0 / resolution)), tol.dedup_tol);
        CompactSet zero(std::vector<Point>{{0.0}}, tol.dedup_tol);
        CompactSet one(std::vector<Point>{{1.0}}, tol.dedup_tol);
        auto dmap = [&](const Point& y) {
            if (y[0] == 1.0) return side == Side::right ? top_right : one;
            return zero;
        };
        return exact_field(anchors, 0.0, side, resolution, dmap);
    };
    f.set_analytic(std::move(data));
    return f;
}

SetValuedFunction make_two_curves_2d(const nlohmann::json& params) {
    check_params(params, "two_curves_2d", {"alpha", "beta"});
    const int alpha = int_param(params, "two_curves_2d", "alpha", 1);
    const int beta = int_param(params, "two_curves_2d", "beta", 2);
    if (alpha < 0 || beta < 0 || alpha == beta) {
        throw std::invalid_argument(
            "gallery 'two_curves_2d': alpha and beta must be distinct nonnegative integers");
    }
    auto ev = [alpha, beta](double x, int) {
        return std::vector<Point>{{ipow(x, alpha), ipow(x, beta)},
                                  {ipow(x, alpha + 1), ipow(x, beta + 1)}};
    };
    SetValuedFunction f("two_curves_2d", 0.0, 2.0, 2, ev);

    AnalyticData data;
    data.derivative_field = [alpha, beta](double x0, Side side, int resolution,
                                          const Tolerances& tol) {
        require_open(x0, 0.0, 2.0, "two_curves_2d derivative field");
        const Point p1{ipow(x0, alpha), ipow(x0, beta)};
        const Point p2{ipow(x0, alpha + 1), ipow(x0, beta + 1)};
        const Point d1{ipow_deriv(x0, alpha), ipow_deriv(x0, beta)};
        const Point d2{ipow_deriv(x0, alpha + 1), ipow_deriv(x0, beta + 1)};
        CompactSet anchors(std::vector<Point>{p1, p2}, tol.dedup_tol);
        auto dmap = [&](const Point& y) {
            if (anchors.size() == 1) {
                return CompactSet(std::vector<Point>{d1, d2}, tol.dedup_tol);
            }
            const bool first = squared_distance(y, p1) <= squared_distance(y, p2);
            return CompactSet(std::vector<Point>{first ? d1 : d2}, tol.dedup_tol);
        };
        return exact_field(anchors, x0, side, resolution, dmap);
    };
    f.set_analytic(std::move(data));
    return f;
}

SetValuedFunction make_strong_example(const nlohmann::json& params) {
    check_params(params, "strong_example", {});
    auto ev = [](double x, int resolution) {
        const double step = 2.0 / resolution;
        std::vector<double> xs;
        if (x < 0.0) {
            xs = sample_interval(0.0, 2.0 - x * x, step);
        } else {
            xs = sample_interval(0.0, 2.0 + x, step);
            xs.push_back(-(x * x));
        }
        std::vector<Point> pts;
        pts.reserve(xs.size());
        for (double v : xs) pts.push_back({v});
        return pts;
    };
    SetValuedFunction f("strong_example", -1.0, 1.0, 1, ev);

    AnalyticData data;
    data.derivative_field = [ev](double x0, Side side, int resolution, const Tolerances& tol) {
        if (x0 != 0.0) {
            throw std::invalid_argument(
                "strong_example: closed-form derivative field is available only at x0 = 0");
        }
        CompactSet anchors(ev(0.0, resolution), tol.dedup_tol);
        std::vector<Point> unit;
        for (double v : sample_interval(0.0, 1.0, 1.0 / resolution)) unit.push_back({v});
        CompactSet top_right(std::move(unit), tol.dedup_tol);
        CompactSet zero(std::vector<Point>{{0.0}}, tol.dedup_tol);
        auto dmap = [&](const Point& y) {
            if (side == Side::right && y[0] == 2.0) return top_right;
            return zero;
        };
        return exact_field(anchors, 0.0, side, resolution, dmap);
    };
    data.approximant_error = [](double h) { return h * h; };
    f.set_analytic(std::move(data));
    return f;
}

SetValuedFunction make_constant(const nlohmann::json& params) {
    check_params(params, "constant", {"points", "domain"});
    if (params.is_null() || !params.contains("points")) {
        throw std::invalid_argument("gallery 'constant': parameter 'points' is required");
    }
    const auto& jpts = params.at("points");
    if (!jpts.is_array() || jpts.empty()) {
        throw std::invalid_argument("gallery 'constant': 'points' must be a nonempty array");
    }
    std::vector<Point> pts;
    for (const auto& jp : jpts) {
        if (jp.is_number()) {
            pts.push_back({jp.get<double>()});
        } else if (jp.is_array() && !jp.empty()) {
            Point p;
            for (const auto& c : jp) {
                if (!c.is_number()) {
                    throw std::invalid_argument(
                        "gallery 'constant': point coordinates must be numbers");
                }
                p.push_back(c.get<double>());
            }
            pts.push_back(std::move(p));
        } else {
            throw std::invalid_argument(
                "gallery 'constant': each point must be a number or an array of numbers");
        }
    }
    auto [lo, hi] = domain_param(params, "constant", -1.0, 1.0);
    CompactSet value(pts, 1e-12);  // validates dimensions up front
    const int dim = value.dim();

    auto ev = [pts](double, int) { return pts; };
    SetValuedFunction f("constant", lo, hi, dim, ev);

    AnalyticData data;
    data.derivative_field = [pts, lo, hi, dim](double x0, Side side, int resolution,
                                               const Tolerances& tol) {
        require_open(x0, lo, hi, "constant derivative field");
        CompactSet anchors(pts, tol.dedup_tol);
        CompactSet zero(std::vector<Point>{Point(dim, 0.0)}, tol.dedup_tol);
        auto dmap = [&](const Point&) { return zero; };
        return exact_field(anchors, x0, side, resolution, dmap);
    };
    data.approximant_error = [](double) { return 0.0; };
    f.set_analytic(std::move(data));
    return f;
}

SetValuedFunction make_smooth_singleton(const nlohmann::json& params) {
    check_params(params, "smooth_singleton", {"expr", "coeffs", "domain"});
    const bool has_expr = !params.is_null() && params.contains("expr");
    const bool has_coeffs = !params.is_null() && params.contains("coeffs");
    if (has_expr == has_coeffs) {
        throw std::invalid_argument(
            "gallery 'smooth_singleton': exactly one of 'expr' or 'coeffs' is required");
    }
    Polynomial p({0.0});
    if (has_expr) {
        const auto& je = params.at("expr");
        if (!je.is_string()) {
            throw std::invalid_argument("gallery 'smooth_singleton': 'expr' must be a string");
        }
        p = parse_polynomial(je.get<std::string>());
    } else {
        const auto& jc = params.at("coeffs");
        if (!jc.is_array() || jc.empty()) {
            throw std::invalid_argument(
                "gallery 'smooth_singleton': 'coeffs' must be a nonempty array");
        }
        std::vector<double> cs;
        for (const auto& c : jc) {
            if (!c.is_number()) {
                throw std::invalid_argument(
                    "gallery 'smooth_singleton': coefficients must be numbers");
            }
            cs.push_back(c.get<double>());
        }
        p = Polynomial(cs);
    }
    auto [lo, hi] = domain_param(params, "smooth_singleton", -2.0, 2.0);
    Polynomial dp = p.derivative();

    auto ev = [p](double x, int) { return std::vector<Point>{{p.eval(x)}}; };
    SetValuedFunction f("smooth_singleton", lo, hi, 1, ev);

    AnalyticData data;
    data.derivative_field = [p, dp, lo, hi](double x0, Side side, int resolution,
                                            const Tolerances& tol) {
        require_open(x0, lo, hi, "smooth_singleton derivative field");
        CompactSet anchors(std::vector<Point>{{p.eval(x0)}}, tol.dedup_tol);
        CompactSet d(std::vector<Point>{{dp.eval(x0)}}, tol.dedup_tol);
        auto dmap = [&](const Point&) { return d; };
        return exact_field(anchors, x0, side, resolution, dmap);
    };
    f.set_analytic(std::move(data));
    return f;
}

}  // namespace

SetValuedFunction::SetValuedFunction(std::string name, double domain_lo, double domain_hi,
                                     int dim, Evaluator evaluator)
    : name_(std::move(name)),
      lo_(domain_lo),
      hi_(domain_hi),
      dim_(dim),
      evaluator_(std::move(evaluator)) {
    if (!(lo_ < hi_) || !std::isfinite(lo_) || !std::isfinite(hi_)) {
        throw std::invalid_argument("SetValuedFunction: domain must be a finite interval");
    }
    if (dim_ < 1) throw std::invalid_argument("SetValuedFunction: dim must be positive");
    if (!evaluator_) throw std::invalid_argument("SetValuedFunction: evaluator required");
}

CompactSet SetValuedFunction::eval(double x, int resolution, double dedup_tol) const {
    require_open(x, lo_, hi_, "eval of '" + name_ + "'");
    if (resolution < 1 || resolution > (1 << 22)) {
        throw std::invalid_argument("eval: resolution out of range");
    }
    CompactSet result(evaluator_(x, resolution), dedup_tol);
    if (result.dim() != dim_) {
        throw std::logic_error("eval: evaluator of '" + name_ +
                               "' returned points of unexpected dimension");
    }
    return result;
}

const AnalyticData& SetValuedFunction::analytic() const {
    if (!analytic_) {
        throw std::runtime_error("SetValuedFunction '" + name_ + "' carries no analytic data");
    }
    return *analytic_;
}

std::vector<double> sample_interval(double lo, double hi, double step) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo) {
        throw std::invalid_argument("sample_interval: invalid interval bounds");
    }
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw std::invalid_argument("sample_interval: step must be positive");
    }
    // Index nudges keep boundaries that land exactly on the lattice from
    // rounding to the wrong side; indices stay well below 2^53.
    const double i_lo = std::ceil(lo / step - 1e-9);
    const double i_hi = std::floor(hi / step + 1e-9);
    std::vector<double> xs;
    if (i_hi >= i_lo) {
        const long long a = static_cast<long long>(i_lo);
        const long long b = static_cast<long long>(i_hi);
        xs.reserve(static_cast<std::size_t>(b - a) + 3);
        for (long long i = a; i <= b; ++i) xs.push_back(static_cast<double>(i) * step);
    }
    xs.push_back(lo);
    xs.push_back(hi);
    return xs;
}

SetValuedFunction gallery(const std::string& name, const nlohmann::json& params) {
    if (name == "constant") return make_constant(params);
    if (name == "interval_growth") return make_interval_growth(params);
    if (name == "smooth_singleton") return make_smooth_singleton(params);
    if (name == "strong_example") return make_strong_example(params);
    if (name == "two_curves_2d") return make_two_curves_2d(params);
    if (name == "two_powers") return make_two_powers(params);
    throw std::invalid_argument("gallery: unknown name '" + name + "'");
}

std::vector<std::string> gallery_names() {
    return {"constant",       "interval_growth", "smooth_singleton",
            "strong_example", "two_curves_2d",   "two_powers"};
}

std::vector<GalleryInfo> gallery_info() {
    return {
        {"constant", "fixed finite set A0 at every x", "points (required), domain=[-1,1]"},
        {"interval_growth", "x -> [0, 1+x] on (-1,1)", "none"},
        {"smooth_singleton", "x -> {f(x)} for a polynomial f", "expr or coeffs, domain=[-2,2]"},
        {"strong_example", "x -> [0,2-x^2] for x<0, [0,2+x] u {-x^2} for x>=0", "none"},
        {"two_curves_2d", "x -> {(x^a,x^b), (x^(a+1),x^(b+1))} in R^2", "alpha=1, beta=2"},
        {"two_powers", "x -> {x^a, x^b} on (0,2)", "alpha=1, beta=2"},
    };
}

SetValuedFunction make_custom(const nlohmann::json& config) {
    if (!config.is_object()) {
        throw std::invalid_argument("custom svf: config must be a JSON object");
    }
    for (const auto& item : config.items()) {
        const std::string& k = item.key();
        if (k != "domain" && k != "grid_scale" && k != "pieces") {
            throw std::invalid_argument("custom svf: unknown key '" + k + "'");
        }
    }
    if (!config.contains("domain") || !config.contains("pieces")) {
        throw std::invalid_argument("custom svf: 'domain' and 'pieces' are required");
    }
    const auto& jd = config.at("domain");
    if (!jd.is_array() || jd.size() != 2 || !jd[0].is_number() || !jd[1].is_number()) {
        throw std::invalid_argument("custom svf: 'domain' must be [lo, hi]");
    }
    const double lo = jd[0].get<double>();
    const double hi = jd[1].get<double>();
    if (!(lo < hi)) throw std::invalid_argument("custom svf: domain must satisfy lo < hi");

    struct Piece {
        double u, v;
        std::vector<std::pair<Polynomial, Polynomial>> intervals;
        std::vector<Polynomial> points;
    };
    auto parse_expr = [](const nlohmann::json& j, const char* what) {
        if (j.is_number()) return Polynomial({j.get<double>()});
        if (j.is_string()) return parse_polynomial(j.get<std::string>());
        throw std::invalid_argument(std::string("custom svf: ") + what +
                                    " must be a number or an expression string");
    };

    const auto& jpieces = config.at("pieces");
    if (!jpieces.is_array() || jpieces.empty()) {
        throw std::invalid_argument("custom svf: 'pieces' must be a nonempty array");
    }
    std::vector<Piece> pieces;
    for (const auto& jp : jpieces) {
        if (!jp.is_object()) throw std::invalid_argument("custom svf: each piece is an object");
        for (const auto& item : jp.items()) {
            const std::string& k = item.key();
            if (k != "on" && k != "intervals" && k != "points") {
                throw std::invalid_argument("custom svf: unknown piece key '" + k + "'");
            }
        }
        if (!jp.contains("on")) throw std::invalid_argument("custom svf: piece needs 'on'");
        const auto& jon = jp.at("on");
        if (!jon.is_array() || jon.size() != 2 || !jon[0].is_number() || !jon[1].is_number()) {
            throw std::invalid_argument("custom svf: piece 'on' must be [lo, hi]");
        }
        Piece piece;
        piece.u = jon[0].get<double>();
        piece.v = jon[1].get<double>();
        if (!(piece.u <= piece.v)) {
            throw std::invalid_argument("custom svf: piece 'on' must satisfy lo <= hi");
        }
        if (jp.contains("intervals")) {
            const auto& ji = jp.at("intervals");
            if (!ji.is_array()) {
                throw std::invalid_argument("custom svf: 'intervals' must be an array");
            }
            for (const auto& jiv : ji) {
                if (!jiv.is_array() || jiv.size() != 2) {
                    throw std::invalid_argument(
                        "custom svf: each interval must be [lower, upper]");
                }
                piece.intervals.emplace_back(parse_expr(jiv[0], "interval bound"),
                                             parse_expr(jiv[1], "interval bound"));
            }
        }
        if (jp.contains("points")) {
            const auto& jpt = jp.at("points");
            if (!jpt.is_array()) {
                throw std::invalid_argument("custom svf: 'points' must be an array");
            }
            for (const auto& je : jpt) piece.points.push_back(parse_expr(je, "point"));
        }
        if (piece.intervals.empty() && piece.points.empty()) {
            throw std::invalid_argument(
                "custom svf: piece needs at least one interval or point");
        }
        pieces.push_back(std::move(piece));
    }

    double scale = 0.0;
    if (config.contains("grid_scale")) {
        const auto& js = config.at("grid_scale");
        if (!js.is_number() || !(js.get<double>() > 0.0)) {
            throw std::invalid_argument("custom svf: 'grid_scale' must be a positive number");
        }
        scale = js.get<double>();
    } else {
        // Longest interval length at the domain midpoint, if any piece covers it.
        const double xm = 0.5 * (lo + hi);
        for (const auto& piece : pieces) {
            if (xm < piece.u || xm > piece.v) continue;
            for (const auto& [plo, phi] : piece.intervals) {
                scale = std::max(scale, phi.eval(xm) - plo.eval(xm));
            }
            break;
        }
        if (!(scale > 0.0)) scale = 1.0;
    }

    auto ev = [pieces, scale](double x, int resolution) {
        const Piece* active = nullptr;
        for (const auto& piece : pieces) {
            if (x >= piece.u && x <= piece.v) {
                active = &piece;
                break;
            }
        }
        if (active == nullptr) {
            throw std::domain_error("custom svf: no piece covers x = " + std::to_string(x));
        }
        const double step = scale / resolution;
        std::vector<Point> pts;
        for (const auto& [plo, phi] : active->intervals) {
            const double a = plo.eval(x);
            const double b = phi.eval(x);
            if (b < a) {
                throw std::domain_error("custom svf: interval inverted at x = " +
                                        std::to_string(x));
            }
            for (double v : sample_interval(a, b, step)) pts.push_back({v});
        }
        for (const auto& pe : active->points) pts.push_back({pe.eval(x)});
        return pts;
    };
    return SetValuedFunction("custom", lo, hi, 1, ev);
}

}  // namespace svc
