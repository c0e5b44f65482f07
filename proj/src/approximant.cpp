#include "svcalc/approximant.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "svcalc/calculus.hpp"
#include "svcalc/set_ops.hpp"

namespace svc {

namespace {

void check_field(const CompactSet& image, const DerivativeField& field, Side expected) {
    if (field.side != expected) {
        throw std::invalid_argument("approximant: derivative field has the wrong side");
    }
    if (!field.converged) {
        throw unconverged_error(std::string("approximant: ") + to_string(expected) +
                                " derivative field has unconverged anchors");
    }
    if (field.anchors.size() != image.size()) {
        throw std::invalid_argument("approximant: field anchors do not match F(x0)");
    }
    for (std::size_t i = 0; i < image.size(); ++i) {
        if (field.anchors[i].anchor != image[i]) {
            throw std::invalid_argument("approximant: field anchors do not match F(x0)");
        }
    }
}

}  // namespace

const char* to_string(CurveSide s) {
    switch (s) {
        case CurveSide::right: return "right";
        case CurveSide::left: return "left";
        default: return "both";
    }
}

LocalLinearApproximant::LocalLinearApproximant(CompactSet image,
                                               std::optional<DerivativeField> right,
                                               std::optional<DerivativeField> left)
    : image_(std::move(image)), right_(std::move(right)), left_(std::move(left)) {
    if (!right_ && !left_) {
        throw std::invalid_argument("approximant: at least one derivative field is required");
    }
    if (right_) check_field(image_, *right_, Side::right);
    if (left_) check_field(image_, *left_, Side::left);
    if (right_ && left_ && right_->x0 != left_->x0) {
        throw std::invalid_argument("approximant: fields disagree on x0");
    }
    x0_ = right_ ? right_->x0 : left_->x0;
}

LocalLinearApproximant LocalLinearApproximant::one_sided(CompactSet image_at_x0,
                                                         DerivativeField field) {
    if (field.side == Side::right) {
        return LocalLinearApproximant(std::move(image_at_x0), std::move(field), std::nullopt);
    }
    return LocalLinearApproximant(std::move(image_at_x0), std::nullopt, std::move(field));
}

LocalLinearApproximant LocalLinearApproximant::two_sided(CompactSet image_at_x0,
                                                         DerivativeField right,
                                                         DerivativeField left) {
    return LocalLinearApproximant(std::move(image_at_x0), std::move(right), std::move(left));
}

const DerivativeField& LocalLinearApproximant::field(Side s) const {
    const auto& opt = s == Side::right ? right_ : left_;
    if (!opt) {
        throw std::runtime_error(std::string("approximant: no ") + to_string(s) + " field");
    }
    return *opt;
}

CompactSet LocalLinearApproximant::anchored(const Point& y0, double x, double dedup_tol) const {
    const auto idx = image_.find(y0, dedup_tol);
    if (!idx) throw std::invalid_argument("approximant: unknown anchor");
    const DerivativeField& fld = field(x >= x0_ ? Side::right : Side::left);
    return scale_translate(fld.anchors[*idx].derivative, x - x0_, image_[*idx]);
}

CompactSet LocalLinearApproximant::eval(double x, double dedup_tol) const {
    const DerivativeField& fld = field(x >= x0_ ? Side::right : Side::left);
    const double lambda = x - x0_;
    std::vector<Point> pts;
    for (std::size_t i = 0; i < fld.anchors.size(); ++i) {
        const Point& y = fld.anchors[i].anchor;
        for (const Point& d : fld.anchors[i].derivative.points()) {
            Point p(y.size());
            for (std::size_t c = 0; c < y.size(); ++c) p[c] = y[c] + lambda * d[c];
            pts.push_back(std::move(p));
        }
    }
    return CompactSet(std::move(pts), dedup_tol);
}

LocalLinearApproximant build_approximant(const SetValuedFunction& f, double x0, CurveSide sides,
                                         const HLadder& ladder, double conv_tol, int resolution,
                                         const Tolerances& tol) {
    CompactSet image = f.eval(x0, resolution, tol.dedup_tol);
    if (sides == CurveSide::both) {
        DerivativeField right =
            one_sided_derivative(f, x0, Side::right, ladder, conv_tol, resolution, tol);
        DerivativeField left =
            one_sided_derivative(f, x0, Side::left, ladder, conv_tol, resolution, tol);
        return LocalLinearApproximant::two_sided(std::move(image), std::move(right),
                                                 std::move(left));
    }
    const Side side = sides == CurveSide::right ? Side::right : Side::left;
    return LocalLinearApproximant::one_sided(
        std::move(image), one_sided_derivative(f, x0, side, ladder, conv_tol, resolution, tol));
}

LocalLinearApproximant analytic_approximant(const SetValuedFunction& f, double x0,
                                            CurveSide sides, int resolution,
                                            const Tolerances& tol) {
    const AnalyticData& data = f.analytic();
    if (!data.derivative_field) {
        throw std::runtime_error("analytic_approximant: no derivative field available");
    }
    CompactSet image = f.eval(x0, resolution, tol.dedup_tol);
    if (sides == CurveSide::both) {
        return LocalLinearApproximant::two_sided(
            std::move(image), data.derivative_field(x0, Side::right, resolution, tol),
            data.derivative_field(x0, Side::left, resolution, tol));
    }
    const Side side = sides == CurveSide::right ? Side::right : Side::left;
    return LocalLinearApproximant::one_sided(std::move(image),
                                             data.derivative_field(x0, side, resolution, tol));
}

ErrorCurve error_curve(const SetValuedFunction& f, const LocalLinearApproximant& approx,
                       const HLadder& ladder, CurveSide side, int resolution,
                       const Tolerances& tol) {
    const double x0 = approx.x0();
    const std::vector<double> hs = ladder.rungs();
    const bool right = side != CurveSide::left;
    const bool left = side != CurveSide::right;
    if ((right && !f.contains(x0 + hs.front())) || (left && !f.contains(x0 - hs.front()))) {
        throw std::domain_error("error_curve: ladder leaves the domain of '" + f.name() +
                                    "'");
    }
    ErrorCurve curve;
    curve.x0 = x0;
    curve.side = side;
    curve.samples.reserve(hs.size());
    for (double h : hs) {
        double err = 0.0;
        if (right) {
            const double x = x0 + h;
            err = std::max(err, hausdorff_via_pairs(f.eval(x, resolution, tol.dedup_tol),
                                                    approx.eval(x, tol.dedup_tol), tol));
        }
        if (left) {
            const double x = x0 - h;
            err = std::max(err, hausdorff_via_pairs(f.eval(x, resolution, tol.dedup_tol),
                                                    approx.eval(x, tol.dedup_tol), tol));
        }
        curve.samples.push_back(ErrorSample{h, err});
    }
    return curve;
}

NoiseFloor default_noise_floor(const CompactSet& image_at_x0, int resolution) {
    if (resolution < 1) {
        throw std::invalid_argument("default_noise_floor: resolution must be positive");
    }
    return NoiseFloor{0.0, 4.0 * set_extent(image_at_x0) / resolution};
}

OrderFit fit_order(const std::vector<ErrorSample>& samples, const NoiseFloor& floor) {
    if (samples.empty()) throw std::invalid_argument("fit_order: no samples");
    std::vector<ErrorSample> usable;
    for (const auto& s : samples) {
        if (!(s.h > 0.0) || !std::isfinite(s.h) || !std::isfinite(s.err) || s.err < 0.0) {
            throw std::invalid_argument("fit_order: samples must have h > 0 and err >= 0");
        }
        if (s.err > floor.at(s.h)) usable.push_back(s);
    }
    OrderFit fit;
    if (usable.empty()) {
        fit.exact = true;
        fit.slope = std::numeric_limits<double>::infinity();
        return fit;
    }
    if (usable.size() < 3) {
        throw std::runtime_error("fit_order: fewer than three rungs above the noise floor");
    }
    const double n = static_cast<double>(usable.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& s : usable) {
        const double lx = std::log(s.h);
        const double ly = std::log(s.err);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double det = n * sxx - sx * sx;
    // Guard against a degenerate abscissa spread, allowing for summation
    // round-off when all ln(h) coincide.
    if (det <= 1e-12 * n * std::max(1.0, sxx)) {
        throw std::invalid_argument("fit_order: h values must be distinct");
    }
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0.0;
    fit.h_min = usable.front().h;
    fit.h_max = usable.front().h;
    for (const auto& s : usable) {
        const double r = std::log(s.err) - (fit.slope * std::log(s.h) + fit.intercept);
        ss += r * r;
        fit.h_min = std::min(fit.h_min, s.h);
        fit.h_max = std::max(fit.h_max, s.h);
    }
    fit.rms_residual = std::sqrt(ss / n);
    fit.rungs_used = static_cast<int>(usable.size());
    return fit;
}

OrderFit fit_order(const ErrorCurve& curve, const NoiseFloor& floor) {
    return fit_order(curve.samples, floor);
}

OrderFit alpha_probe(const SetValuedFunction& f, const DerivativeField& field,
                     const HLadder& ladder, const Tolerances& tol, const NoiseFloor& floor,
                     std::vector<ErrorSample>* samples_out) {
    std::vector<ErrorSample> samples;
    for (double h : ladder.rungs()) {
        samples.push_back(ErrorSample{h, uniform_deviation(f, h, field, tol)});
    }
    if (samples_out != nullptr) *samples_out = samples;
    return fit_order(samples, floor);
}

}  // namespace svc
