#pragma once

#include <optional>
#include <vector>

#include "svcalc/compact_set.hpp"
#include "svcalc/derivative_field.hpp"
#include "svcalc/svf.hpp"
#include "svcalc/tolerances.hpp"

namespace svc {

enum class CurveSide { right, left, both };

const char* to_string(CurveSide s);

/// L(x) = union over anchors y of {y} + (x - x0) * D|_y, with the side of the
/// derivative field chosen by the sign of x - x0 (right at x = x0). Requires
/// converged fields whose anchors equal the stored image of F at x0.
class LocalLinearApproximant {
public:
    static LocalLinearApproximant one_sided(CompactSet image_at_x0, DerivativeField field);
    static LocalLinearApproximant two_sided(CompactSet image_at_x0, DerivativeField right,
                                            DerivativeField left);

    double x0() const { return x0_; }
    const CompactSet& image_at_x0() const { return image_; }
    bool has(Side s) const { return s == Side::right ? right_.has_value() : left_.has_value(); }
    const DerivativeField& field(Side s) const;

    /// {y0} + (x - x0) * D|_{y0}; y0 must be an anchor (within dedup_tol).
    CompactSet anchored(const Point& y0, double x, double dedup_tol = 1e-12) const;

    /// Union of anchored sets over all anchors; returns the stored image at
    /// x = x0 exactly.
    CompactSet eval(double x, double dedup_tol = 1e-12) const;

private:
    LocalLinearApproximant(CompactSet image, std::optional<DerivativeField> right,
                           std::optional<DerivativeField> left);

    CompactSet image_;
    std::optional<DerivativeField> right_;
    std::optional<DerivativeField> left_;
    double x0_ = 0.0;
};

/// Numeric construction: estimates the requested one-sided fields with
/// one_sided_derivative and assembles the approximant. Throws
/// unconverged_error if a requested field fails to converge.
LocalLinearApproximant build_approximant(const SetValuedFunction& f, double x0, CurveSide sides,
                                         const HLadder& ladder, double conv_tol, int resolution,
                                         const Tolerances& tol = {});

/// Same assembly from the closed-form fields of a gallery entry.
LocalLinearApproximant analytic_approximant(const SetValuedFunction& f, double x0,
                                            CurveSide sides, int resolution,
                                            const Tolerances& tol = {});

struct ErrorSample {
    double h = 0.0;
    double err = 0.0;
};

struct ErrorCurve {
    double x0 = 0.0;
    CurveSide side = CurveSide::both;
    std::vector<ErrorSample> samples;  // h strictly decreasing
};

/// err(h) = haus(F(x0 + sigma h), L(x0 + sigma h)) down the ladder; for
/// side = both the maximum of the two one-sided errors.
ErrorCurve error_curve(const SetValuedFunction& f, const LocalLinearApproximant& approx,
                       const HLadder& ladder, CurveSide side, int resolution,
                       const Tolerances& tol = {});

/// Error level attributable to sampling granularity: floor(h) = absolute +
/// per_h * h. Samples at or below the floor are excluded from order fits.
struct NoiseFloor {
    double absolute = 0.0;
    double per_h = 0.0;
    double at(double h) const { return absolute + per_h * h; }
};

NoiseFloor default_noise_floor(const CompactSet& image_at_x0, int resolution);

struct OrderFit {
    bool exact = false;  // every sample at or below the floor
    double slope = 0.0;
    double intercept = 0.0;  // in ln-space
    double rms_residual = 0.0;
    int rungs_used = 0;
    double h_min = 0.0;
    double h_max = 0.0;
};

/// Least-squares line through (ln h, ln err) over the usable samples.
/// All samples excluded -> exact sentinel; 1 or 2 usable -> std::runtime_error.
OrderFit fit_order(const std::vector<ErrorSample>& samples, const NoiseFloor& floor = {});
OrderFit fit_order(const ErrorCurve& curve, const NoiseFloor& floor = {});

/// Fits the decay order of the uniform deviation sup_y haus(dd|_y(h), D|_y)
/// down the ladder; the slope estimates the differentiability exponent
/// (1 = strong). Optionally reports the deviation samples.
OrderFit alpha_probe(const SetValuedFunction& f, const DerivativeField& field,
                     const HLadder& ladder, const Tolerances& tol = {},
                     const NoiseFloor& floor = {},
                     std::vector<ErrorSample>* samples_out = nullptr);

}  // namespace svc
