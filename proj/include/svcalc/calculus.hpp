#pragma once

#include <vector>

#include "svcalc/compact_set.hpp"
#include "svcalc/derivative_field.hpp"
#include "svcalc/svf.hpp"
#include "svcalc/tolerances.hpp"

namespace svc {

/// Difference quotients (y - y0)/(x - x0) over the metric pairs of
/// (F(x0), F(x)) anchored at y0 in F(x0).
CompactSet anchored_dd(const SetValuedFunction& f, double x0, double x, const Point& y0,
                       int resolution, const Tolerances& tol = {});

/// Difference-quotient sets for every anchor of F(x0), ordered like
/// eval(f, x0, resolution).
std::vector<CompactSet> anchored_dd_all(const SetValuedFunction& f, double x0, double x,
                                        int resolution, const Tolerances& tol = {});

/// Union of the anchored quotient sets over all anchors. Cross-checked
/// internally against the metric difference of the images scaled by
/// 1/(x - x0); a disagreement beyond tolerance raises std::logic_error.
CompactSet full_dd(const SetValuedFunction& f, double x0, double x, int resolution,
                   const Tolerances& tol = {});

/// Estimates the one-sided derivative sets of F at x0 anchor by anchor, by
/// driving the anchored quotients down the ladder x = x0 +/- h_k. Each
/// anchor's final set is the finest-rung quotient; its residual trail is the
/// Hausdorff distance between consecutive rungs; the anchor converged when the
/// final residual is <= conv_tol, and the field converged when every anchor
/// did. Non-convergence is reported, not thrown.
DerivativeField one_sided_derivative(const SetValuedFunction& f, double x0, Side side,
                                     const HLadder& ladder, double conv_tol, int resolution,
                                     const Tolerances& tol = {});

/// Union of all anchor derivative sets of a converged field.
/// Throws unconverged_error otherwise.
CompactSet derivative_union(const DerivativeField& field, double dedup_tol = 1e-12);

/// sup over anchors y of haus(quotient set at step h, field derivative at y);
/// the uniformity certificate behind strong differentiability. The field's
/// anchors must match eval(f, x0, resolution) exactly.
double uniform_deviation(const SetValuedFunction& f, double h, const DerivativeField& field,
                         const Tolerances& tol = {});

}  // namespace svc
