#pragma once

#include <stdexcept>
#include <vector>

#include "svcalc/compact_set.hpp"

namespace svc {

enum class Side { right, left };

inline const char* to_string(Side s) { return s == Side::right ? "right" : "left"; }

/// Geometric ladder of probe steps h_k = h0 * ratio^k, k = 0..count-1,
/// truncated at the smallest rung still >= floor.
struct HLadder {
    double h0 = 0.25;
    double ratio = 0.5;
    int count = 12;
    double floor = 1e-6;

    std::vector<double> rungs() const;
};

/// One-sided difference-quotient data at a single anchor.
struct AnchorDerivative {
    Point anchor;
    CompactSet derivative;           // quotient set at the finest rung
    std::vector<double> residuals;   // haus between consecutive rungs, coarse to fine
    bool converged = false;          // final residual within conv_tol
};

/// Per-anchor derivative estimates of F at x0 from one side.
struct DerivativeField {
    double x0 = 0.0;
    Side side = Side::right;
    int resolution = 0;
    std::vector<AnchorDerivative> anchors;
    bool converged = false;          // all anchors converged
};

/// Signals an operation that requires a converged derivative field.
struct unconverged_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Default convergence tolerance: bounded below by 1e-6, scaled to the
/// sampling granularity of the image otherwise.
double default_conv_tol(const CompactSet& image_at_x0, int resolution);

}  // namespace svc
