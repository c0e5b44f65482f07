#include "svcalc/calculus.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "svcalc/set_ops.hpp"

namespace svc {

namespace {

// Difference quotients bucketed by anchor index of a0. Every anchor owns at
// least one pair because metric pairs cover both sets.
std::vector<CompactSet> quotient_sets(const CompactSet& a0, const CompactSet& a1, double x0,
                                      double x, const Tolerances& tol) {
    const double dx = x - x0;
    const MetricPairSet pairs = metric_pairs(a0, a1, tol);
    std::vector<std::vector<Point>> buckets(a0.size());
    for (const auto& [i, j] : pairs.indices()) {
        Point q(a0.dim());
        for (int c = 0; c < a0.dim(); ++c) q[c] = (a1[j][c] - a0[i][c]) / dx;
        buckets[i].push_back(std::move(q));
    }
    std::vector<CompactSet> out;
    out.reserve(buckets.size());
    for (auto& bucket : buckets) out.emplace_back(std::move(bucket), tol.dedup_tol);
    return out;
}

void check_probe(const SetValuedFunction& f, double x0, double x) {
    if (x == x0) throw std::invalid_argument("divided difference requires x != x0");
    if (!f.contains(x0) || !f.contains(x)) {
        throw std::domain_error("divided difference probe leaves the domain of '" + f.name() +
                                "'");
    }
}

}  // namespace

std::vector<CompactSet> anchored_dd_all(const SetValuedFunction& f, double x0, double x,
                                        int resolution, const Tolerances& tol) {
    check_probe(f, x0, x);
    const CompactSet a0 = f.eval(x0, resolution, tol.dedup_tol);
    const CompactSet a1 = f.eval(x, resolution, tol.dedup_tol);
    return quotient_sets(a0, a1, x0, x, tol);
}

CompactSet anchored_dd(const SetValuedFunction& f, double x0, double x, const Point& y0,
                       int resolution, const Tolerances& tol) {
    check_probe(f, x0, x);
    const CompactSet a0 = f.eval(x0, resolution, tol.dedup_tol);
    const auto idx = a0.find(y0, tol.dedup_tol);
    if (!idx) {
        throw std::invalid_argument("anchored_dd: anchor is not a point of F(x0) at this "
                                    "resolution");
    }
    const CompactSet a1 = f.eval(x, resolution, tol.dedup_tol);
    return quotient_sets(a0, a1, x0, x, tol)[*idx];
}

CompactSet full_dd(const SetValuedFunction& f, double x0, double x, int resolution,
                   const Tolerances& tol) {
    check_probe(f, x0, x);
    const CompactSet a0 = f.eval(x0, resolution, tol.dedup_tol);
    const CompactSet a1 = f.eval(x, resolution, tol.dedup_tol);
    const CompactSet anchored = set_union(quotient_sets(a0, a1, x0, x, tol), tol.dedup_tol);

    // Independent route: the metric difference of the images, rescaled.
    const CompactSet diff = metric_difference(a1, a0, tol);
    const CompactSet scaled =
        scale_translate(diff, 1.0 / (x - x0), Point(static_cast<std::size_t>(a0.dim()), 0.0));
    const double gap = hausdorff_direct(anchored, scaled);
    if (gap > 1e-9 * std::max(1.0, set_norm(anchored))) {
        throw std::logic_error("full_dd: anchored union and scaled metric difference disagree");
    }
    return anchored;
}

DerivativeField one_sided_derivative(const SetValuedFunction& f, double x0, Side side,
                                     const HLadder& ladder, double conv_tol, int resolution,
                                     const Tolerances& tol) {
    if (!(conv_tol > 0.0)) {
        throw std::invalid_argument("one_sided_derivative: conv_tol must be positive");
    }
    const std::vector<double> hs = ladder.rungs();
    if (hs.size() < 2) {
        throw std::invalid_argument(
            "one_sided_derivative: ladder truncates to fewer than two rungs");
    }
    const double sign = side == Side::right ? 1.0 : -1.0;
    if (!f.contains(x0) || !f.contains(x0 + sign * hs.front())) {
        throw std::domain_error("one_sided_derivative: ladder leaves the domain of '" +
                                f.name() + "'");
    }

    const CompactSet a0 = f.eval(x0, resolution, tol.dedup_tol);
    std::vector<std::vector<double>> residuals(a0.size());
    std::vector<CompactSet> prev;
    std::vector<CompactSet> cur;
    for (std::size_t k = 0; k < hs.size(); ++k) {
        const double x = x0 + sign * hs[k];
        if (x == x0) {
            throw std::invalid_argument("one_sided_derivative: rung underflows to x == x0");
        }
        const CompactSet a1 = f.eval(x, resolution, tol.dedup_tol);
        cur = quotient_sets(a0, a1, x0, x, tol);
        if (k > 0) {
            for (std::size_t i = 0; i < cur.size(); ++i) {
                residuals[i].push_back(hausdorff_direct(prev[i], cur[i]));
            }
        }
        prev = std::move(cur);
    }

    DerivativeField field;
    field.x0 = x0;
    field.side = side;
    field.resolution = resolution;
    field.converged = true;
    field.anchors.reserve(a0.size());
    for (std::size_t i = 0; i < a0.size(); ++i) {
        const bool ok = residuals[i].back() <= conv_tol;
        field.anchors.push_back(
            AnchorDerivative{a0[i], std::move(prev[i]), std::move(residuals[i]), ok});
        field.converged = field.converged && ok;
    }
    return field;
}

CompactSet derivative_union(const DerivativeField& field, double dedup_tol) {
    if (!field.converged) {
        throw unconverged_error("derivative_union: field has unconverged anchors");
    }
    std::vector<CompactSet> parts;
    parts.reserve(field.anchors.size());
    for (const auto& a : field.anchors) parts.push_back(a.derivative);
    return set_union(parts, dedup_tol);
}

double uniform_deviation(const SetValuedFunction& f, double h, const DerivativeField& field,
                         const Tolerances& tol) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw std::invalid_argument("uniform_deviation: h must be positive");
    }
    const double sign = field.side == Side::right ? 1.0 : -1.0;
    const double x = field.x0 + sign * h;
    const CompactSet a0 = f.eval(field.x0, field.resolution, tol.dedup_tol);
    if (a0.size() != field.anchors.size()) {
        throw std::invalid_argument("uniform_deviation: field anchors do not match F(x0)");
    }
    for (std::size_t i = 0; i < a0.size(); ++i) {
        if (a0[i] != field.anchors[i].anchor) {
            throw std::invalid_argument("uniform_deviation: field anchors do not match F(x0)");
        }
    }
    const std::vector<CompactSet> qs = anchored_dd_all(f, field.x0, x, field.resolution, tol);
    double sup = 0.0;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        sup = std::max(sup, hausdorff_direct(qs[i], field.anchors[i].derivative));
    }
    return sup;
}

}  // namespace svc
