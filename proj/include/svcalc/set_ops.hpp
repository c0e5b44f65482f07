#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "svcalc/compact_set.hpp"
#include "svcalc/tolerances.hpp"

namespace svc {

/// min |x - a| over a in A.
double dist_point_set(const Point& x, const CompactSet& a);

/// All a in A attaining dist(x, A) up to proj_tie_tol (absolute).
CompactSet proj_point_set(const Point& x, const CompactSet& a, const Tolerances& tol = {});

/// The mutual-projection pairs of two sets: (a, b) such that a is a nearest
/// point of A to b, or b is a nearest point of B to a. Every element of A
/// occurs as a first component and every element of B as a second.
class MetricPairSet {
public:
    MetricPairSet(const CompactSet& a, const CompactSet& b,
                  std::vector<std::pair<std::size_t, std::size_t>> idx);

    /// Index pairs (i into A, j into B), sorted and unique.
    const std::vector<std::pair<std::size_t, std::size_t>>& indices() const { return idx_; }
    const std::vector<std::pair<Point, Point>>& pairs() const { return pairs_; }
    std::size_t size() const { return idx_.size(); }
    int dim() const { return dim_; }

private:
    std::vector<std::pair<std::size_t, std::size_t>> idx_;
    std::vector<std::pair<Point, Point>> pairs_;
    int dim_;
};

MetricPairSet metric_pairs(const CompactSet& a, const CompactSet& b,
                            const Tolerances& tol = {});

/// max |a - b| over the metric pairs of (A, B).
double hausdorff_via_pairs(const CompactSet& a, const CompactSet& b,
                           const Tolerances& tol = {});

/// Classical two-sided sup-of-min distance; kept deliberately independent of
/// the pair machinery so the two routes can check each other.
double hausdorff_direct(const CompactSet& a, const CompactSet& b);

/// Chains (a_0, ..., a_m) with every consecutive pair a metric pair of the
/// consecutive sets. A single set yields its points as 1-tuples.
std::vector<std::vector<Point>> metric_chains(const std::vector<CompactSet>& sets,
                                              const Tolerances& tol = {});

/// { sum_i lambda_i a_i : (a_0, ..., a_m) a metric chain }.
CompactSet metric_linear_combination(const std::vector<double>& lambdas,
                                     const std::vector<CompactSet>& sets,
                                     const Tolerances& tol = {});

/// { a - b : (a, b) a metric pair of (A, B) }. Satisfies ||A - B|| = haus(A, B).
CompactSet metric_difference(const CompactSet& a, const CompactSet& b,
                             const Tolerances& tol = {});

}  // namespace svc
