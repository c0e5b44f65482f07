#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "svcalc/point.hpp"

namespace svc {

/// Nonempty finite point cloud in R^n, stored in canonical form:
/// lexicographically sorted, no two elements within dedup_tol of each other.
/// Within a duplicate cluster the lexicographically smallest point survives.
class CompactSet {
public:
    explicit CompactSet(std::vector<Point> pts, double dedup_tol = 1e-12);

    const std::vector<Point>& points() const { return pts_; }
    const Point& operator[](std::size_t i) const { return pts_[i]; }
    std::size_t size() const { return pts_.size(); }
    int dim() const { return dim_; }
    double dedup_tol() const { return dedup_tol_; }

    /// Index of the element within tol of p (nearest such), if any.
    std::optional<std::size_t> find(const Point& p, double tol) const;

    /// Exact representation equality (same canonical point list).
    bool operator==(const CompactSet& other) const;
    bool operator!=(const CompactSet& other) const { return !(*this == other); }

private:
    std::vector<Point> pts_;
    int dim_ = 0;
    double dedup_tol_ = 0.0;
};

/// Union of several sets, re-canonicalized with the given dedup tolerance.
CompactSet set_union(const std::vector<CompactSet>& sets, double dedup_tol);

/// max |a| over the set.
double set_norm(const CompactSet& a);

/// Diagonal of the bounding box; cheap extent measure used for
/// resolution-dependent tolerances.
double set_extent(const CompactSet& a);

/// lambda * A + t, elementwise.
CompactSet scale_translate(const CompactSet& a, double lambda, const Point& t);

}  // namespace svc
