#include "svcalc/compact_set.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace svc {

CompactSet::CompactSet(std::vector<Point> pts, double dedup_tol)
    : dedup_tol_(dedup_tol) {
    if (pts.empty()) throw std::invalid_argument("CompactSet: empty point list");
    if (dedup_tol < 0.0) throw std::invalid_argument("CompactSet: negative dedup tolerance");

    dim_ = static_cast<int>(pts.front().size());
    if (dim_ < 1) throw std::invalid_argument("CompactSet: zero-dimensional point");
    for (auto& p : pts) {
        if (static_cast<int>(p.size()) != dim_)
            throw std::invalid_argument("CompactSet: mixed point dimensions");
        if (!finite(p)) throw std::invalid_argument("CompactSet: non-finite coordinate");
        for (double& v : p)
            if (v == 0.0) v = 0.0;  // normalize -0.0 so canonical form is unique
    }

    std::sort(pts.begin(), pts.end(), lex_less);

    // Sorted dedup. A point within dedup_tol of a kept point has, in particular,
    // a first coordinate within dedup_tol, so only a short backward window of
    // kept points needs checking.
    const double tol2 = dedup_tol * dedup_tol;
    pts_.reserve(pts.size());
    for (const auto& p : pts) {
        bool dup = false;
        for (auto it = pts_.rbegin(); it != pts_.rend(); ++it) {
            if (p[0] - (*it)[0] > dedup_tol) break;
            if (squared_distance(p, *it) <= tol2) {
                dup = true;
                break;
            }
        }
        if (!dup) pts_.push_back(p);
    }
}

std::optional<std::size_t> CompactSet::find(const Point& p, double tol) const {
    if (static_cast<int>(p.size()) != dim_) return std::nullopt;
    // Restrict to the window whose first coordinate can be within tol.
    Point lo = p;
    lo[0] -= tol;
    auto first = std::lower_bound(pts_.begin(), pts_.end(), lo, lex_less);
    std::optional<std::size_t> best;
    double best_d2 = tol * tol;
    for (auto it = first; it != pts_.end() && (*it)[0] <= p[0] + tol; ++it) {
        const double d2 = squared_distance(p, *it);
        if (d2 <= best_d2) {
            best_d2 = d2;
            best = static_cast<std::size_t>(it - pts_.begin());
        }
    }
    return best;
}

bool CompactSet::operator==(const CompactSet& other) const {
    return dim_ == other.dim_ && pts_ == other.pts_;
}

CompactSet set_union(const std::vector<CompactSet>& sets, double dedup_tol) {
    if (sets.empty()) throw std::invalid_argument("set_union: no sets");
    std::vector<Point> all;
    for (const auto& s : sets) {
        if (s.dim() != sets.front().dim())
            throw std::invalid_argument("set_union: mixed dimensions");
        all.insert(all.end(), s.points().begin(), s.points().end());
    }
    return CompactSet(std::move(all), dedup_tol);
}

double set_norm(const CompactSet& a) {
    double m = 0.0;
    for (const auto& p : a.points()) m = std::max(m, norm(p));
    return m;
}

double set_extent(const CompactSet& a) {
    Point lo = a[0], hi = a[0];
    for (const auto& p : a.points())
        for (std::size_t i = 0; i < p.size(); ++i) {
            lo[i] = std::min(lo[i], p[i]);
            hi[i] = std::max(hi[i], p[i]);
        }
    return distance(lo, hi);
}

CompactSet scale_translate(const CompactSet& a, double lambda, const Point& t) {
    if (static_cast<int>(t.size()) != a.dim())
        throw std::invalid_argument("scale_translate: translation dimension mismatch");
    std::vector<Point> out;
    out.reserve(a.size());
    for (const auto& p : a.points()) {
        Point q(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) q[i] = lambda * p[i] + t[i];
        out.push_back(std::move(q));
    }
    return CompactSet(std::move(out), a.dedup_tol());
}

}  // namespace svc
