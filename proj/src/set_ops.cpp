#include "svcalc/set_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace svc {

namespace {

void check_dims(const CompactSet& a, const CompactSet& b, const char* who) {
    if (a.dim() != b.dim()) throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

// Indices of the elements of A nearest to x, with absolute tie slack.
std::vector<std::size_t> proj_indices(const Point& x, const CompactSet& a, double tie_tol) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : a.points()) best = std::min(best, distance(x, p));
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (distance(x, a[i]) <= best + tie_tol) out.push_back(i);
    return out;
}

}  // namespace

double dist_point_set(const Point& x, const CompactSet& a) {
    if (static_cast<int>(x.size()) != a.dim())
        throw std::invalid_argument("dist_point_set: dimension mismatch");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : a.points()) best = std::min(best, distance(x, p));
    return best;
}

CompactSet proj_point_set(const Point& x, const CompactSet& a, const Tolerances& tol) {
    if (static_cast<int>(x.size()) != a.dim())
        throw std::invalid_argument("proj_point_set: dimension mismatch");
    std::vector<Point> pts;
    for (std::size_t i : proj_indices(x, a, tol.proj_tie_tol)) pts.push_back(a[i]);
    return CompactSet(std::move(pts), tol.dedup_tol);
}

MetricPairSet::MetricPairSet(const CompactSet& a, const CompactSet& b,
                             std::vector<std::pair<std::size_t, std::size_t>> idx)
    : idx_(std::move(idx)), dim_(a.dim()) {
    pairs_.reserve(idx_.size());
    for (const auto& [i, j] : idx_) pairs_.emplace_back(a[i], b[j]);
}

MetricPairSet metric_pairs(const CompactSet& a, const CompactSet& b, const Tolerances& tol) {
    check_dims(a, b, "metric_pairs");
    std::vector<std::pair<std::size_t, std::size_t>> idx;
    idx.reserve(a.size() + b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j : proj_indices(a[i], b, tol.proj_tie_tol)) idx.emplace_back(i, j);
    for (std::size_t j = 0; j < b.size(); ++j)
        for (std::size_t i : proj_indices(b[j], a, tol.proj_tie_tol)) idx.emplace_back(i, j);
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return MetricPairSet(a, b, std::move(idx));
}

double hausdorff_via_pairs(const CompactSet& a, const CompactSet& b, const Tolerances& tol) {
    const auto mp = metric_pairs(a, b, tol);
    double m = 0.0;
    for (const auto& [p, q] : mp.pairs()) m = std::max(m, distance(p, q));
    return m;
}

double hausdorff_direct(const CompactSet& a, const CompactSet& b) {
    check_dims(a, b, "hausdorff_direct");
    double m = 0.0;
    for (const auto& p : a.points()) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& q : b.points()) best = std::min(best, distance(p, q));
        m = std::max(m, best);
    }
    for (const auto& q : b.points()) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : a.points()) best = std::min(best, distance(p, q));
        m = std::max(m, best);
    }
    return m;
}

std::vector<std::vector<Point>> metric_chains(const std::vector<CompactSet>& sets,
                                              const Tolerances& tol) {
    if (sets.empty()) throw std::invalid_argument("metric_chains: no sets");
    for (const auto& s : sets) check_dims(sets.front(), s, "metric_chains");

    const std::size_t m = sets.size() - 1;
    std::vector<std::vector<Point>> chains;
    if (m == 0) {
        for (const auto& p : sets[0].points()) chains.push_back({p});
        return chains;
    }

    // Successor lists per consecutive pair; every node has at least one
    // successor, so depth-first enumeration never dead-ends.
    std::vector<std::vector<std::vector<std::size_t>>> next(m);
    for (std::size_t k = 0; k < m; ++k) {
        next[k].assign(sets[k].size(), {});
        const MetricPairSet mp = metric_pairs(sets[k], sets[k + 1], tol);
        for (const auto& [i, j] : mp.indices()) next[k][i].push_back(j);
    }

    std::vector<std::size_t> stack;
    auto dfs = [&](auto&& self, std::size_t depth) -> void {
        if (depth == m) {
            std::vector<Point> chain;
            chain.reserve(m + 1);
            for (std::size_t k = 0; k <= m; ++k) chain.push_back(sets[k][stack[k]]);
            chains.push_back(std::move(chain));
            return;
        }
        for (std::size_t j : next[depth][stack.back()]) {
            stack.push_back(j);
            self(self, depth + 1);
            stack.pop_back();
        }
    };
    for (std::size_t i = 0; i < sets[0].size(); ++i) {
        stack.assign(1, i);
        dfs(dfs, 0);
    }

    std::sort(chains.begin(), chains.end(), [](const auto& x, const auto& y) {
        for (std::size_t k = 0; k < x.size(); ++k) {
            if (lex_less(x[k], y[k])) return true;
            if (lex_less(y[k], x[k])) return false;
        }
        return false;
    });
    return chains;
}

CompactSet metric_linear_combination(const std::vector<double>& lambdas,
                                     const std::vector<CompactSet>& sets,
                                     const Tolerances& tol) {
    if (lambdas.size() != sets.size())
        throw std::invalid_argument("metric_linear_combination: count mismatch");
    const auto chains = metric_chains(sets, tol);
    std::vector<Point> pts;
    pts.reserve(chains.size());
    for (const auto& chain : chains) {
        Point s(static_cast<std::size_t>(sets[0].dim()), 0.0);
        for (std::size_t k = 0; k < chain.size(); ++k)
            for (std::size_t c = 0; c < s.size(); ++c) s[c] += lambdas[k] * chain[k][c];
        pts.push_back(std::move(s));
    }
    return CompactSet(std::move(pts), tol.dedup_tol);
}

CompactSet metric_difference(const CompactSet& a, const CompactSet& b, const Tolerances& tol) {
    check_dims(a, b, "metric_difference");
    const auto mp = metric_pairs(a, b, tol);
    std::vector<Point> pts;
    pts.reserve(mp.size());
    for (const auto& [p, q] : mp.pairs()) pts.push_back(sub(p, q));
    return CompactSet(std::move(pts), tol.dedup_tol);
}

}  // namespace svc
