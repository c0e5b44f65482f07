#include "svcalc/derivative_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace svc {

std::vector<double> HLadder::rungs() const {
    if (!(h0 > 0.0) || !std::isfinite(h0)) {
        throw std::invalid_argument("HLadder: h0 must be positive");
    }
    if (!(ratio > 0.0 && ratio < 1.0)) {
        throw std::invalid_argument("HLadder: ratio must lie in (0, 1)");
    }
    if (count < 1) throw std::invalid_argument("HLadder: count must be positive");
    if (!(floor > 0.0)) throw std::invalid_argument("HLadder: floor must be positive");
    std::vector<double> hs;
    double h = h0;
    for (int k = 0; k < count && h >= floor; ++k) {
        hs.push_back(h);
        h *= ratio;
    }
    if (hs.empty()) throw std::invalid_argument("HLadder: h0 already below floor");
    return hs;
}

double default_conv_tol(const CompactSet& image_at_x0, int resolution) {
    if (resolution < 1) throw std::invalid_argument("default_conv_tol: resolution must be positive");
    return std::max(1e-6, 4.0 * set_extent(image_at_x0) / resolution);
}

}  // namespace svc
