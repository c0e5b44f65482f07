#pragma once

namespace svc {

/// Numeric tolerances shared by the set operations.
///  - proj_tie_tol: absolute slack when collecting near-ties among nearest points
///  - dedup_tol:    two points closer than this collapse to one set element
struct Tolerances {
    double proj_tie_tol = 1e-9;
    double dedup_tol = 1e-12;
};

}  // namespace svc
