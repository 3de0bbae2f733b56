#pragma once

#include <cmath>

#include <densecap/qstate.hpp>

namespace densecap::testing {

inline double frobenius(const CMatrix& m) { return m.norm(); }

inline double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// Closed-form binary entropy for oracles, independent of entropy_bits().
inline double h2(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

}  // namespace densecap::testing
