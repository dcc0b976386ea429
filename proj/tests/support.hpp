#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "incbessel/parameters.hpp"

namespace testsupport {

/// |a - b| / max(|a|, |b|), zero when both vanish.
template <class Real>
Real rel_diff(Real a, Real b) {
    using std::abs;
    const Real scale = std::max(abs(a), abs(b));
    return scale == 0 ? Real(0) : abs(a - b) / scale;
}

/// x in {1,4,10} x y in {0,2,5} x nu in {0,1,3}.
inline std::vector<incbessel::Parameters> test_grid() {
    std::vector<incbessel::Parameters> g;
    for (double x : {1.0, 4.0, 10.0})
        for (double y : {0.0, 2.0, 5.0})
            for (double nu : {0.0, 1.0, 3.0}) g.push_back({x, y, nu});
    return g;
}

// K_nu(x, y) to 25 digits, from an independent arbitrary-precision quadrature.
struct Reference {
    incbessel::Parameters p;
    double value;
};

inline const std::array<Reference, 13>& references() {
    static const std::array<Reference, 13> r{{
        {{4, 0, 3}, 0.002423398368658084910676875},
        {{4, 2, 3}, 0.0004170423397336784428949363},
        {{4, 4, 3}, 0.00007505279837980130231248369},
        {{10, 0, 0}, 0.00000415696892968532427740286},
        {{10, 5, 0}, 4.445980429461303698537687e-8},
        {{10, 10, 0}, 5.741237815336524292716702e-10},
        {{1, 2, 0}, 0.06176699783935735824646206},
        {{1, 0, 0}, 0.2193839343955202736771638},
        {{3, 3, 0}, 0.001243994328013123085232469},
        {{2, 4, -3}, 0.02063609243368215792230948},
        {{5, 10, 0}, 0.0000004322663739370452078946289},
        {{50, 0, 0}, 3.783264029550459018698968e-24},
        {{1, 5, 3}, 0.001990305825954397125397359},
    }};
    return r;
}

}  // namespace testsupport
