#pragma once

// The worked data shared by the tests, the CLI generator, and the docs.

#include <wallkit/torusdata.hpp>

namespace wallkit {

// Rank-m subtorus of the (m+1)-torus with cocharacter basis e_j - e_{j+1};
// the weight quotient is a line and the walls form a chain arrangement.
inline TorusData example_am(std::size_t m) {
    if (m < 1) throw InvalidInput("chain datum needs m >= 1");
    MatZ kb(m + 1, m);
    for (std::size_t j = 0; j < m; ++j) {
        kb(j, j) = 1;
        kb(j + 1, j) = -1;
    }
    return TorusData::from_k_basis(kb);
}

// The standard strictly increasing lift for the chain datum.
inline ZVec example_am_lift(std::size_t m) {
    ZVec l(m + 1);
    for (std::size_t i = 0; i <= m; ++i) l[i] = Int(i) + 1;
    return l;
}

// Diagonal circle in the n-torus; the quotient is the cotangent bundle of
// projective (n-1)-space.
inline TorusData example_tpn(std::size_t n) {
    if (n < 2) throw InvalidInput("diagonal datum needs n >= 2");
    MatZ kb(n, 1);
    for (std::size_t i = 0; i < n; ++i) kb(i, 0) = 1;
    return TorusData::from_k_basis(kb);
}

inline ZVec example_tpn_lift(std::size_t n, bool positive = true) {
    ZVec l(n, Int(0));
    l[0] = positive ? 1 : -1;
    return l;
}

// Four-coordinate datum whose lift arrangement has four hyperplanes with one
// triple point: kernel (1,1,0,-1),(0,-1,1,0), weights (1,0,0,1),(0,1,1,1).
inline TorusData example_quad() {
    MatZ kb = MatZ::from_columns({{Int(1), Int(1), Int(0), Int(-1)}, {Int(0), Int(-1), Int(1), Int(0)}});
    MatZ a = MatZ::from_rows({{Int(1), Int(0), Int(0), Int(1)}, {Int(0), Int(1), Int(1), Int(1)}});
    return TorusData::from_parts(kb, a);
}

inline ZVec example_quad_lift() { return {Int(1), Int(1), Int(0), Int(0)}; }

} // namespace wallkit
