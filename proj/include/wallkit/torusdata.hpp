#pragma once

// Subtorus data: an integer basis of the cocharacter lattice of K inside the
// dense torus of C^n, the induced weight matrix of the quotient torus, and
// characters with explicit integer lifts.

#include "wallkit/errors.hpp"
#include "wallkit/matrix.hpp"
#include "wallkit/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wallkit {

struct UnimodularityReport {
    bool unimodular = true;
    std::vector<std::size_t> failing_columns; // column indices of a witnessing subset
    std::vector<Int> factors;                 // its invariant factors
};

class TorusData {
public:
    // kbasis: n x k, columns independent and spanning a saturated sublattice.
    static TorusData from_k_basis(MatZ kbasis) {
        const std::size_t n = kbasis.rows(), k = kbasis.cols();
        if (k > n) throw InvalidInput("more cocharacters than ambient rank");
        const SmithForm s = smith_normal_form(kbasis);
        if (s.rank != k) throw DependentColumns("cocharacter vectors are linearly dependent");
        for (const Int& f : s.invariant_factors())
            if (f != 0 && f != 1)
                throw NonPrimitiveBasis("cocharacter vectors span a non-saturated sublattice");
        // u * kbasis * v is diagonal with unit pivots, so the last n-k rows of
        // u present the quotient lattice in a fixed basis.
        const std::size_t d = n - k;
        MatZ a(d, n);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) = s.u(k + i, j);
        return TorusData(std::move(kbasis), std::move(a));
    }

    // a: d x n with independent rows; kbasis becomes its kernel lattice. The
    // columns of a are not required to generate Z^d, which is what lets
    // deliberately non-unimodular data be written down directly.
    static TorusData from_a_matrix(MatZ a) {
        const std::size_t d = a.rows(), n = a.cols();
        if (d > n) throw InvalidInput("quotient rank exceeds ambient rank");
        if (rank(a) != d) throw DependentColumns("weight matrix rows are linearly dependent");
        MatZ kbasis = kernel_lattice(a);
        return TorusData(std::move(kbasis), std::move(a));
    }

    // Both pieces supplied: shapes, independence, orthogonality and lattice
    // consistency are all validated.
    static TorusData from_parts(MatZ kbasis, MatZ a) {
        const std::size_t n = kbasis.rows(), k = kbasis.cols();
        if (a.cols() != n) throw InvalidInput("weight matrix arity does not match ambient rank");
        if (a.rows() != n - k) throw InvalidInput("weight matrix rank does not complement the cocharacter rank");
        if (rank(a) != a.rows()) throw DependentColumns("weight matrix rows are linearly dependent");
        const SmithForm s = smith_normal_form(kbasis);
        if (s.rank != k) throw DependentColumns("cocharacter vectors are linearly dependent");
        for (const Int& f : s.invariant_factors())
            if (f != 0 && f != 1)
                throw NonPrimitiveBasis("cocharacter vectors span a non-saturated sublattice");
        const MatZ prod = a * kbasis;
        for (std::size_t i = 0; i < prod.rows(); ++i)
            for (std::size_t j = 0; j < prod.cols(); ++j)
                if (prod(i, j) != 0) throw InvalidInput("weight matrix does not annihilate the cocharacter lattice");
        if (!same_row_lattice(kbasis.transposed(), kernel_lattice(a).transposed()))
            throw InvalidInput("cocharacter lattice is not the kernel lattice of the weight matrix");
        return TorusData(std::move(kbasis), std::move(a));
    }

    std::size_t n() const { return n_; }
    std::size_t k_rank() const { return k_; }
    std::size_t quotient_rank() const { return n_ - k_; }
    const MatZ& kbasis() const { return kbasis_; }
    const MatZ& a() const { return a_; }
    ZVec a_column(std::size_t i) const { return a_.column(i); }

    // real dimension of the associated holomorphic symplectic quotient
    std::size_t variety_dimension() const { return 2 * (n_ - k_); }

    // Every independent collection of n-k weight columns must generate Z^(n-k).
    UnimodularityReport unimodularity() const {
        UnimodularityReport rep;
        const std::size_t d = n_ - k_;
        if (d == 0 || n_ == 0) return rep;
        std::vector<bool> pick(n_, false);
        std::fill(pick.begin(), pick.begin() + d, true);
        do {
            std::vector<std::size_t> idx;
            for (std::size_t j = 0; j < n_; ++j)
                if (pick[j]) idx.push_back(j);
            MatZ sub(d, d);
            for (std::size_t c = 0; c < d; ++c)
                for (std::size_t r = 0; r < d; ++r) sub(r, c) = a_(r, idx[c]);
            const SmithForm s = smith_normal_form(sub);
            if (s.rank != d) continue; // dependent collection, not constrained
            const auto f = s.invariant_factors();
            for (const Int& x : f)
                if (x != 1) {
                    rep.unimodular = false;
                    rep.failing_columns = idx;
                    rep.factors = f;
                    return rep;
                }
        } while (std::prev_permutation(pick.begin(), pick.end()));
        return rep;
    }

private:
    TorusData(MatZ kbasis, MatZ a)
        : n_(kbasis.rows()), k_(kbasis.cols()), kbasis_(std::move(kbasis)), a_(std::move(a)) {}

    std::size_t n_, k_;
    MatZ kbasis_;
    MatZ a_;
};

// A character of K: coordinates eta in the basis dual to the kbasis columns,
// together with an explicit integer lift off the ambient torus.
struct Character {
    ZVec eta;  // length k
    ZVec lift; // length n, kbasis^T lift = eta

    static Character from_lift(const TorusData& td, ZVec lift) {
        if (lift.size() != td.n()) throw InvalidInput("lift arity does not match ambient rank");
        Character ch;
        ch.eta = mul(td.kbasis().transposed(), lift);
        ch.lift = std::move(lift);
        return ch;
    }

    static Character from_eta(const TorusData& td, ZVec eta) {
        if (eta.size() != td.k_rank()) throw InvalidInput("character arity does not match subtorus rank");
        auto lift = solve_integer(td.kbasis().transposed(), eta);
        if (!lift) throw std::logic_error("saturated lattice admits no lift; datum corrupted");
        Character ch;
        ch.eta = std::move(eta);
        ch.lift = std::move(*lift);
        return ch;
    }
};

} // namespace wallkit
