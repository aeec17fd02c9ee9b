#pragma once

// Systems of exact linear constraints and a Fourier-Motzkin feasibility
// decision that returns a rational witness. Strict inequalities are handled
// natively: combining a strict bound with anything yields a strict bound, so
// open chambers need no epsilon bookkeeping.

#include "wallkit/errors.hpp"
#include "wallkit/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace wallkit {

enum class Relation { GE, GT, EQ }; // coeffs.x + constant  >= 0 | > 0 | == 0

struct LinearConstraint {
    QVec coeffs;
    Rational constant;
    Relation rel = Relation::GE;
};

struct IneqSystem {
    std::size_t dim = 0;
    std::vector<LinearConstraint> constraints;

    explicit IneqSystem(std::size_t d = 0) : dim(d) {}

    void add(QVec coeffs, Rational constant, Relation rel) {
        if (coeffs.size() != dim) throw InvalidInput("constraint arity does not match system dimension");
        constraints.push_back({std::move(coeffs), std::move(constant), rel});
    }
    void add(const ZVec& coeffs, const Int& constant, Relation rel) {
        add(to_rational(coeffs), Rational(constant), rel);
    }

    bool satisfied_by(const QVec& x) const {
        for (const auto& c : constraints) {
            const Rational v = dot(c.coeffs, x) + c.constant;
            switch (c.rel) {
                case Relation::GE: if (v < 0) return false; break;
                case Relation::GT: if (v <= 0) return false; break;
                case Relation::EQ: if (v != 0) return false; break;
            }
        }
        return true;
    }
};

struct Feasibility {
    bool feasible = false;
    std::optional<QVec> witness;
};

constexpr std::size_t kDefaultDimensionBound = 12;

namespace detail {

// Integer-cleared constraint c.x + a (>= | >) 0.
struct ICon {
    ZVec c;
    Int a;
    bool strict = false;
};

inline void make_primitive(ICon& k) {
    Int g = content(k.c);
    g = gcd_int(g, k.a);
    if (g > 1) {
        for (auto& x : k.c) x /= g;
        k.a /= g;
    }
}

inline ICon clear_denominators(const LinearConstraint& lc, bool strict) {
    Int l = den(lc.constant);
    for (const auto& q : lc.coeffs) l = l / gcd_int(l, den(q)) * den(q);
    ICon k;
    k.c.resize(lc.coeffs.size());
    for (std::size_t i = 0; i < lc.coeffs.size(); ++i)
        k.c[i] = num(lc.coeffs[i]) * (l / den(lc.coeffs[i]));
    k.a = num(lc.constant) * (l / den(lc.constant));
    k.strict = strict;
    make_primitive(k);
    return k;
}

// Elimination records, replayed backwards to build a witness.
struct EqRecord {
    std::size_t var;
    ZVec c; // equality coeffs at substitution time
    Int a;
};
struct FmRecord {
    std::size_t var;
    std::vector<ICon> lower, upper; // constraints with positive / negative coeff at var
};
struct Record {
    bool is_eq = false;
    EqRecord eq;
    FmRecord fm;
};

// Keeps, per coefficient direction, only the tightest offset; returns false
// and reports contradiction if two opposite directions clash. Constraints
// with zero coefficients are resolved on the spot.
inline bool prune(std::vector<ICon>& cons) {
    std::map<ZVec, std::pair<Rational, bool>> best; // c -> (offset a/g, strict)
    for (auto& k : cons) {
        Int g = content(k.c);
        if (g == 0) {
            if (k.a < 0 || (k.a == 0 && k.strict)) return false;
            continue;
        }
        ZVec dir = k.c;
        if (g > 1)
            for (auto& x : dir) x /= g;
        const Rational off(k.a, g);
        auto it = best.find(dir);
        if (it == best.end()) {
            best.emplace(std::move(dir), std::make_pair(off, k.strict));
        } else if (off < it->second.first) {
            it->second = {off, k.strict};
        } else if (off == it->second.first) {
            it->second.second = it->second.second || k.strict;
        }
    }
    std::vector<ICon> out;
    out.reserve(best.size());
    for (const auto& [dir, ob] : best) {
        ZVec neg(dir.size());
        for (std::size_t i = 0; i < dir.size(); ++i) neg[i] = -dir[i];
        auto op = best.find(neg);
        if (op != best.end()) {
            // dir.x >= -ob.first and dir.x <= op.first
            if (-ob.first > op->second.first) return false;
            if (-ob.first == op->second.first && (ob.second || op->second.second)) return false;
        }
        ICon k;
        k.c = dir;
        const Rational& off = ob.first;
        Int d = den(off);
        if (d != 1)
            for (auto& x : k.c) x *= d;
        k.a = num(off);
        k.strict = ob.second;
        out.push_back(std::move(k));
    }
    cons = std::move(out);
    return true;
}

} // namespace detail

// Decides whether the system has a solution; on success the witness satisfies
// every constraint exactly (verified before returning).
inline Feasibility feasible(const IneqSystem& sys, std::size_t max_dim = kDefaultDimensionBound) {
    if (sys.dim > max_dim) throw DimensionTooLarge("system dimension exceeds the configured bound");
    for (const auto& c : sys.constraints)
        if (c.coeffs.size() != sys.dim) throw InvalidInput("constraint arity does not match system dimension");

    using detail::ICon;
    std::vector<ICon> eqs, cons;
    for (const auto& c : sys.constraints) {
        if (c.rel == Relation::EQ) eqs.push_back(detail::clear_denominators(c, false));
        else cons.push_back(detail::clear_denominators(c, c.rel == Relation::GT));
    }

    std::vector<detail::Record> records;
    std::vector<bool> gone(sys.dim, false);

    // Equalities first: substitute one variable per equation.
    while (!eqs.empty()) {
        ICon eq = std::move(eqs.back());
        eqs.pop_back();
        std::size_t v = sys.dim;
        for (std::size_t j = 0; j < sys.dim; ++j) {
            if (eq.c[j] == 0) continue;
            if (v == sys.dim || abs_int(eq.c[j]) < abs_int(eq.c[v])) v = j;
        }
        if (v == sys.dim) {
            if (eq.a != 0) return {};
            continue;
        }
        const Int p = eq.c[v];
        const Int ap = abs_int(p);
        const int sp = sgn(p);
        auto substitute = [&](ICon& k) {
            if (k.c[v] == 0) return;
            const Int f = k.c[v];
            for (std::size_t j = 0; j < sys.dim; ++j)
                k.c[j] = k.c[j] * ap - sp * f * eq.c[j];
            k.a = k.a * ap - sp * f * eq.a;
            detail::make_primitive(k);
        };
        for (auto& k : eqs) substitute(k);
        for (auto& k : cons) substitute(k);
        detail::Record rec;
        rec.is_eq = true;
        rec.eq = {v, eq.c, eq.a};
        records.push_back(std::move(rec));
        gone[v] = true;
    }

    if (!detail::prune(cons)) return {};

    // Fourier-Motzkin elimination, cheapest variable first.
    for (;;) {
        std::size_t best_var = sys.dim;
        std::size_t best_cost = 0;
        for (std::size_t j = 0; j < sys.dim; ++j) {
            if (gone[j]) continue;
            std::size_t pos = 0, neg = 0;
            for (const auto& k : cons) {
                if (k.c[j] > 0) ++pos;
                else if (k.c[j] < 0) ++neg;
            }
            if (pos + neg == 0) continue;
            const std::size_t cost = pos * neg;
            if (best_var == sys.dim || cost < best_cost) { best_var = j; best_cost = cost; }
        }
        if (best_var == sys.dim) break;
        const std::size_t v = best_var;

        detail::FmRecord rec;
        rec.var = v;
        std::vector<ICon> rest;
        for (auto& k : cons) {
            if (k.c[v] > 0) rec.lower.push_back(std::move(k));
            else if (k.c[v] < 0) rec.upper.push_back(std::move(k));
            else rest.push_back(std::move(k));
        }
        for (const auto& lo : rec.lower)
            for (const auto& up : rec.upper) {
                ICon k;
                const Int alpha = lo.c[v], beta = up.c[v]; // alpha > 0 > beta
                k.c.resize(sys.dim);
                for (std::size_t j = 0; j < sys.dim; ++j)
                    k.c[j] = lo.c[j] * (-beta) + up.c[j] * alpha;
                k.a = lo.a * (-beta) + up.a * alpha;
                k.strict = lo.strict || up.strict;
                detail::make_primitive(k);
                rest.push_back(std::move(k));
            }
        cons = std::move(rest);
        if (!detail::prune(cons)) return {};
        detail::Record r;
        r.fm = std::move(rec);
        records.push_back(std::move(r));
        gone[v] = true;
    }

    for (const auto& k : cons)
        if (k.a < 0 || (k.a == 0 && k.strict)) return {};

    // Witness by reverse substitution.
    QVec x(sys.dim, Rational(0));
    for (auto it = records.rbegin(); it != records.rend(); ++it) {
        if (it->is_eq) {
            const auto& e = it->eq;
            Rational s(-e.a);
            for (std::size_t j = 0; j < sys.dim; ++j)
                if (j != e.var && e.c[j] != 0) s -= Rational(e.c[j]) * x[j];
            x[e.var] = s / Rational(e.c[e.var]);
            continue;
        }
        const auto& f = it->fm;
        bool has_lo = false, has_up = false, lo_strict = false, up_strict = false;
        Rational lo, up;
        for (const auto& k : f.lower) {
            Rational b(-k.a);
            for (std::size_t j = 0; j < sys.dim; ++j)
                if (j != f.var && k.c[j] != 0) b -= Rational(k.c[j]) * x[j];
            b /= Rational(k.c[f.var]);
            if (!has_lo || b > lo) { lo = b; lo_strict = k.strict; has_lo = true; }
            else if (b == lo) lo_strict = lo_strict || k.strict;
        }
        for (const auto& k : f.upper) {
            Rational b(-k.a);
            for (std::size_t j = 0; j < sys.dim; ++j)
                if (j != f.var && k.c[j] != 0) b -= Rational(k.c[j]) * x[j];
            b /= Rational(k.c[f.var]); // negative divisor flips to an upper bound
            if (!has_up || b < up) { up = b; up_strict = k.strict; has_up = true; }
            else if (b == up) up_strict = up_strict || k.strict;
        }
        Rational val;
        if (has_lo && has_up) {
            if (lo < up) val = (lo + up) / 2;
            else if (lo == up && !lo_strict && !up_strict) val = lo;
            else throw std::logic_error("elimination invariant violated in witness construction");
        } else if (has_lo) {
            val = lo_strict ? lo + 1 : lo;
        } else if (has_up) {
            val = up_strict ? up - 1 : up;
        }
        x[f.var] = val;
    }

    if (!sys.satisfied_by(x)) throw std::logic_error("feasibility witness failed the plug-back check");
    return {true, std::move(x)};
}

} // namespace wallkit
