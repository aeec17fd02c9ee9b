#pragma once

// Moment fibre membership, the two semistability criteria, wall-crossing
// stratum checks, and the dimension records of the induced flop diagrams.

#include <wallkit/circuits.hpp>

#include <cstdint>
#include <optional>
#include <random>

namespace wallkit {

struct CotangentPoint {
    QVec z;
    QVec w;
};

namespace detail {

inline void check_point(const TorusData& td, const CotangentPoint& p) {
    if (p.z.size() != td.n() || p.w.size() != td.n())
        throw InvalidInput("point arity does not match datum");
}

inline QVec coordinate_products(const CotangentPoint& p) {
    QVec m(p.z.size());
    for (std::size_t i = 0; i < p.z.size(); ++i) m[i] = p.z[i] * p.w[i];
    return m;
}

} // namespace detail

// mu(p) = 0, decided along two routes that must agree: pairing the products
// z_i w_i against the subtorus basis, and the circuit equations (the circuit
// vectors span the same rational space as the basis columns).
inline bool moment_zero(const TorusData& td, const CotangentPoint& p,
                        const std::vector<Circuit>& circuits) {
    detail::check_point(td, p);
    const QVec m = detail::coordinate_products(p);
    bool basis_route = true;
    for (std::size_t j = 0; j < td.k_rank() && basis_route; ++j) {
        Rational s(0);
        for (std::size_t i = 0; i < td.n(); ++i) s += Rational(td.kbasis()(i, j)) * m[i];
        if (s != 0) basis_route = false;
    }
    bool circuit_route = true;
    for (const Circuit& c : circuits) {
        Rational s(0);
        for (std::size_t i : c.indices) s += Rational(c.beta[i]) * m[i];
        if (s != 0) { circuit_route = false; break; }
    }
    if (basis_route != circuit_route)
        throw std::logic_error("moment map routes disagree; circuit list is not complete");
    return basis_route;
}

inline bool moment_zero(const TorusData& td, const CotangentPoint& p) {
    return moment_zero(td, p, enumerate_circuits(td));
}

// Circuit-coordinate criterion: for every circuit whose wall misses the
// character, the tuple (z on the plus side, w on the minus side) is nonzero.
// Defined at every point, on the fibre or off it.
inline bool konno_semistable(const TorusData& td, const Character& ch, const CotangentPoint& p,
                             const std::vector<Circuit>& circuits) {
    detail::check_point(td, p);
    for (const Circuit& c : circuits) {
        if (circuit_pairing(ch, c) == 0) continue;
        const OrientedCircuit oc = orient_circuit(td, c, ch);
        bool nonzero = false;
        for (std::size_t i : oc.plus)
            if (p.z[i] != 0) { nonzero = true; break; }
        if (!nonzero)
            for (std::size_t i : oc.minus)
                if (p.w[i] != 0) { nonzero = true; break; }
        if (!nonzero) return false;
    }
    return true;
}

inline bool konno_semistable(const TorusData& td, const Character& ch, const CotangentPoint& p) {
    return konno_semistable(td, ch, p, enumerate_circuits(td));
}

// Half-space criterion: on the moment fibre, semistability is nonemptiness of
// the region cut by the closed half-space below each vanishing z coordinate
// and above each vanishing w coordinate. The lift translates the region, so
// feasibility does not depend on the choice of lift.
inline bool halfspace_semistable(const TorusData& td, const Character& ch, const CotangentPoint& p,
                                 const std::vector<Circuit>& circuits,
                                 std::size_t max_dim = kDefaultDimensionBound) {
    detail::check_point(td, p);
    if (ch.lift.size() != td.n()) throw InvalidInput("character lift arity does not match datum");
    if (!moment_zero(td, p, circuits)) throw NotOnMomentFibre("point is off the moment fibre");
    const std::size_t d = td.quotient_rank();
    IneqSystem sys(d);
    for (std::size_t i = 0; i < td.n(); ++i) {
        const ZVec ai = td.a_column(i);
        if (p.z[i] == 0) {
            ZVec neg(d);
            for (std::size_t t = 0; t < d; ++t) neg[t] = -ai[t];
            sys.add(neg, -ch.lift[i], Relation::GE); // <x, a_i> + lift_i <= 0
        }
        if (p.w[i] == 0) sys.add(ai, ch.lift[i], Relation::GE); // <x, a_i> + lift_i >= 0
    }
    return feasible(sys, max_dim).feasible;
}

inline bool halfspace_semistable(const TorusData& td, const Character& ch, const CotangentPoint& p,
                                 std::size_t max_dim = kDefaultDimensionBound) {
    return halfspace_semistable(td, ch, p, enumerate_circuits(td), max_dim);
}

struct AgreementReport {
    std::size_t total = 0;
    std::size_t semistable = 0;             // agreed verdict count
    std::vector<std::size_t> disagreements; // indices where the routes differ
};

// Cross-validates the two criteria pointwise. Both follow from theorems, so
// any disagreement is an implementation defect; the report names the points.
inline AgreementReport criteria_agree(const TorusData& td, const Character& ch,
                                      const std::vector<CotangentPoint>& points) {
    AgreementReport rep;
    rep.total = points.size();
    const std::vector<Circuit> circuits = enumerate_circuits(td);
    for (std::size_t t = 0; t < points.size(); ++t) {
        const bool k = konno_semistable(td, ch, points[t], circuits);
        const bool h = halfspace_semistable(td, ch, points[t], circuits);
        if (k) ++rep.semistable;
        if (k != h) rep.disagreements.push_back(t);
    }
    return rep;
}

namespace detail {

inline std::vector<int> class_signs_of_character(const DiscriminantalArrangement& disc,
                                                 const Character& ch) {
    std::vector<int> s(disc.arrangement.class_count());
    for (std::size_t c = 0; c < disc.arrangement.class_count(); ++c) {
        const ZVec& nrm = disc.arrangement.class_rep(c).normal;
        Int p(0);
        for (std::size_t j = 0; j < nrm.size(); ++j) p += nrm[j] * ch.eta[j];
        s[c] = p > 0 ? 1 : p < 0 ? -1 : 0;
    }
    return s;
}

// x_C^ch != 0 for every circuit on the given wall
inline bool wall_tuples_nonzero(const TorusData& td, const DiscriminantalArrangement& disc,
                                const std::vector<std::size_t>& wall_circuits, const Character& ch,
                                const CotangentPoint& p) {
    for (std::size_t ci : wall_circuits) {
        const OrientedCircuit oc = orient_circuit(td, disc.circuits[ci], ch);
        bool nz = false;
        for (std::size_t i : oc.plus)
            if (p.z[i] != 0) { nz = true; break; }
        if (!nz)
            for (std::size_t i : oc.minus)
                if (p.w[i] != 0) { nz = true; break; }
        if (!nz) return false;
    }
    return true;
}

} // namespace detail

struct WallReport {
    std::size_t total = 0;
    std::size_t wall = 0;                   // separating wall class
    std::vector<std::size_t> wall_circuits; // circuits lying on that wall
    std::size_t eta_semistable = 0;
    std::size_t theta_semistable = 0;
    std::size_t eta_prime_semistable = 0;
    std::vector<std::size_t> failures; // indices violating the stratum law
};

// Checks, on every sample point, that crossing the wall refines the wall
// character's semistable locus: eta-semistable iff theta-semistable with all
// wall circuit tuples nonzero, likewise for eta_prime, and both semistable
// loci sit inside theta's. The three characters must form a wall-crossing
// configuration: regular, adjacent, and subregular on the shared face.
inline WallReport wall_inclusion_check(const TorusData& td, const Character& eta,
                                       const Character& theta, const Character& eta_prime,
                                       const std::vector<CotangentPoint>& points) {
    const DiscriminantalArrangement disc = discriminantal(td);
    if (classify_character(td, eta, disc).kind != CharacterKind::Regular)
        throw BadWallConfiguration("eta is not regular");
    if (classify_character(td, eta_prime, disc).kind != CharacterKind::Regular)
        throw BadWallConfiguration("eta_prime is not regular");
    const CharacterClass tcls = classify_character(td, theta, disc);
    if (tcls.kind != CharacterKind::Subregular)
        throw BadWallConfiguration("theta is not subregular");
    const std::size_t wall = tcls.walls[0];

    const std::vector<int> se = detail::class_signs_of_character(disc, eta);
    const std::vector<int> sp = detail::class_signs_of_character(disc, eta_prime);
    const std::vector<int> st = detail::class_signs_of_character(disc, theta);
    if (se[wall] == sp[wall])
        throw BadWallConfiguration("eta and eta_prime lie on the same side of the wall");
    for (std::size_t c = 0; c < se.size(); ++c) {
        if (c == wall) continue;
        if (se[c] != sp[c]) throw BadWallConfiguration("chambers are not adjacent across the wall");
        if (st[c] != se[c]) throw BadWallConfiguration("theta is not on the shared face");
    }

    WallReport rep;
    rep.total = points.size();
    rep.wall = wall;
    rep.wall_circuits = disc.circuits_on_wall[wall];
    for (std::size_t t = 0; t < points.size(); ++t) {
        const CotangentPoint& p = points[t];
        const bool e = konno_semistable(td, eta, p, disc.circuits);
        const bool th = konno_semistable(td, theta, p, disc.circuits);
        const bool ep = konno_semistable(td, eta_prime, p, disc.circuits);
        if (e) ++rep.eta_semistable;
        if (th) ++rep.theta_semistable;
        if (ep) ++rep.eta_prime_semistable;
        const bool xe = detail::wall_tuples_nonzero(td, disc, rep.wall_circuits, eta, p);
        const bool xp = detail::wall_tuples_nonzero(td, disc, rep.wall_circuits, eta_prime, p);
        const bool ok = e == (th && xe) && ep == (th && xp) && (!e || th) && (!ep || th);
        if (!ok) rep.failures.push_back(t);
    }
    return rep;
}

struct FlopData {
    Circuit circuit;
    long long dim_M = 0;                // real dimension of the symplectic quotient
    long long dim_B_theta = 0;          // common contraction target over the wall
    long long dim_B_eta_theta = 0;      // either resolved side
    long long dim_Z0 = 0;               // centre of the diagram
    std::optional<long long> fibre_dim; // projective fibre; undefined for loops
};

inline FlopData flop_dimensions(const TorusData& td, const Circuit& c) {
    detail::validate_circuit(td, c);
    const long long nk = static_cast<long long>(td.quotient_rank());
    const long long s = static_cast<long long>(c.indices.size());
    FlopData f;
    f.circuit = c;
    f.dim_M = 2 * nk;
    f.dim_B_theta = 2 * nk - 2 * s + 2;
    f.dim_B_eta_theta = 2 * nk - s + 1;
    f.dim_Z0 = f.dim_B_theta + 2 * (s - 1);
    if (s >= 2) f.fibre_dim = s - 2;
    return f;
}

// Deterministic rational samples on the moment fibre: draw small integer z,
// then draw w from the integer kernel of the z-weighted pairing, so fibre
// membership is exact by construction. Consumes raw engine output only, to
// keep streams identical across platforms.
inline std::vector<CotangentPoint> sample_moment_fibre(const TorusData& td, std::size_t count,
                                                       std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto draw = [&rng]() { return static_cast<int>(rng() % 7) - 3; };
    std::vector<CotangentPoint> out;
    out.reserve(count);
    for (std::size_t t = 0; t < count; ++t) {
        ZVec z(td.n());
        for (auto& x : z) x = draw();
        MatZ m(td.k_rank(), td.n());
        for (std::size_t j = 0; j < td.k_rank(); ++j)
            for (std::size_t i = 0; i < td.n(); ++i) m(j, i) = td.kbasis()(i, j) * z[i];
        const MatZ ker = kernel_lattice(m);
        ZVec w(td.n(), Int(0));
        for (std::size_t c = 0; c < ker.cols(); ++c) {
            const Int coef(draw());
            for (std::size_t i = 0; i < td.n(); ++i) w[i] += coef * ker(i, c);
        }
        out.push_back({to_rational(z), to_rational(w)});
    }
    return out;
}

// Every coordinatewise support pattern with z_i w_i = 0: each coordinate is
// (1,0), (0,1), or (0,0). All 3^n points lie on the fibre identically; this
// is the boundary stress set for the criteria.
inline std::vector<CotangentPoint> zero_pattern_points(const TorusData& td) {
    if (td.n() > 8) throw InvalidInput("zero-pattern sweep limited to 8 coordinates");
    std::size_t total = 1;
    for (std::size_t i = 0; i < td.n(); ++i) total *= 3;
    std::vector<CotangentPoint> out;
    out.reserve(total);
    for (std::size_t code = 0; code < total; ++code) {
        CotangentPoint p{QVec(td.n(), Rational(0)), QVec(td.n(), Rational(0))};
        std::size_t c = code;
        for (std::size_t i = 0; i < td.n(); ++i) {
            if (c % 3 == 0) p.z[i] = 1;
            if (c % 3 == 1) p.w[i] = 1;
            c /= 3;
        }
        out.push_back(std::move(p));
    }
    return out;
}

// An integer character strictly inside the given chamber of the wall
// arrangement, distinct for distinct variants: scale the chamber witness deep
// into the cone, then nudge along an axis until the sign vector survives.
inline Character character_in_chamber(const TorusData& td, const DiscriminantalArrangement& disc,
                                      const Chamber& ch, long long variant = 1) {
    if (variant < 1) throw InvalidInput("variant must be positive");
    const std::size_t k = td.k_rank();
    if (ch.witness.size() != k) throw InvalidInput("chamber does not live in character space");
    Int scale(1);
    for (const Rational& x : ch.witness) {
        const Int d = den(x);
        scale = scale / gcd_int(scale, d) * d;
    }
    ZVec u(k);
    for (std::size_t j = 0; j < k; ++j) u[j] = num(ch.witness[j] * Rational(scale));
    const std::size_t axis = static_cast<std::size_t>(variant) % k;
    Int s(2);
    for (int iter = 0; iter < 64; ++iter, s *= 2) {
        ZVec v = u;
        for (auto& x : v) x *= s;
        v[axis] += variant;
        if (disc.arrangement.signs_at(to_rational(v)) == ch.sign) return Character::from_eta(td, v);
    }
    throw std::logic_error("witness is not interior to its chamber");
}

// A fibre point semistable for exactly one of two regular characters in
// adjacent chambers. Points supported on a wall circuit separate the two
// sides generically; the pattern sweep and a seeded sample are fallbacks.
inline std::optional<CotangentPoint> separating_point(const TorusData& td,
                                                      const DiscriminantalArrangement& disc,
                                                      const Character& ca, const Character& cb) {
    const auto differ = [&](const CotangentPoint& p) {
        return konno_semistable(td, ca, p, disc.circuits) !=
               konno_semistable(td, cb, p, disc.circuits);
    };
    const std::vector<int> sa = detail::class_signs_of_character(disc, ca);
    const std::vector<int> sb = detail::class_signs_of_character(disc, cb);
    std::vector<std::size_t> diff;
    for (std::size_t c = 0; c < sa.size(); ++c)
        if (sa[c] != sb[c]) diff.push_back(c);
    if (diff.size() == 1) {
        for (std::size_t ci : disc.circuits_on_wall[diff[0]]) {
            for (const Character* base : {&ca, &cb}) {
                if (circuit_pairing(*base, disc.circuits[ci]) == 0) continue;
                const OrientedCircuit oc = orient_circuit(td, disc.circuits[ci], *base);
                std::vector<bool> in(td.n(), false);
                for (std::size_t i : oc.circuit.indices) in[i] = true;
                for (int off_on_w = 0; off_on_w < 2; ++off_on_w) {
                    CotangentPoint p{QVec(td.n(), Rational(0)), QVec(td.n(), Rational(0))};
                    for (std::size_t i : oc.plus) p.z[i] = 1;
                    for (std::size_t i : oc.minus) p.w[i] = 1;
                    for (std::size_t i = 0; i < td.n(); ++i)
                        if (!in[i]) (off_on_w ? p.w[i] : p.z[i]) = 1;
                    if (differ(p)) return p;
                }
            }
        }
    }
    if (td.n() <= 8)
        for (const CotangentPoint& p : zero_pattern_points(td))
            if (differ(p)) return p;
    for (const CotangentPoint& p : sample_moment_fibre(td, 500, 2026))
        if (differ(p)) return p;
    return std::nullopt;
}

} // namespace wallkit
