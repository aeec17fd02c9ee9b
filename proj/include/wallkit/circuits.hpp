#pragma once

// Circuits of a torus datum: minimal coordinate sets supporting a relation
// among the quotient weights. Each circuit carries the primitive relation
// vector, orients against a character, and contributes one wall to the
// discriminantal arrangement in character space.

#include <wallkit/arrangement.hpp>
#include <wallkit/errors.hpp>
#include <wallkit/matrix.hpp>
#include <wallkit/rational.hpp>
#include <wallkit/torusdata.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace wallkit {

struct Circuit {
    std::vector<std::size_t> indices; // sorted, 0-based
    ZVec beta;                        // primitive, support = indices, first nonzero > 0
};

struct OrientedCircuit {
    Circuit circuit;
    std::vector<std::size_t> plus;  // i with beta_eta[i] > 0
    std::vector<std::size_t> minus; // i with beta_eta[i] < 0
    ZVec beta_eta;                  // +-beta, paired positively with the character
    bool non_unit_entries = false;  // some |beta_i| > 1 (non-unimodular datum)
};

namespace detail {

inline MatZ select_columns(const MatZ& a, const std::vector<std::size_t>& idx) {
    MatZ s(a.rows(), idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j)
        for (std::size_t r = 0; r < a.rows(); ++r) s(r, j) = a(r, idx[j]);
    return s;
}

inline MatZ select_rows(const MatZ& a, const std::vector<std::size_t>& idx) {
    MatZ s(idx.size(), a.cols());
    for (std::size_t r = 0; r < idx.size(); ++r)
        for (std::size_t j = 0; j < a.cols(); ++j) s(r, j) = a(idx[r], j);
    return s;
}

// The unique (up to sign) primitive relation among dependent columns whose
// every proper subset is independent; canonical sign, embedded in Z^n.
inline ZVec circuit_relation(const MatZ& a, const std::vector<std::size_t>& idx) {
    std::vector<QVec> ker = kernel_basis(to_rational(select_columns(a, idx)));
    if (ker.size() != 1) throw std::logic_error("circuit kernel is not a line");
    ZVec local = primitive(ker[0]);
    ZVec beta(a.cols(), Int(0));
    for (std::size_t t = 0; t < idx.size(); ++t) beta[idx[t]] = local[t];
    for (const Int& x : beta) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : beta) y = -y;
        break;
    }
    return beta;
}

} // namespace detail

// All circuits, by increasing support size then lexicographic support.
// Any dependent set strictly containing a circuit is pruned; every support
// of size rank(a)+1 is dependent, so larger sizes cannot be minimal.
inline std::vector<Circuit> enumerate_circuits(const TorusData& td) {
    const MatZ& a = td.a();
    const std::size_t n = td.n();
    std::vector<Circuit> out;
    if (n == 0) return out;
    const std::size_t amb = rank(to_rational(a));
    const std::size_t top = std::min(n, amb + 1);
    std::vector<std::vector<std::size_t>> known;
    for (std::size_t size = 1; size <= top; ++size) {
        std::vector<bool> pick(n, false);
        std::fill(pick.begin(), pick.begin() + static_cast<long>(size), true);
        do {
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < n; ++i)
                if (pick[i]) idx.push_back(i);
            bool pruned = false;
            for (const auto& c : known)
                if (std::includes(idx.begin(), idx.end(), c.begin(), c.end())) {
                    pruned = true;
                    break;
                }
            if (pruned) continue;
            if (rank(to_rational(detail::select_columns(a, idx))) == idx.size()) continue;
            Circuit c;
            c.beta = detail::circuit_relation(a, idx);
            c.indices = idx;
            known.push_back(std::move(idx));
            out.push_back(std::move(c));
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return out;
}

// beta in the coordinates of the cocharacter basis; integral because the
// basis is saturated and beta lies in the sublattice.
inline ZVec circuit_gamma(const TorusData& td, const Circuit& c) {
    auto g = solve_integer(td.kbasis(), c.beta);
    if (!g) throw std::logic_error("circuit relation escapes the cocharacter lattice");
    return *g;
}

// <eta, beta_C>, computed through the lift: the pairing of a character with
// a cocharacter direction inside the subtorus.
inline Int circuit_pairing(const Character& ch, const Circuit& c) {
    if (ch.lift.size() != c.beta.size()) throw InvalidInput("character and circuit arity differ");
    Int s(0);
    for (std::size_t i = 0; i < c.beta.size(); ++i) s += ch.lift[i] * c.beta[i];
    return s;
}

inline OrientedCircuit orient_circuit(const TorusData& td, const Circuit& c, const Character& ch) {
    (void)td;
    const Int pairing = circuit_pairing(ch, c);
    if (pairing == 0) throw OnWall("character lies on the circuit's wall");
    OrientedCircuit oc;
    oc.circuit = c;
    oc.beta_eta = c.beta;
    if (pairing < 0)
        for (auto& x : oc.beta_eta) x = -x;
    for (std::size_t i = 0; i < oc.beta_eta.size(); ++i) {
        if (oc.beta_eta[i] > 0) oc.plus.push_back(i);
        if (oc.beta_eta[i] < 0) oc.minus.push_back(i);
        if (abs_int(oc.beta_eta[i]) > 1) oc.non_unit_entries = true;
    }
    return oc;
}

// The central arrangement of circuit walls in character space (coordinates
// dual to the cocharacter basis). One hyperplane per circuit; proportional
// walls would merge into one class, and the map is retained either way.
struct DiscriminantalArrangement {
    Arrangement arrangement = Arrangement(0, {});
    std::vector<Circuit> circuits;
    std::vector<ZVec> gammas;                                // per circuit; kbasis * gamma = beta
    std::vector<std::size_t> wall_of;                        // circuit -> wall class
    std::vector<std::vector<std::size_t>> circuits_on_wall;  // wall class -> circuits
};

inline DiscriminantalArrangement discriminantal(const TorusData& td, std::vector<Circuit> circuits) {
    DiscriminantalArrangement disc;
    disc.gammas.reserve(circuits.size());
    std::vector<Hyperplane> walls;
    for (const Circuit& c : circuits) {
        ZVec g = circuit_gamma(td, c);
        walls.push_back({g, Int(0)});
        disc.gammas.push_back(std::move(g));
    }
    disc.circuits = std::move(circuits);
    disc.arrangement = Arrangement(td.k_rank(), std::move(walls));
    disc.wall_of.resize(disc.circuits.size());
    disc.circuits_on_wall.assign(disc.arrangement.class_count(), {});
    for (std::size_t i = 0; i < disc.circuits.size(); ++i) {
        disc.wall_of[i] = disc.arrangement.class_of(i);
        disc.circuits_on_wall[disc.wall_of[i]].push_back(i);
    }
    return disc;
}

inline DiscriminantalArrangement discriminantal(const TorusData& td) {
    return discriminantal(td, enumerate_circuits(td));
}

enum class CharacterKind { Regular, Subregular, Degenerate };

struct CharacterClass {
    CharacterKind kind = CharacterKind::Regular;
    std::vector<std::size_t> walls; // merged wall classes containing the character
};

inline CharacterClass classify_character(const TorusData& td, const Character& ch,
                                         const DiscriminantalArrangement& disc) {
    if (ch.eta.size() != td.k_rank()) throw InvalidInput("character arity does not match datum");
    CharacterClass out;
    for (std::size_t c = 0; c < disc.arrangement.class_count(); ++c) {
        const ZVec& normal = disc.arrangement.class_rep(c).normal;
        Int p(0);
        for (std::size_t j = 0; j < normal.size(); ++j) p += normal[j] * ch.eta[j];
        if (p == 0) out.walls.push_back(c);
    }
    out.kind = out.walls.empty()      ? CharacterKind::Regular
               : out.walls.size() == 1 ? CharacterKind::Subregular
                                       : CharacterKind::Degenerate;
    return out;
}

inline CharacterClass classify_character(const TorusData& td, const Character& ch) {
    return classify_character(td, ch, discriminantal(td));
}

// The datum of the quotient subtorus acting on the coordinates outside C.
// The surviving cocharacter lattice is the saturation of the image of the
// original one under dropping the C coordinates: the quotient torus may act
// through a finite cover, and the effective action is what the circuit
// combinatorics of the smaller datum sees.
struct RestrictedDatum {
    TorusData datum;
    std::vector<std::size_t> coordinates; // restricted index -> original index
};

namespace detail {

inline void validate_circuit(const TorusData& td, const Circuit& c) {
    if (c.indices.empty() || !std::is_sorted(c.indices.begin(), c.indices.end()) ||
        c.indices.back() >= td.n())
        throw NotACircuit("malformed circuit index set");
    if (std::adjacent_find(c.indices.begin(), c.indices.end()) != c.indices.end())
        throw NotACircuit("repeated circuit index");
    if (rank(to_rational(select_columns(td.a(), c.indices))) == c.indices.size())
        throw NotACircuit("independent columns support no relation");
    for (std::size_t skip = 0; skip < c.indices.size(); ++skip) {
        std::vector<std::size_t> sub;
        for (std::size_t t = 0; t < c.indices.size(); ++t)
            if (t != skip) sub.push_back(c.indices[t]);
        if (rank(to_rational(select_columns(td.a(), sub))) < sub.size())
            throw NotACircuit("subset already dependent; the set is not minimal");
    }
    if (c.beta != circuit_relation(td.a(), c.indices))
        throw NotACircuit("relation vector does not match the index set");
}

// A character on the wall of C and off every other distinct wall, plus its
// induced character on the restricted datum (scaled positively to clear
// denominators; orientations and wall membership are scale-invariant).
struct WallCharacter {
    Character on_td;
    Character on_restricted;
};

inline WallCharacter generic_wall_character(const TorusData& td, const Circuit& c,
                                            const DiscriminantalArrangement& disc,
                                            const RestrictedDatum& rd) {
    const std::size_t k = td.k_rank();
    const ZVec gamma_c = circuit_gamma(td, c);
    MatZ grow(1, k);
    for (std::size_t j = 0; j < k; ++j) grow(0, j) = gamma_c[j];
    MatZ wall_basis = kernel_lattice(grow); // k x (k-1)

    ZVec coeff(wall_basis.cols(), Int(0));
    if (wall_basis.cols() > 0) {
        std::vector<Hyperplane> traces;
        const std::size_t self = disc.arrangement.class_of(
            static_cast<std::size_t>(std::find_if(disc.gammas.begin(), disc.gammas.end(),
                                                  [&](const ZVec& g) { return g == gamma_c; }) -
                                     disc.gammas.begin()));
        for (std::size_t cl = 0; cl < disc.arrangement.class_count(); ++cl) {
            if (cl == self) continue;
            const ZVec& normal = disc.arrangement.class_rep(cl).normal;
            ZVec tr(wall_basis.cols(), Int(0));
            for (std::size_t j = 0; j < wall_basis.cols(); ++j)
                for (std::size_t r = 0; r < k; ++r) tr[j] += normal[r] * wall_basis(r, j);
            traces.push_back({std::move(tr), Int(0)});
        }
        if (traces.empty()) {
            coeff[0] = 1;
        } else {
            Arrangement tr_arr(wall_basis.cols(), traces);
            QVec seed = generic_seed(tr_arr);
            Int lcm(1);
            for (const Rational& q : seed) lcm = lcm / gcd_int(lcm, den(q)) * den(q);
            for (std::size_t j = 0; j < coeff.size(); ++j)
                coeff[j] = num(seed[j]) * (lcm / den(seed[j]));
        }
    }
    ZVec eta = mul(wall_basis, coeff);

    WallCharacter wc;
    wc.on_td = Character::from_eta(td, eta);

    // induced character: pair each restricted basis cocharacter with eta
    // through any preimage; well-defined on the wall of C
    const std::size_t kbar = rd.datum.k_rank();
    MatQ big = to_rational(select_rows(td.kbasis(), rd.coordinates));
    QVec etabar(kbar, Rational(0));
    for (std::size_t j = 0; j < kbar; ++j) {
        QVec target(rd.coordinates.size());
        for (std::size_t r = 0; r < rd.coordinates.size(); ++r)
            target[r] = Rational(rd.datum.kbasis()(r, j));
        auto x = solve(big, target);
        if (!x) throw std::logic_error("restricted cocharacter has no rational preimage");
        for (std::size_t i = 0; i < k; ++i) etabar[j] += Rational(eta[i]) * (*x)[i];
    }
    Int lcm(1);
    for (const Rational& q : etabar) lcm = lcm / gcd_int(lcm, den(q)) * den(q);
    ZVec etabar_int(kbar);
    for (std::size_t j = 0; j < kbar; ++j) etabar_int[j] = num(etabar[j]) * (lcm / den(etabar[j]));
    wc.on_restricted = Character::from_eta(rd.datum, etabar_int);
    return wc;
}

} // namespace detail

// The datum for the coordinates outside C, its circuits, and instance checks
// of the facts the construction promises: the restricted circuits are the
// minimal sets S without C over original circuits S; orientations restrict;
// and a character subregular on C's wall is regular for the restriction.
inline std::pair<RestrictedDatum, std::vector<Circuit>> restricted_circuits(const TorusData& td,
                                                                            const Circuit& c) {
    detail::validate_circuit(td, c);

    std::vector<std::size_t> coords;
    for (std::size_t i = 0; i < td.n(); ++i)
        if (!std::binary_search(c.indices.begin(), c.indices.end(), i)) coords.push_back(i);

    MatZ image = detail::select_rows(td.kbasis(), coords);
    MatZ ann = kernel_lattice(image.transposed());
    RestrictedDatum rd{TorusData::from_k_basis(kernel_lattice(ann.transposed())),
                       std::move(coords)};

    std::vector<Circuit> rcs = enumerate_circuits(rd.datum);

    // item check: supports are the minimal S \ C over original circuits S
    std::vector<Circuit> all = enumerate_circuits(td);
    std::set<std::vector<std::size_t>> candidates;
    for (const Circuit& s : all) {
        if (s.indices == c.indices) continue;
        std::vector<std::size_t> diff;
        for (std::size_t i : s.indices)
            if (!std::binary_search(c.indices.begin(), c.indices.end(), i)) diff.push_back(i);
        candidates.insert(diff);
    }
    std::set<std::vector<std::size_t>> expected;
    for (const auto& t : candidates) {
        bool minimal = true;
        for (const auto& u : candidates)
            if (u != t && std::includes(t.begin(), t.end(), u.begin(), u.end())) {
                minimal = false;
                break;
            }
        if (minimal) expected.insert(t);
    }
    std::set<std::vector<std::size_t>> got;
    for (const Circuit& rc : rcs) {
        std::vector<std::size_t> orig;
        for (std::size_t i : rc.indices) orig.push_back(rd.coordinates[i]);
        got.insert(orig);
    }
    if (got != expected) throw std::logic_error("restricted circuits disagree with the deletion law");

    // orientation restriction and regularity on a generic wall character
    if (td.k_rank() >= 1) {
        DiscriminantalArrangement disc = discriminantal(td, all);
        detail::WallCharacter wc = detail::generic_wall_character(td, c, disc, rd);

        CharacterClass cls = classify_character(td, wc.on_td, disc);
        if (cls.kind == CharacterKind::Subregular) {
            CharacterClass rcls = classify_character(rd.datum, wc.on_restricted);
            if (rcls.kind != CharacterKind::Regular)
                throw std::logic_error("subregular wall character fails to restrict regular");
        }

        for (const Circuit& s : all) {
            if (s.indices == c.indices) continue;
            if (circuit_pairing(wc.on_td, s) == 0) continue; // wall shared with C
            std::vector<std::size_t> diff;
            for (std::size_t i : s.indices)
                if (!std::binary_search(c.indices.begin(), c.indices.end(), i)) diff.push_back(i);
            for (const Circuit& rc : rcs) {
                std::vector<std::size_t> orig;
                for (std::size_t i : rc.indices) orig.push_back(rd.coordinates[i]);
                if (orig != diff) continue;
                OrientedCircuit os = orient_circuit(td, s, wc.on_td);
                OrientedCircuit orc = orient_circuit(rd.datum, rc, wc.on_restricted);
                std::vector<std::size_t> plus_orig, minus_orig;
                for (std::size_t i : orc.plus) plus_orig.push_back(rd.coordinates[i]);
                for (std::size_t i : orc.minus) minus_orig.push_back(rd.coordinates[i]);
                auto off_wall = [&](const std::vector<std::size_t>& xs) {
                    std::vector<std::size_t> kept;
                    for (std::size_t i : xs)
                        if (!std::binary_search(c.indices.begin(), c.indices.end(), i))
                            kept.push_back(i);
                    return kept;
                };
                if (plus_orig != off_wall(os.plus) || minus_orig != off_wall(os.minus))
                    throw std::logic_error("circuit orientation fails to restrict");
            }
        }
    }

    return {std::move(rd), std::move(rcs)};
}

} // namespace wallkit
