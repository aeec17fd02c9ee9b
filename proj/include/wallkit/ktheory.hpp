#pragma once
// Integer-matrix shadow of the chain datum wall crossings: the tridiagonal
// Euler pairing, rank-one twist matrices, braid-relation checks, and the
// reflection representation on the directed crossings of the chain's wall
// arrangement, certified against the gallery relations.

#include <wallkit/circuits.hpp>
#include <wallkit/examples.hpp>
#include <wallkit/groupoid.hpp>

#include <deque>
#include <optional>

namespace wallkit {

struct EulerForm {
    std::size_t m = 0;
    MatZ gram; // pairing of the spherical classes: 2 on the diagonal, -1 adjacent
};

inline EulerForm euler_form(std::size_t m) {
    if (m < 1) throw InvalidInput("the chain needs at least one class");
    EulerForm ef;
    ef.m = m;
    ef.gram = MatZ(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        ef.gram(i, i) = 2;
        if (i + 1 < m) {
            ef.gram(i, i + 1) = -1;
            ef.gram(i + 1, i) = -1;
        }
    }
    return ef;
}

struct TwistMatrix {
    std::size_t index = 0; // 1-based class index
    MatZ matrix;
};

// x -> x minus its pairing against class i times class i; an involution of
// determinant -1 preserving the pairing.
inline TwistMatrix twist_matrix(const EulerForm& ef, std::size_t i) {
    if (i < 1 || i > ef.m) throw IndexOutOfRange("twist index outside the chain");
    MatZ t = MatZ::identity(ef.m);
    for (std::size_t j = 0; j < ef.m; ++j) t(i - 1, j) -= ef.gram(i - 1, j);
    return {i, std::move(t)};
}

struct BraidReport {
    std::size_t m = 0;
    std::size_t braid_checked = 0;
    std::size_t commute_checked = 0;
    std::vector<std::pair<std::size_t, std::size_t>> failures; // 1-based index pairs
    bool pass() const { return failures.empty(); }
};

// Adjacent twists must braid, distant twists must commute.
inline BraidReport verify_braid_relations(std::size_t m) {
    BraidReport report;
    report.m = m;
    const EulerForm ef = euler_form(m);
    std::vector<MatZ> tw;
    tw.reserve(m);
    for (std::size_t i = 1; i <= m; ++i) tw.push_back(twist_matrix(ef, i).matrix);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        ++report.braid_checked;
        if (tw[i] * tw[i + 1] * tw[i] != tw[i + 1] * tw[i] * tw[i + 1])
            report.failures.emplace_back(i + 1, i + 2);
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 2; j < m; ++j) {
            ++report.commute_checked;
            if (tw[i] * tw[j] != tw[j] * tw[i]) report.failures.emplace_back(i + 1, j + 1);
        }
    return report;
}

// Reflection in the root summing the chain classes lo..hi (0-based): fixes
// the pairing-orthogonal complement and negates the root. Equals the product
// of twists along any reduced word for the interval.
inline MatZ interval_reflection(const EulerForm& ef, std::size_t lo, std::size_t hi) {
    if (lo > hi || hi >= ef.m) throw IndexOutOfRange("interval outside the chain");
    MatZ s = MatZ::identity(ef.m);
    for (std::size_t k = 0; k < ef.m; ++k) {
        Int b(0);
        for (std::size_t t = lo; t <= hi; ++t) b += ef.gram(k, t);
        if (b == 0) continue;
        for (std::size_t r = lo; r <= hi; ++r) s(r, k) -= b;
    }
    return s;
}

namespace detail {

// chain wall normals are 0/1 indicator vectors of index intervals
inline std::pair<std::size_t, std::size_t> wall_interval(const ZVec& normal) {
    std::size_t lo = normal.size(), hi = 0;
    for (std::size_t t = 0; t < normal.size(); ++t) {
        if (normal[t] == 0) continue;
        if (normal[t] != 1) throw InvalidInput("wall normal is not an interval indicator");
        if (lo == normal.size()) lo = t;
        hi = t;
    }
    if (lo == normal.size()) throw InvalidInput("wall normal is zero");
    for (std::size_t t = lo; t <= hi; ++t)
        if (normal[t] != 1) throw InvalidInput("wall normal is not an interval indicator");
    return {lo, hi};
}

} // namespace detail

struct AmWallAction {
    TorusData datum;
    DiscriminantalArrangement disc;
    SalvettiComplex salvetti;
    EdgeRepresentation rep;
};

// Assigns to every directed crossing of the chain datum's wall arrangement
// the reflection of its wall. Reverse pairs are automatically inverse since
// reflections are involutions.
inline AmWallAction am_edge_representation(std::size_t m,
                                           std::size_t max_dim = kDefaultDimensionBound) {
    TorusData datum = example_am(m);
    DiscriminantalArrangement disc = discriminantal(datum);
    SalvettiComplex sc = build_salvetti(disc.arrangement, max_dim);
    const EulerForm ef = euler_form(m);

    std::vector<MatQ> per_wall(disc.arrangement.class_count());
    for (std::size_t c = 0; c < per_wall.size(); ++c) {
        const auto [lo, hi] = detail::wall_interval(disc.arrangement.class_rep(c).normal);
        per_wall[c] = to_rational(interval_reflection(ef, lo, hi));
    }
    std::vector<MatQ> mats;
    mats.reserve(sc.graph.edges.size());
    for (const DirectedEdge& de : sc.graph.edges) mats.push_back(per_wall[de.wall]);
    EdgeRepresentation rep = EdgeRepresentation::from_matrices(sc.graph, std::move(mats));
    return {std::move(datum), std::move(disc), std::move(sc), std::move(rep)};
}

struct CertifyReport {
    std::size_t m = 0;
    CellReport cells;
    std::size_t monodromy_count = 0;
    std::size_t identity_monodromies = 0;
    bool certified = false;
};

// Checks every gallery relation for the reflection representation; on a pass,
// evaluates the monodromy of each relation loop conjugated to chamber 0.
inline CertifyReport certify_am_action(std::size_t m,
                                       std::size_t max_dim = kDefaultDimensionBound) {
    AmWallAction act = am_edge_representation(m, max_dim);
    CertifyReport report;
    report.m = m;
    report.cells = check_two_cells(act.rep, act.salvetti.graph, act.salvetti.cells);
    report.certified = report.cells.pass();
    if (!report.certified) return report;

    // breadth-first tree paths from chamber 0, for conjugating loops to the base
    const SalvettiGraph& g = act.salvetti.graph;
    std::vector<std::optional<GroupoidPath>> to_chamber(g.chambers.size());
    to_chamber[0] = GroupoidPath{0, {}};
    std::deque<std::size_t> bfs{0};
    while (!bfs.empty()) {
        const std::size_t c = bfs.front();
        bfs.pop_front();
        for (std::size_t e : g.out[c]) {
            const std::size_t nxt = g.edges[e].to;
            if (to_chamber[nxt]) continue;
            GroupoidPath path = *to_chamber[c];
            path.edges.push_back(e);
            to_chamber[nxt] = std::move(path);
            bfs.push_back(nxt);
        }
    }

    const MatQ id = MatQ::identity(act.rep.dimension());
    for (const TwoCell& cell : act.salvetti.cells) {
        const GroupoidPath boundary = compose(g, cell.gamma1, reverse_path(g, cell.gamma2));
        const GroupoidPath& approach = *to_chamber[cell.base];
        const GroupoidPath loop =
            compose(g, compose(g, approach, boundary), reverse_path(g, approach));
        ++report.monodromy_count;
        if (monodromy(act.rep, g, loop) == id) ++report.identity_monodromies;
    }
    return report;
}

} // namespace wallkit
