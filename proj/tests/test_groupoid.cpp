// Directed chamber graph with 2-cells from codimension-2 faces, the path
// algebra over it, edge representations, relation checks, monodromy, and the
// bounded homotopy search.
#include <catch2/catch_amalgamated.hpp>

#include <wallkit/groupoid.hpp>

#include <algorithm>
#include <map>
#include <set>

using namespace wallkit;

namespace {

ZVec zv(std::initializer_list<int> xs) {
    ZVec v;
    for (int x : xs) v.push_back(Int(x));
    return v;
}

Arrangement central(std::vector<ZVec> normals) {
    std::vector<Hyperplane> hs;
    for (auto& n : normals) hs.push_back({std::move(n), Int(0)});
    const std::size_t dim = hs.empty() ? 0 : hs[0].normal.size();
    return Arrangement(dim, std::move(hs));
}

Arrangement two_lines() { return central({zv({1, 0}), zv({0, 1})}); }

Arrangement chain_walls(std::size_t m) {
    // all 0/1 interval indicator normals in dimension m
    std::vector<ZVec> normals;
    for (std::size_t lo = 0; lo < m; ++lo)
        for (std::size_t hi = lo; hi < m; ++hi) {
            ZVec n(m, Int(0));
            for (std::size_t t = lo; t <= hi; ++t) n[t] = 1;
            normals.push_back(std::move(n));
        }
    return central(std::move(normals));
}

MatQ qmat(std::initializer_list<std::initializer_list<int>> rows) {
    std::vector<std::vector<Rational>> r;
    for (auto& row : rows) {
        std::vector<Rational> x;
        for (int v : row) x.push_back(Rational(v));
        r.push_back(std::move(x));
    }
    return MatQ::from_rows(r);
}

std::vector<std::size_t> wall_word(const SalvettiGraph& g, const GroupoidPath& p) {
    std::vector<std::size_t> w;
    for (std::size_t e : p.edges) w.push_back(g.edges[e].wall);
    return w;
}

} // namespace

TEST_CASE("salvetti graph and cell inventory") {
    struct Pinned {
        Arrangement arr;
        std::size_t chambers, directed_edges, cells;
        std::map<std::size_t, std::size_t> cells_by_length;
    };
    std::vector<Pinned> cases;
    cases.push_back({two_lines(), 4, 8, 4, {{2, 4}}});
    cases.push_back({chain_walls(2), 6, 12, 6, {{3, 6}}});
    cases.push_back({chain_walls(3), 24, 72, 72, {{3, 48}, {2, 24}}});

    for (const Pinned& pc : cases) {
        SalvettiComplex sc = build_salvetti(pc.arr);
        const SalvettiGraph& g = sc.graph;
        CHECK(g.chambers.size() == pc.chambers);
        REQUIRE(g.edges.size() == pc.directed_edges);
        CHECK(sc.cells.size() == pc.cells);

        // edges come in reverse pairs sharing a wall
        for (std::size_t e = 0; e < g.edges.size(); e += 2) {
            CHECK(g.edges[e].from == g.edges[e + 1].to);
            CHECK(g.edges[e].to == g.edges[e + 1].from);
            CHECK(g.edges[e].wall == g.edges[e + 1].wall);
        }
        // out lists are consistent
        std::size_t listed = 0;
        for (std::size_t c = 0; c < g.out.size(); ++c) {
            listed += g.out[c].size();
            for (std::size_t e : g.out[c]) CHECK(g.edges[e].from == c);
        }
        CHECK(listed == g.edges.size());

        std::map<std::size_t, std::size_t> by_len;
        for (const TwoCell& cell : sc.cells) {
            ++by_len[cell.gamma1.edges.size()];
            CHECK(cell.gamma1.start == cell.base);
            CHECK(cell.gamma2.start == cell.base);
            REQUIRE(cell.gamma1.edges.size() == cell.gamma2.edges.size());
            const std::size_t opp1 = path_end(g, cell.gamma1);
            const std::size_t opp2 = path_end(g, cell.gamma2);
            CHECK(opp1 == opp2);
            CHECK(opp1 != cell.base);
            // the galleries cross one wall set, each wall once, in opposite order
            std::vector<std::size_t> w1 = wall_word(g, cell.gamma1);
            std::vector<std::size_t> w2 = wall_word(g, cell.gamma2);
            std::reverse(w2.begin(), w2.end());
            CHECK(w1 == w2);
            std::set<std::size_t> distinct(w1.begin(), w1.end());
            CHECK(distinct.size() == w1.size());
        }
        CHECK(by_len == pc.cells_by_length);
    }

    CHECK_THROWS_AS(build_salvetti(Arrangement(2, {{zv({1, 0}), Int(1)}})), InvalidInput);
}

TEST_CASE("path composition, reversal, evaluation") {
    SalvettiComplex sc = build_salvetti(two_lines());
    const SalvettiGraph& g = sc.graph;
    const GroupoidPath& p = sc.cells[0].gamma1;
    REQUIRE(p.edges.size() == 2);

    GroupoidPath rp = reverse_path(g, p);
    CHECK(rp.start == path_end(g, p));
    CHECK(path_end(g, rp) == p.start);

    GroupoidPath loop = compose(g, p, rp);
    CHECK(loop.start == p.start);
    CHECK(path_end(g, loop) == p.start);
    CHECK(loop.edges.size() == 4);

    // composing a base-to-opposite gallery with itself cannot type-check
    CHECK_THROWS_AS(compose(g, p, p), EndpointMismatch);

    // commuting diagonal matrices on the two walls
    EdgeRepresentation rep = EdgeRepresentation::from_wall_matrices(
        g, two_lines(), {qmat({{2, 0}, {0, 3}}), qmat({{5, 0}, {0, 7}})});
    CHECK(rep.dimension() == 2);

    const MatQ id = MatQ::identity(2);
    CHECK(evaluate(rep, g, GroupoidPath{0, {}}) == id);
    CHECK(evaluate(rep, g, loop) == id);

    // functor property on a 2-step path
    GroupoidPath first{p.start, {p.edges[0]}};
    GroupoidPath second{g.edges[p.edges[0]].to, {p.edges[1]}};
    CHECK(evaluate(rep, g, compose(g, first, second)) ==
          evaluate(rep, g, second) * evaluate(rep, g, first));

    // reversal inverts the evaluation
    CHECK(evaluate(rep, g, rp) * evaluate(rep, g, p) == id);

    // a representation must assign inverse matrices to reverse edge pairs
    std::vector<MatQ> broken(g.edges.size(), id);
    broken[0] = qmat({{1, 1}, {0, 1}});
    CHECK_THROWS_AS(EdgeRepresentation::from_matrices(g, broken), InvalidInput);

    // evaluating an edge the representation does not cover is refused
    SalvettiComplex big = build_salvetti(chain_walls(2));
    GroupoidPath foreign{big.graph.edges[10].from, {10}};
    CHECK_THROWS_AS(evaluate(rep, big.graph, foreign), MissingEdge);
}

TEST_CASE("cell checks certify or refute a representation") {
    SalvettiComplex sc = build_salvetti(two_lines());
    const Arrangement arr = two_lines();

    EdgeRepresentation commuting = EdgeRepresentation::from_wall_matrices(
        sc.graph, arr, {qmat({{2, 0}, {0, 3}}), qmat({{5, 0}, {0, 7}})});
    CHECK_FALSE(commuting.verified());
    CellReport good = check_two_cells(commuting, sc.graph, sc.cells);
    CHECK(good.total == 4);
    CHECK(good.failures.empty());
    CHECK(good.pass());
    CHECK(commuting.verified());

    EdgeRepresentation tangled = EdgeRepresentation::from_wall_matrices(
        sc.graph, arr, {qmat({{1, 1}, {0, 1}}), qmat({{1, 0}, {1, 1}})});
    CellReport bad = check_two_cells(tangled, sc.graph, sc.cells);
    CHECK(bad.total == 4);
    CHECK(bad.failures.size() == 4);
    CHECK_FALSE(bad.pass());
    CHECK_FALSE(tangled.verified());

    // identity representation passes on every arrangement
    SalvettiComplex hex = build_salvetti(chain_walls(2));
    std::vector<MatQ> ids(hex.graph.edges.size(), MatQ::identity(1));
    EdgeRepresentation trivial = EdgeRepresentation::from_matrices(hex.graph, ids);
    CHECK(check_two_cells(trivial, hex.graph, hex.cells).pass());
}

TEST_CASE("monodromy of verified representations") {
    SalvettiComplex sc = build_salvetti(two_lines());
    const SalvettiGraph& g = sc.graph;
    EdgeRepresentation rep = EdgeRepresentation::from_wall_matrices(
        g, two_lines(), {qmat({{2, 0}, {0, 3}}), qmat({{5, 0}, {0, 7}})});

    const TwoCell& cell = sc.cells[0];
    GroupoidPath boundary = compose(g, cell.gamma1, reverse_path(g, cell.gamma2));

    CHECK_THROWS_AS(monodromy(rep, g, boundary), UncheckedRepresentation);
    REQUIRE(check_two_cells(rep, g, sc.cells).pass());

    const MatQ id = MatQ::identity(2);
    CHECK(monodromy(rep, g, boundary) == id);
    CHECK(monodromy(rep, g, GroupoidPath{2, {}}) == id);
    CHECK_THROWS_AS(monodromy(rep, g, cell.gamma1), NotALoop);

    // the full square walk around the origin is a commutator: identity here
    for (const TwoCell& c2 : sc.cells) {
        GroupoidPath b2 = compose(g, c2.gamma1, reverse_path(g, c2.gamma2));
        CHECK(b2.edges.size() == 4);
        CHECK(monodromy(rep, g, b2) == id);
    }
}

TEST_CASE("bounded homotopy search") {
    SalvettiComplex sc = build_salvetti(chain_walls(2));
    const SalvettiGraph& g = sc.graph;
    const TwoCell& cell = sc.cells[0];

    HomotopyResult same = homotopic_bounded(g, sc.cells, cell.gamma1, cell.gamma1, 0);
    CHECK(same.answer == Homotopy::Yes);
    CHECK(same.substitutions == 0);

    HomotopyResult flip = homotopic_bounded(g, sc.cells, cell.gamma1, cell.gamma2, 2);
    CHECK(flip.answer == Homotopy::Yes);
    CHECK(flip.substitutions == 1);

    CHECK(homotopic_bounded(g, sc.cells, cell.gamma1, cell.gamma2, 0).answer ==
          Homotopy::Unknown);

    // backtracking cancels without any substitutions
    GroupoidPath padded = cell.gamma1;
    padded.edges.push_back(SalvettiGraph::reverse_edge(cell.gamma1.edges.back()));
    padded.edges.push_back(cell.gamma1.edges.back());
    HomotopyResult pad = homotopic_bounded(g, sc.cells, padded, cell.gamma1, 0);
    CHECK(pad.answer == Homotopy::Yes);

    // one cell substitution contracts the full tour of the hexagon
    GroupoidPath loop = compose(g, cell.gamma1, reverse_path(g, cell.gamma2));
    GroupoidPath still{loop.start, {}};
    HomotopyResult contract = homotopic_bounded(g, sc.cells, loop, still, 3);
    CHECK(contract.answer == Homotopy::Yes);
    CHECK(contract.substitutions == 1);

    // two tours need two substitutions: starved at depth 1, found at depth 2
    GroupoidPath doubled = compose(g, loop, loop);
    CHECK(homotopic_bounded(g, sc.cells, doubled, still, 1).answer == Homotopy::Unknown);
    HomotopyResult deep = homotopic_bounded(g, sc.cells, doubled, still, 2);
    CHECK(deep.answer == Homotopy::Yes);
    CHECK(deep.substitutions == 2);

    CHECK_THROWS_AS(homotopic_bounded(g, sc.cells, cell.gamma1, still, 2), EndpointMismatch);

    // declared-homotopic paths evaluate identically under a verified rep
    std::vector<MatQ> ids(g.edges.size(), MatQ::identity(1));
    EdgeRepresentation trivial = EdgeRepresentation::from_matrices(g, ids);
    REQUIRE(check_two_cells(trivial, g, sc.cells).pass());
    CHECK(evaluate(trivial, g, cell.gamma1) == evaluate(trivial, g, cell.gamma2));
}

TEST_CASE("simplicial chamber fans") {
    SalvettiComplex a = build_salvetti(two_lines());
    CHECK(is_simplicial(two_lines(), a.graph));

    SalvettiComplex b = build_salvetti(chain_walls(2));
    CHECK(is_simplicial(chain_walls(2), b.graph));

    SalvettiComplex c = build_salvetti(chain_walls(3));
    CHECK(is_simplicial(chain_walls(3), c.graph));

    // four generic planes through the origin: some chambers have four facets
    Arrangement quad = central({zv({1, 0, 0}), zv({0, 1, 0}), zv({0, 0, 1}), zv({1, 1, 1})});
    SalvettiComplex d = build_salvetti(quad);
    CHECK(d.graph.chambers.size() == 14);
    CHECK(d.graph.edges.size() == 48);
    CHECK_FALSE(is_simplicial(quad, d.graph));

    CHECK_THROWS_AS(is_simplicial(Arrangement(1, {{zv({1}), Int(1)}}), a.graph), InvalidInput);
}
