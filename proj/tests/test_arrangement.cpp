// Chamber enumeration, boundedness, and rank-2 localizations, cross-checked
// against oracles that do not share code with the library paths under test:
// exhaustive sign-pattern feasibility sweeps, closed-form region counts, and
// hand-computed small cases.
#include <catch2/catch_amalgamated.hpp>

#include <wallkit/arrangement.hpp>
#include <wallkit/torusdata.hpp>

#include <algorithm>
#include <cstdint>
#include <set>

using namespace wallkit;

namespace {

ZVec zv(std::initializer_list<int> xs) {
    ZVec v;
    for (int x : xs) v.push_back(Int(x));
    return v;
}

// Oracle: a sign-pattern system built directly from the hyperplane list,
// independent of the library's class bookkeeping.
IneqSystem pattern_system(const Arrangement& arr, const SignVector& per_class) {
    IneqSystem sys(arr.dim());
    for (std::size_t c = 0; c < arr.class_count(); ++c) {
        const Hyperplane& h = arr.class_rep(c);
        QVec coeffs(arr.dim());
        for (std::size_t j = 0; j < arr.dim(); ++j)
            coeffs[j] = Rational(h.normal[j]) * Rational(int(per_class[c]));
        sys.add(std::move(coeffs), Rational(h.offset) * Rational(int(per_class[c])), Relation::GT);
    }
    return sys;
}

// Oracle: count chambers by sweeping every +-1 pattern over wall classes.
std::set<SignVector> exhaustive_class_patterns(const Arrangement& arr) {
    std::set<SignVector> found;
    const std::size_t m = arr.class_count();
    REQUIRE(m <= 16);
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        SignVector s(m);
        for (std::size_t c = 0; c < m; ++c) s[c] = (mask >> c) & 1 ? 1 : -1;
        if (feasible(pattern_system(arr, s)).feasible) found.insert(s);
    }
    return found;
}

SignVector class_signs_of(const Arrangement& arr, const Chamber& ch) {
    SignVector cs(arr.class_count());
    for (std::size_t c = 0; c < arr.class_count(); ++c) {
        const std::size_t i = arr.class_members(c).front();
        cs[c] = static_cast<std::int8_t>(ch.sign[i] * arr.orientation(i));
    }
    return cs;
}

Arrangement braid_arrangement(int m) {
    std::vector<Hyperplane> hs;
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            ZVec n(m, Int(0));
            for (int r = i; r <= j; ++r) n[r] = 1;
            hs.push_back({n, Int(0)});
        }
    return Arrangement(static_cast<std::size_t>(m), hs);
}

std::size_t factorial(std::size_t x) { return x <= 1 ? 1 : x * factorial(x - 1); }

} // namespace

TEST_CASE("hyperplane normalization and wall classes") {
    // proportional pairs merge into one class, orientation tracked per member
    Arrangement arr(2, {{zv({2, 2}), Int(0)},
                        {zv({1, 1}), Int(0)},
                        {zv({-1, -1}), Int(0)},
                        {zv({1, 1}), Int(3)},
                        {zv({0, 1}), Int(0)}});
    CHECK(arr.size() == 5);
    CHECK(arr.class_count() == 3); // {x+y}, {x+y+3}, {y}
    CHECK(arr[0].normal == zv({1, 1}));
    CHECK(arr[2].normal == zv({-1, -1})); // sign preserved on the member
    CHECK(arr.class_of(0) == arr.class_of(1));
    CHECK(arr.class_of(0) == arr.class_of(2));
    CHECK(arr.class_of(3) != arr.class_of(0));
    CHECK(arr.orientation(0) == 1);
    CHECK(arr.orientation(2) == -1);
    CHECK(arr.class_rep(arr.class_of(2)).normal == zv({1, 1}));
    CHECK_FALSE(arr.central());
    CHECK(braid_arrangement(2).central());

    CHECK_THROWS_AS(Arrangement(2, {{zv({0, 0}), Int(1)}}), ZeroNormal);
    CHECK_THROWS_AS(Arrangement(2, {{zv({1}), Int(0)}}), InvalidInput);
}

TEST_CASE("expand maps class signs to member signs") {
    Arrangement arr(2, {{zv({1, 1}), Int(0)}, {zv({-2, -2}), Int(0)}, {zv({1, 0}), Int(1)}});
    REQUIRE(arr.class_count() == 2);
    SignVector cs = {1, -1};
    SignVector full = arr.expand(cs);
    CHECK(full[0] == 1);
    CHECK(full[1] == -1); // negated member of the first class
    CHECK(full[2] == -1);
}

TEST_CASE("chamber enumeration matches exhaustive feasibility sweep") {
    // a mix of shapes: generic lines, parallels, repeated walls, central cases
    std::vector<Arrangement> cases;
    cases.push_back(Arrangement(2, {{zv({1, 0}), Int(1)},
                                    {zv({0, 1}), Int(1)},
                                    {zv({0, 1}), Int(0)},
                                    {zv({1, 1}), Int(0)}}));
    cases.push_back(Arrangement(2, {{zv({1, 0}), Int(0)},
                                    {zv({0, 1}), Int(0)},
                                    {zv({1, 1}), Int(-1)},
                                    {zv({1, -1}), Int(2)}}));
    cases.push_back(Arrangement(2, {{zv({1, 0}), Int(0)},
                                    {zv({2, 0}), Int(0)},
                                    {zv({-1, 0}), Int(1)},
                                    {zv({1, 0}), Int(2)}})); // all parallel
    cases.push_back(braid_arrangement(3));
    cases.push_back(Arrangement(3, {{zv({1, 0, 0}), Int(0)},
                                    {zv({0, 1, 0}), Int(0)},
                                    {zv({0, 0, 1}), Int(0)},
                                    {zv({1, 1, 1}), Int(-1)}}));

    for (const auto& arr : cases) {
        ChamberGraph g = enumerate_chambers(arr);
        std::set<SignVector> got;
        for (const auto& ch : g.chambers) {
            // witness reproduces the stored sign vector exactly
            CHECK(arr.signs_at(ch.witness) == ch.sign);
            got.insert(class_signs_of(arr, ch));
        }
        CHECK(got.size() == g.chambers.size());
        CHECK(got == exhaustive_class_patterns(arr));
    }
}

TEST_CASE("chamber counts: pinned closed forms") {
    // generic plane arrangement: 1 + n + C(n,2) regions
    Arrangement generic(2, {{zv({1, 0}), Int(0)},
                            {zv({0, 1}), Int(0)},
                            {zv({1, 1}), Int(-1)},
                            {zv({1, -1}), Int(3)}});
    CHECK(enumerate_chambers(generic).chambers.size() == 1 + 4 + 6);

    // braid arrangements: (m+1)! orderings
    for (int m = 1; m <= 4; ++m) {
        ChamberGraph g = enumerate_chambers(braid_arrangement(m));
        CHECK(g.chambers.size() == factorial(static_cast<std::size_t>(m) + 1));
    }

    // empty arrangement: one chamber, empty sign vector
    ChamberGraph none = enumerate_chambers(Arrangement(3, {}));
    REQUIRE(none.chambers.size() == 1);
    CHECK(none.chambers[0].sign.empty());
    CHECK(none.chambers[0].witness == QVec(3, Rational(0)));
    CHECK(none.edges.empty());

    CHECK_THROWS_AS(enumerate_chambers(Arrangement(13, {{ZVec(13, Int(1)), Int(0)}})),
                    DimensionTooLarge);
}

TEST_CASE("chamber order is canonical and independent of input order") {
    std::vector<Hyperplane> hs = {{zv({1, 0}), Int(1)},
                                  {zv({0, 1}), Int(1)},
                                  {zv({0, 1}), Int(0)},
                                  {zv({1, 1}), Int(0)}};
    Arrangement a(2, hs);
    std::reverse(hs.begin(), hs.end());
    Arrangement b(2, hs);
    ChamberGraph ga = enumerate_chambers(a), gb = enumerate_chambers(b);
    REQUIRE(ga.chambers.size() == gb.chambers.size());
    // same chamber set after reversing the hyperplane labels back
    std::set<SignVector> sa, sb;
    for (const auto& ch : ga.chambers) sa.insert(ch.sign);
    for (const auto& ch : gb.chambers) {
        SignVector s(ch.sign.rbegin(), ch.sign.rend());
        sb.insert(s);
    }
    CHECK(sa == sb);
    // deleting a hyperplane never increases the chamber count
    std::vector<Hyperplane> fewer(hs.begin() + 1, hs.end());
    CHECK(enumerate_chambers(Arrangement(2, fewer)).chambers.size() <= ga.chambers.size());
}

TEST_CASE("edges join chambers across a single shared wall") {
    Arrangement arr(2, {{zv({1, 0}), Int(1)},
                        {zv({0, 1}), Int(1)},
                        {zv({0, 1}), Int(0)},
                        {zv({1, 1}), Int(0)}});
    ChamberGraph g = enumerate_chambers(arr);
    CHECK(g.chambers.size() == 10);
    for (const auto& e : g.edges) {
        REQUIRE(e.from < e.to);
        REQUIRE(e.wall < arr.class_count());
        const SignVector& sa = g.chambers[e.from].sign;
        const SignVector& sb = g.chambers[e.to].sign;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            if (arr.class_of(i) == e.wall)
                CHECK(sa[i] == -sb[i]);
            else
                CHECK(sa[i] == sb[i]);
        }
        // the shared wall face is a genuine codim-1 piece: relax the wall to
        // equality, keep the remaining strict signs of one endpoint
        IneqSystem sys(arr.dim());
        const Hyperplane& w = arr.class_rep(e.wall);
        QVec wc(arr.dim());
        for (std::size_t j = 0; j < arr.dim(); ++j) wc[j] = Rational(w.normal[j]);
        sys.add(std::move(wc), Rational(w.offset), Relation::EQ);
        SignVector cs = class_signs_of(arr, g.chambers[e.from]);
        for (std::size_t c = 0; c < arr.class_count(); ++c) {
            if (c == e.wall) continue;
            const Hyperplane& h = arr.class_rep(c);
            QVec coeffs(arr.dim());
            for (std::size_t j = 0; j < arr.dim(); ++j)
                coeffs[j] = Rational(h.normal[j]) * Rational(int(cs[c]));
            sys.add(std::move(coeffs), Rational(h.offset) * Rational(int(cs[c])), Relation::GT);
        }
        CHECK(feasible(sys).feasible);
    }

    // braid edge count: each chamber of m=3 has 3 walls (simplicial cones)
    ChamberGraph gb = enumerate_chambers(braid_arrangement(3));
    CHECK(gb.edges.size() == 36); // 24 chambers * 3 facets / 2
}

TEST_CASE("bounded chambers") {
    // central arrangements have no bounded chambers
    ChamberGraph g2 = enumerate_chambers(braid_arrangement(2));
    CHECK(bounded_chambers(braid_arrangement(2), g2).empty());

    // x > 0, y > 0, x + y < 1: one bounded triangle among 7 regions
    Arrangement tri(2, {{zv({1, 0}), Int(0)},
                        {zv({0, 1}), Int(0)},
                        {zv({1, 1}), Int(-1)}});
    ChamberGraph gt = enumerate_chambers(tri);
    CHECK(gt.chambers.size() == 7);
    auto bt = bounded_chambers(tri, gt);
    REQUIRE(bt.size() == 1);
    const Chamber& ch = gt.chambers[bt[0]];
    CHECK(ch.sign == SignVector{1, 1, -1});

    // m+1 points on a line: m bounded intervals out of m+2 regions
    for (int m = 1; m <= 5; ++m) {
        std::vector<Hyperplane> pts;
        for (int i = 1; i <= m + 1; ++i) pts.push_back({zv({1}), Int(i)});
        Arrangement line(1, pts);
        ChamberGraph gl = enumerate_chambers(line);
        CHECK(gl.chambers.size() == static_cast<std::size_t>(m) + 2);
        CHECK(bounded_chambers(line, gl).size() == static_cast<std::size_t>(m));
    }
}

TEST_CASE("codim-2 localization of two generic lines") {
    Arrangement arr(2, {{zv({1, 0}), Int(0)}, {zv({0, 1}), Int(0)}});
    ChamberGraph g = enumerate_chambers(arr);
    REQUIRE(g.chambers.size() == 4);
    auto locs = codim2_faces(arr, g);
    REQUIRE(locs.size() == 1);
    const Localization& L = locs[0];
    CHECK(L.walls == std::vector<std::size_t>{0, 1});
    REQUIRE(L.faces.size() == 1);
    const Codim2Face& F = L.faces[0];
    REQUIRE(F.cycle.size() == 4);
    REQUIRE(L.crossing.size() == 4);
    // consecutive cycle chambers differ in exactly the crossing wall
    for (std::size_t t = 0; t < 4; ++t) {
        const SignVector& sa = g.chambers[F.cycle[t]].sign;
        const SignVector& sb = g.chambers[F.cycle[(t + 1) % 4]].sign;
        for (std::size_t c = 0; c < 2; ++c) {
            if (c == L.crossing[t])
                CHECK(sa[c] == -sb[c]);
            else
                CHECK(sa[c] == sb[c]);
        }
    }
    // each wall crossed exactly twice around the cycle
    CHECK(std::count(L.crossing.begin(), L.crossing.end(), std::size_t(0)) == 2);
    CHECK(std::count(L.crossing.begin(), L.crossing.end(), std::size_t(1)) == 2);
    // antipodal chambers sit opposite in the cycle
    for (std::size_t t = 0; t < 4; ++t) {
        const SignVector& sa = g.chambers[F.cycle[t]].sign;
        const SignVector& sb = g.chambers[F.cycle[(t + 2) % 4]].sign;
        for (std::size_t c = 0; c < 2; ++c) CHECK(sa[c] == -sb[c]);
    }
}

TEST_CASE("codim-2 localizations of braid arrangements") {
    // m = 2: a single flat (the origin), one face, hexagonal cycle
    {
        Arrangement arr = braid_arrangement(2);
        ChamberGraph g = enumerate_chambers(arr);
        auto locs = codim2_faces(arr, g);
        REQUIRE(locs.size() == 1);
        CHECK(locs[0].walls == std::vector<std::size_t>{0, 1, 2});
        REQUIRE(locs[0].faces.size() == 1);
        CHECK(locs[0].faces[0].cycle.size() == 6);
        // every chamber appears exactly once around the hexagon
        std::set<std::size_t> seen(locs[0].faces[0].cycle.begin(), locs[0].faces[0].cycle.end());
        CHECK(seen.size() == 6);
        // each wall crossed twice, at antipodal positions: crossing sequence
        // has period p, which is what reverses the two galleries' wall orders
        for (std::size_t wall : locs[0].walls)
            CHECK(std::count(locs[0].crossing.begin(), locs[0].crossing.end(), wall) == 2);
        const auto& cr = locs[0].crossing;
        for (std::size_t t = 0; t < 3; ++t) CHECK(cr[t] == cr[t + 3]);
    }

    // m = 3: four triple flats (cycle 6) + three pair flats (cycle 4)
    {
        Arrangement arr = braid_arrangement(3);
        ChamberGraph g = enumerate_chambers(arr);
        auto locs = codim2_faces(arr, g);
        REQUIRE(locs.size() == 7);
        std::size_t triples = 0, pairs = 0, faces6 = 0, faces4 = 0;
        for (const auto& L : locs) {
            if (L.walls.size() == 3) {
                ++triples;
                for (const auto& F : L.faces) {
                    CHECK(F.cycle.size() == 6);
                    ++faces6;
                }
            } else {
                REQUIRE(L.walls.size() == 2);
                ++pairs;
                for (const auto& F : L.faces) {
                    CHECK(F.cycle.size() == 4);
                    ++faces4;
                }
            }
            // cycle chambers straddle the flat: flipping all localized walls
            // of a cycle member yields the antipodal member p steps away
            const std::size_t twop = L.faces.empty() ? 0 : L.faces[0].cycle.size();
            for (const auto& F : L.faces)
                for (std::size_t t = 0; t < twop; ++t) {
                    SignVector s = g.chambers[F.cycle[t]].sign;
                    const SignVector& o = g.chambers[F.cycle[(t + twop / 2) % twop]].sign;
                    for (std::size_t i = 0; i < arr.size(); ++i) {
                        if (std::binary_search(L.walls.begin(), L.walls.end(), arr.class_of(i)))
                            CHECK(s[i] == -o[i]);
                        else
                            CHECK(s[i] == o[i]);
                    }
                }
        }
        CHECK(triples == 4);
        CHECK(pairs == 3);
        CHECK(faces6 == 8);  // each triple flat splits into 2 faces
        CHECK(faces4 == 6);
    }

    // non-central input is rejected
    Arrangement off(2, {{zv({1, 0}), Int(1)}, {zv({0, 1}), Int(0)}});
    ChamberGraph go = enumerate_chambers(off);
    CHECK_THROWS_AS(codim2_faces(off, go), InvalidInput);
}

TEST_CASE("eta arrangement from a torus datum") {
    // two quotient weights (1,0) and (0,1) with lifts shifting the walls
    MatZ a = MatZ::from_rows({zv({1, 0, 0, 1}), zv({0, 1, 1, 1})});
    TorusData td = TorusData::from_a_matrix(a);
    Character ch = Character::from_lift(td, zv({1, 1, 0, 0}));
    Arrangement arr = build_eta_arrangement(td, ch);
    REQUIRE(arr.dim() == 2);
    REQUIRE(arr.size() == 4);
    CHECK(arr[0].normal == zv({1, 0}));
    CHECK(arr[0].offset == 1);
    CHECK(arr[1].normal == zv({0, 1}));
    CHECK(arr[1].offset == 1);
    CHECK(arr[2].normal == zv({0, 1}));
    CHECK(arr[2].offset == 0);
    CHECK(arr[3].normal == zv({1, 1}));
    CHECK(arr[3].offset == 0);
    ChamberGraph g = enumerate_chambers(arr);
    CHECK(g.chambers.size() == 10);
    CHECK(bounded_chambers(arr, g).size() == 2);
}
