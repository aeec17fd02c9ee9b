#pragma once
// Combinatorial model of the chamber groupoid of a central arrangement:
// vertices are chambers, generators are directed wall crossings with crossing
// back as the inverse, and one relation per codimension-2 face equating the
// two minimal galleries around it. Edge representations assign matrices to
// crossings; once the relations are verified, loops get well-defined
// monodromy.

#include <wallkit/arrangement.hpp>

#include <deque>
#include <map>
#include <set>
#include <utility>

namespace wallkit {

struct DirectedEdge {
    std::size_t from = 0;
    std::size_t to = 0;
    std::size_t wall = 0; // hyperplane class crossed
};

// Edges are stored in reverse pairs: 2t is a crossing, 2t+1 crosses back.
struct SalvettiGraph {
    std::vector<Chamber> chambers;
    std::vector<DirectedEdge> edges;
    std::vector<std::vector<std::size_t>> out; // edge ids leaving each chamber

    static std::size_t reverse_edge(std::size_t e) { return e ^ 1u; }
};

struct GroupoidPath {
    std::size_t start = 0;
    std::vector<std::size_t> edges; // directed edge ids, in crossing order
};

// One relation: the two galleries around a codimension-2 face, read from one
// of the 2p chambers in its cycle. Both cross the same walls, in opposite
// orders.
struct TwoCell {
    std::size_t localization = 0; // index into the codim2_faces output
    std::size_t face = 0;         // face index within that localization
    std::size_t base = 0;         // chamber id both galleries start from
    GroupoidPath gamma1;          // counterclockwise gallery to the antipode
    GroupoidPath gamma2;          // clockwise gallery to the antipode
};

struct SalvettiComplex {
    SalvettiGraph graph;
    std::vector<TwoCell> cells;
};

// Walks the path, validating each step, and returns the final chamber.
inline std::size_t path_end(const SalvettiGraph& g, const GroupoidPath& p) {
    if (p.start >= g.chambers.size()) throw IndexOutOfRange("path starts at an unknown chamber");
    std::size_t cur = p.start;
    for (std::size_t e : p.edges) {
        if (e >= g.edges.size()) throw IndexOutOfRange("path uses an unknown edge");
        if (g.edges[e].from != cur) throw EndpointMismatch("path edges do not chain");
        cur = g.edges[e].to;
    }
    return cur;
}

inline GroupoidPath reverse_path(const SalvettiGraph& g, const GroupoidPath& p) {
    GroupoidPath r;
    r.start = path_end(g, p);
    r.edges.reserve(p.edges.size());
    for (auto it = p.edges.rbegin(); it != p.edges.rend(); ++it)
        r.edges.push_back(SalvettiGraph::reverse_edge(*it));
    return r;
}

inline GroupoidPath compose(const SalvettiGraph& g, const GroupoidPath& p, const GroupoidPath& q) {
    if (path_end(g, p) != q.start) throw EndpointMismatch("second path does not start where the first ends");
    path_end(g, q);
    GroupoidPath out;
    out.start = p.start;
    out.edges = p.edges;
    out.edges.insert(out.edges.end(), q.edges.begin(), q.edges.end());
    return out;
}

// Chamber graph with both crossing directions and one relation cell per
// (codimension-2 face, chamber of its cycle).
inline SalvettiComplex build_salvetti(const Arrangement& arr,
                                      std::size_t max_dim = kDefaultDimensionBound) {
    if (!arr.central()) throw InvalidInput("groupoid construction expects a central arrangement");
    const ChamberGraph cg = enumerate_chambers(arr, max_dim);

    SalvettiComplex sc;
    sc.graph.chambers = cg.chambers;
    sc.graph.out.resize(cg.chambers.size());
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_of;
    for (const ChamberEdge& ce : cg.edges) {
        const std::size_t e = sc.graph.edges.size();
        sc.graph.edges.push_back({ce.from, ce.to, ce.wall});
        sc.graph.edges.push_back({ce.to, ce.from, ce.wall});
        sc.graph.out[ce.from].push_back(e);
        sc.graph.out[ce.to].push_back(e + 1);
        edge_of[{ce.from, ce.to}] = e;
        edge_of[{ce.to, ce.from}] = e + 1;
    }

    // defensive: the chamber graph of a real arrangement is connected
    if (!sc.graph.chambers.empty()) {
        std::vector<char> seen(sc.graph.chambers.size(), 0);
        std::deque<std::size_t> bfs{0};
        seen[0] = 1;
        std::size_t reached = 1;
        while (!bfs.empty()) {
            const std::size_t c = bfs.front();
            bfs.pop_front();
            for (std::size_t e : sc.graph.out[c]) {
                const std::size_t t = sc.graph.edges[e].to;
                if (seen[t]) continue;
                seen[t] = 1;
                ++reached;
                bfs.push_back(t);
            }
        }
        if (reached != sc.graph.chambers.size()) throw Disconnected("chamber graph is not connected");
    }

    const std::vector<Localization> locs = codim2_faces(arr, cg, max_dim);
    auto edge_between = [&](std::size_t a, std::size_t b) {
        auto it = edge_of.find({a, b});
        if (it == edge_of.end()) throw std::logic_error("face cycle step is not a chamber graph edge");
        return it->second;
    };
    for (std::size_t li = 0; li < locs.size(); ++li) {
        const Localization& loc = locs[li];
        const std::size_t p = loc.walls.size();
        const std::size_t len = 2 * p;
        for (std::size_t fi = 0; fi < loc.faces.size(); ++fi) {
            const Codim2Face& face = loc.faces[fi];
            for (std::size_t b = 0; b < len; ++b) {
                TwoCell cell;
                cell.localization = li;
                cell.face = fi;
                cell.base = face.cycle[b];
                cell.gamma1.start = cell.base;
                cell.gamma2.start = cell.base;
                for (std::size_t t = 0; t < p; ++t) {
                    cell.gamma1.edges.push_back(
                        edge_between(face.cycle[(b + t) % len], face.cycle[(b + t + 1) % len]));
                    cell.gamma2.edges.push_back(
                        edge_between(face.cycle[(b + len - t) % len], face.cycle[(b + len - t - 1) % len]));
                }
                sc.cells.push_back(std::move(cell));
            }
        }
    }
    return sc;
}

struct CellReport {
    std::size_t total = 0;
    std::vector<std::size_t> failures; // cell indices whose galleries disagree
    bool pass() const { return failures.empty(); }
};

class EdgeRepresentation;
inline CellReport check_two_cells(EdgeRepresentation& rep, const SalvettiGraph& g,
                                  const std::vector<TwoCell>& cells);

// One matrix per directed edge, with reverse pairs mutually inverse. The
// verified flag records a passed cell check; monodromy refuses to run
// without it.
class EdgeRepresentation {
public:
    static EdgeRepresentation from_matrices(const SalvettiGraph& g, std::vector<MatQ> mats) {
        if (mats.size() != g.edges.size()) throw InvalidInput("one matrix per directed edge is required");
        if (mats.empty()) throw InvalidInput("representation needs at least one edge");
        const std::size_t d = mats.front().rows();
        for (const MatQ& m : mats)
            if (m.rows() != d || m.cols() != d) throw InvalidInput("edge matrices must be square of one size");
        const MatQ id = MatQ::identity(d);
        for (std::size_t e = 0; e + 1 < mats.size(); e += 2)
            if (mats[e + 1] * mats[e] != id) throw InvalidInput("reverse edge pair is not mutually inverse");
        EdgeRepresentation rep;
        rep.per_edge_ = std::move(mats);
        rep.dim_ = d;
        return rep;
    }

    // One matrix per hyperplane class; crossing into the positive side of the
    // wall applies the matrix, crossing back applies its inverse.
    static EdgeRepresentation from_wall_matrices(const SalvettiGraph& g, const Arrangement& arr,
                                                 std::vector<MatQ> per_wall) {
        if (per_wall.size() != arr.class_count()) throw InvalidInput("one matrix per wall is required");
        std::vector<MatQ> inverses(per_wall.size());
        for (std::size_t c = 0; c < per_wall.size(); ++c) {
            auto inv = inverse(per_wall[c]);
            if (!inv) throw InvalidInput("wall matrix is singular");
            inverses[c] = std::move(*inv);
        }
        std::vector<MatQ> mats;
        mats.reserve(g.edges.size());
        for (const DirectedEdge& de : g.edges) {
            const std::size_t member = arr.class_members(de.wall).front();
            const int side = g.chambers[de.to].sign[member] * arr.orientation(member);
            mats.push_back(side > 0 ? per_wall[de.wall] : inverses[de.wall]);
        }
        return from_matrices(g, std::move(mats));
    }

    std::size_t dimension() const { return dim_; }
    std::size_t size() const { return per_edge_.size(); }
    bool verified() const { return verified_; }

    const MatQ& matrix(std::size_t e) const {
        if (e >= per_edge_.size()) throw MissingEdge("edge is not covered by the representation");
        return per_edge_[e];
    }

private:
    EdgeRepresentation() = default;

    std::vector<MatQ> per_edge_;
    std::size_t dim_ = 0;
    bool verified_ = false;

    friend CellReport check_two_cells(EdgeRepresentation&, const SalvettiGraph&,
                                      const std::vector<TwoCell>&);
};

// Product of the edge matrices along the path, in function order: the first
// crossing acts first.
inline MatQ evaluate(const EdgeRepresentation& rep, const SalvettiGraph& g, const GroupoidPath& p) {
    path_end(g, p);
    MatQ acc = MatQ::identity(rep.dimension());
    for (std::size_t e : p.edges) acc = rep.matrix(e) * acc;
    return acc;
}

// Evaluates both galleries of every cell. A full pass marks the
// representation verified.
inline CellReport check_two_cells(EdgeRepresentation& rep, const SalvettiGraph& g,
                                  const std::vector<TwoCell>& cells) {
    CellReport report;
    report.total = cells.size();
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (evaluate(rep, g, cells[i].gamma1) != evaluate(rep, g, cells[i].gamma2))
            report.failures.push_back(i);
    rep.verified_ = report.pass();
    return report;
}

inline MatQ monodromy(const EdgeRepresentation& rep, const SalvettiGraph& g, const GroupoidPath& loop) {
    if (!rep.verified()) throw UncheckedRepresentation("cell checks have not passed for this representation");
    if (path_end(g, loop) != loop.start) throw NotALoop("monodromy needs a closed path");
    return evaluate(rep, g, loop);
}

enum class Homotopy { Yes, No, Unknown };

struct HomotopyResult {
    Homotopy answer = Homotopy::Unknown;
    std::size_t substitutions = 0; // cell moves used when the answer is Yes
};

namespace detail {

// cancel adjacent mutually reverse crossings
inline std::vector<std::size_t> free_reduce(const std::vector<std::size_t>& word) {
    std::vector<std::size_t> out;
    for (std::size_t e : word) {
        if (!out.empty() && out.back() == SalvettiGraph::reverse_edge(e))
            out.pop_back();
        else
            out.push_back(e);
    }
    return out;
}

inline std::vector<std::size_t> reverse_word(const std::vector<std::size_t>& word) {
    std::vector<std::size_t> out;
    out.reserve(word.size());
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        out.push_back(SalvettiGraph::reverse_edge(*it));
    return out;
}

} // namespace detail

// Bounded search for a chain of cell substitutions and free cancellations
// carrying p to q. Yes is definitive; Unknown only means the bound ran out.
inline HomotopyResult homotopic_bounded(const SalvettiGraph& g, const std::vector<TwoCell>& cells,
                                        const GroupoidPath& p, const GroupoidPath& q,
                                        std::size_t max_substitutions) {
    if (p.start != q.start || path_end(g, p) != path_end(g, q))
        throw EndpointMismatch("homotopy needs matching endpoints");

    using Word = std::vector<std::size_t>;
    const Word target = detail::free_reduce(q.edges);
    const Word source = detail::free_reduce(p.edges);
    if (source == target) return {Homotopy::Yes, 0};

    std::vector<std::pair<Word, Word>> rules;
    for (const TwoCell& cell : cells) {
        const Word w1 = cell.gamma1.edges;
        const Word w2 = cell.gamma2.edges;
        rules.emplace_back(w1, w2);
        rules.emplace_back(w2, w1);
        rules.emplace_back(detail::reverse_word(w1), detail::reverse_word(w2));
        rules.emplace_back(detail::reverse_word(w2), detail::reverse_word(w1));
    }

    constexpr std::size_t kStateCap = 200000;
    std::set<Word> visited{source};
    std::deque<std::pair<Word, std::size_t>> queue{{source, 0}};
    while (!queue.empty()) {
        auto [word, depth] = std::move(queue.front());
        queue.pop_front();
        if (depth == max_substitutions) continue;
        for (const auto& [from, to] : rules) {
            if (from.size() > word.size()) continue;
            for (std::size_t at = 0; at + from.size() <= word.size(); ++at) {
                if (!std::equal(from.begin(), from.end(), word.begin() + static_cast<std::ptrdiff_t>(at)))
                    continue;
                Word next(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(at));
                next.insert(next.end(), to.begin(), to.end());
                next.insert(next.end(), word.begin() + static_cast<std::ptrdiff_t>(at + from.size()), word.end());
                next = detail::free_reduce(next);
                if (next == target) return {Homotopy::Yes, depth + 1};
                if (visited.size() >= kStateCap) return {Homotopy::Unknown, 0};
                if (visited.insert(next).second) queue.emplace_back(std::move(next), depth + 1);
            }
        }
    }
    return {Homotopy::Unknown, 0};
}

// Every chamber cone of a central arrangement has at least rank-many facets;
// simplicial means exactly that many, for every chamber.
inline bool is_simplicial(const Arrangement& arr, const SalvettiGraph& g) {
    if (!arr.central()) throw InvalidInput("simpliciality is defined for central arrangements");
    MatQ normals(arr.class_count(), arr.dim());
    for (std::size_t c = 0; c < arr.class_count(); ++c)
        for (std::size_t j = 0; j < arr.dim(); ++j)
            normals(c, j) = Rational(arr.class_rep(c).normal[j]);
    const std::size_t r = rank(normals);
    for (const auto& adj : g.out)
        if (adj.size() != r) return false;
    return true;
}

} // namespace wallkit
