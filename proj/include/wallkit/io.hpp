#pragma once
// Interchange layer: JSON (de)serialization of data, chambers, circuits,
// relations and representations, DOT emitters for the chamber graphs, and a
// CSV pairing table. Emission is deterministic: object keys are sorted,
// arrays follow stored order. Requires the single-header nlohmann json from
// the vendor directory.
//
// Conventions: rationals travel as "p/q" strings (plain "p" when integral);
// index lists shown to people (circuit members, wall labels in DOT) are
// 1-based, structural ids meant for reingestion (edge ids, chamber ids) stay
// 0-based.

#include <wallkit/groupoid.hpp>
#include <wallkit/semistab.hpp>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace wallkit {

using Json = nlohmann::json;

inline Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw InvalidInput(e.what());
        }
    }
    throw InvalidInput("expected an integer or a \"p/q\" string");
}

inline std::string sign_string(const SignVector& s) {
    std::string out;
    out.reserve(s.size());
    for (auto v : s) out.push_back(v > 0 ? '+' : (v < 0 ? '-' : '0'));
    return out;
}

namespace detail {

inline Int int_from_json(const Json& j) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw InvalidInput("expected an integer");
}

inline ZVec zvec_from_json(const Json& j) {
    if (!j.is_array()) throw InvalidInput("expected an array of integers");
    ZVec v;
    v.reserve(j.size());
    for (const auto& x : j) v.push_back(int_from_json(x));
    return v;
}

inline QVec qvec_from_json(const Json& j) {
    if (!j.is_array()) throw InvalidInput("expected an array of rationals");
    QVec v;
    v.reserve(j.size());
    for (const auto& x : j) v.push_back(rational_from_json(x));
    return v;
}

inline Json zvec_to_json(const ZVec& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(x.str());
    return out;
}

inline Json qvec_to_json(const QVec& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

// 1-based presentation of a 0-based index list
inline Json indices_to_json(const std::vector<std::size_t>& idx) {
    Json out = Json::array();
    for (auto i : idx) out.push_back(i + 1);
    return out;
}

} // namespace detail

struct NamedDatum {
    TorusData datum;
    std::vector<std::pair<std::string, Character>> characters;

    const Character& character(const std::string& name) const {
        for (const auto& [nm, ch] : characters)
            if (nm == name) return ch;
        throw InvalidInput("datum has no character named \"" + name + "\"");
    }
};

// { "n": int, "kbasis": [[int]], optional "a": [[int]],
//   "characters": [ { "name": str, "lift": [int] } ] }
// kbasis entries are the cocharacter generators (columns), each of length n.
inline NamedDatum datum_from_json(const Json& j) {
    if (!j.is_object()) throw InvalidInput("datum must be a JSON object");
    if (!j.contains("n") || !j["n"].is_number_integer()) throw InvalidInput("datum needs an integer \"n\"");
    const auto n = j["n"].get<long long>();
    if (n < 0) throw InvalidInput("ambient rank cannot be negative");
    if (!j.contains("kbasis") || !j["kbasis"].is_array()) throw InvalidInput("datum needs a \"kbasis\" array");

    std::vector<ZVec> gens;
    for (const auto& g : j["kbasis"]) {
        ZVec v = detail::zvec_from_json(g);
        if (v.size() != static_cast<std::size_t>(n)) throw InvalidInput("kbasis generator arity does not match n");
        gens.push_back(std::move(v));
    }
    MatZ kb(static_cast<std::size_t>(n), gens.size());
    for (std::size_t c = 0; c < gens.size(); ++c)
        for (std::size_t r = 0; r < kb.rows(); ++r) kb(r, c) = gens[c][r];

    auto build = [&]() {
        if (!j.contains("a")) return TorusData::from_k_basis(std::move(kb));
        if (!j["a"].is_array()) throw InvalidInput("\"a\" must be an array of rows");
        std::vector<ZVec> rows;
        for (const auto& r : j["a"]) {
            ZVec v = detail::zvec_from_json(r);
            if (v.size() != static_cast<std::size_t>(n)) throw InvalidInput("weight row arity does not match n");
            rows.push_back(std::move(v));
        }
        MatZ a(rows.size(), static_cast<std::size_t>(n));
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) = rows[r][c];
        return TorusData::from_parts(std::move(kb), std::move(a));
    };
    NamedDatum nd{build(), {}};

    if (j.contains("characters")) {
        if (!j["characters"].is_array()) throw InvalidInput("\"characters\" must be an array");
        for (const auto& c : j["characters"]) {
            if (!c.is_object() || !c.contains("name") || !c["name"].is_string() || !c.contains("lift"))
                throw InvalidInput("each character needs a \"name\" and a \"lift\"");
            const std::string name = c["name"].get<std::string>();
            for (const auto& [nm, ch] : nd.characters)
                if (nm == name) throw InvalidInput("duplicate character name \"" + name + "\"");
            nd.characters.emplace_back(name, Character::from_lift(nd.datum, detail::zvec_from_json(c["lift"])));
        }
    }
    return nd;
}

inline Json datum_to_json(const TorusData& td,
                          const std::vector<std::pair<std::string, ZVec>>& characters = {}) {
    Json j;
    j["n"] = td.n();
    Json kb = Json::array();
    for (std::size_t c = 0; c < td.k_rank(); ++c) kb.push_back(detail::zvec_to_json(td.kbasis().column(c)));
    j["kbasis"] = std::move(kb);
    Json a = Json::array();
    for (std::size_t r = 0; r < td.quotient_rank(); ++r) a.push_back(detail::zvec_to_json(td.a().row(r)));
    j["a"] = std::move(a);
    Json chars = Json::array();
    for (const auto& [name, lift] : characters)
        chars.push_back(Json{{"name", name}, {"lift", detail::zvec_to_json(lift)}});
    j["characters"] = std::move(chars);
    return j;
}

inline Json circuits_to_json(const std::vector<Circuit>& circuits) {
    Json list = Json::array();
    for (const Circuit& c : circuits)
        list.push_back(Json{{"indices", detail::indices_to_json(c.indices)},
                            {"beta", detail::zvec_to_json(c.beta)}});
    return Json{{"count", circuits.size()}, {"circuits", std::move(list)}};
}

// One row per cocharacter basis vector, one column per circuit; the entry is
// the coordinate of the circuit's relation vector in that basis.
inline std::string pairing_csv(const TorusData& td, const DiscriminantalArrangement& disc) {
    std::ostringstream os;
    os << "basis";
    for (std::size_t c = 0; c < disc.circuits.size(); ++c) {
        os << ",\"{";
        for (std::size_t t = 0; t < disc.circuits[c].indices.size(); ++t)
            os << (t ? "," : "") << disc.circuits[c].indices[t] + 1;
        os << "}\"";
    }
    os << "\n";
    for (std::size_t i = 0; i < td.k_rank(); ++i) {
        os << "f" << i + 1;
        for (const ZVec& gamma : disc.gammas) os << "," << gamma[i];
        os << "\n";
    }
    return os.str();
}

inline Json chambers_to_json(const Arrangement& arr, const ChamberGraph& g,
                             const std::vector<std::size_t>* bounded = nullptr) {
    Json hyperplanes = Json::array();
    for (std::size_t i = 0; i < arr.size(); ++i)
        hyperplanes.push_back(Json{{"normal", detail::zvec_to_json(arr[i].normal)},
                                   {"offset", arr[i].offset.str()}});
    Json chambers = Json::array();
    for (std::size_t i = 0; i < g.chambers.size(); ++i)
        chambers.push_back(Json{{"id", i},
                                {"sign", sign_string(g.chambers[i].sign)},
                                {"witness", detail::qvec_to_json(g.chambers[i].witness)}});
    Json edges = Json::array();
    for (const ChamberEdge& e : g.edges)
        edges.push_back(Json{{"from", e.from}, {"to", e.to}, {"wall", e.wall}});
    Json j{{"dim", arr.dim()},
           {"hyperplanes", std::move(hyperplanes)},
           {"count", g.chambers.size()},
           {"chambers", std::move(chambers)},
           {"edges", std::move(edges)}};
    if (bounded) {
        j["bounded"] = *bounded;
        j["bounded_count"] = bounded->size();
    }
    return j;
}

// Undirected chamber graph; nodes carry sign-vector labels, edges the 1-based
// wall class.
inline std::string chamber_graph_dot(const ChamberGraph& g) {
    std::ostringstream os;
    os << "graph chambers {\n  node [shape=box];\n";
    for (std::size_t i = 0; i < g.chambers.size(); ++i)
        os << "  c" << i << " [label=\"" << sign_string(g.chambers[i].sign) << "\"];\n";
    for (const ChamberEdge& e : g.edges)
        os << "  c" << e.from << " -- c" << e.to << " [label=\"w" << e.wall + 1 << "\"];\n";
    os << "}\n";
    return os.str();
}

// Directed crossing graph; one arrow per directed edge, labeled by its
// 0-based edge id and 1-based wall class.
inline std::string salvetti_dot(const SalvettiGraph& g) {
    std::ostringstream os;
    os << "digraph salvetti {\n  node [shape=box];\n";
    for (std::size_t i = 0; i < g.chambers.size(); ++i)
        os << "  c" << i << " [label=\"" << sign_string(g.chambers[i].sign) << "\"];\n";
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        os << "  c" << g.edges[e].from << " -> c" << g.edges[e].to
           << " [label=\"e" << e << " w" << g.edges[e].wall + 1 << "\"];\n";
    os << "}\n";
    return os.str();
}

// [ { "base": sign-vector, "gamma1": [edge ids], "gamma2": [edge ids] } ]
inline Json relations_to_json(const SalvettiGraph& g, const std::vector<TwoCell>& cells) {
    Json out = Json::array();
    for (const TwoCell& cell : cells) {
        Json g1 = Json::array(), g2 = Json::array();
        for (auto e : cell.gamma1.edges) g1.push_back(e);
        for (auto e : cell.gamma2.edges) g2.push_back(e);
        out.push_back(Json{{"base", sign_string(g.chambers[cell.base].sign)},
                           {"gamma1", std::move(g1)},
                           {"gamma2", std::move(g2)}});
    }
    return out;
}

inline MatQ matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw InvalidInput("matrix must be a non-empty array of rows");
    std::vector<QVec> rows;
    for (const auto& r : j) rows.push_back(detail::qvec_from_json(r));
    MatQ m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) throw InvalidInput("matrix rows have unequal lengths");
        for (std::size_t c = 0; c < m.cols(); ++c) m(i, c) = rows[i][c];
    }
    return m;
}

inline Json matrix_to_json(const MatQ& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json matrix_to_json(const MatZ& m) { return matrix_to_json(to_rational(m)); }

// { "dim": int, "normals": [[int]], optional "offsets": [int] }
inline Arrangement arrangement_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer() || !j.contains("normals"))
        throw InvalidInput("arrangement needs \"dim\" and \"normals\"");
    const auto dim = j["dim"].get<long long>();
    if (dim < 0) throw InvalidInput("dimension cannot be negative");
    std::vector<Hyperplane> hps;
    for (const auto& nj : j["normals"]) {
        ZVec n = detail::zvec_from_json(nj);
        if (n.size() != static_cast<std::size_t>(dim)) throw InvalidInput("normal arity does not match dim");
        hps.push_back({std::move(n), Int(0)});
    }
    if (j.contains("offsets")) {
        const ZVec offs = detail::zvec_from_json(j["offsets"]);
        if (offs.size() != hps.size()) throw InvalidInput("one offset per normal is required");
        for (std::size_t i = 0; i < hps.size(); ++i) hps[i].offset = offs[i];
    }
    return Arrangement(static_cast<std::size_t>(dim), std::move(hps));
}

// { "walls": [ matrix ] } with one matrix per wall class of the arrangement.
inline std::vector<MatQ> wall_matrices_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("walls") || !j["walls"].is_array())
        throw InvalidInput("representation needs a \"walls\" array of matrices");
    std::vector<MatQ> mats;
    for (const auto& mj : j["walls"]) mats.push_back(matrix_from_json(mj));
    return mats;
}

struct CotangentPointParse {
    CotangentPoint point;
    std::string character; // empty when the file does not name one
};

// Either { "z": [rat], "w": [rat] } or { "point": {...}, "character": name }.
inline CotangentPointParse point_from_json(const Json& j) {
    if (!j.is_object()) throw InvalidInput("point must be a JSON object");
    CotangentPointParse out;
    const Json* p = &j;
    if (j.contains("point")) {
        p = &j["point"];
        if (!p->is_object()) throw InvalidInput("\"point\" must be an object");
        if (j.contains("character")) {
            if (!j["character"].is_string()) throw InvalidInput("\"character\" must be a name");
            out.character = j["character"].get<std::string>();
        }
    }
    if (!p->contains("z") || !p->contains("w")) throw InvalidInput("point needs \"z\" and \"w\" arrays");
    out.point.z = detail::qvec_from_json((*p)["z"]);
    out.point.w = detail::qvec_from_json((*p)["w"]);
    if (out.point.z.size() != out.point.w.size()) throw InvalidInput("z and w arities differ");
    return out;
}

// Stable serialization: sorted keys, two-space indent, trailing newline.
inline std::string to_text(const Json& j) { return j.dump(2) + "\n"; }

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot read " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Full-content temp-file write plus rename: a failed run never leaves a
// partial output behind.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InvalidInput("cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw InvalidInput("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

// Reports parse failures with line/column positions.
inline Json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, col = 1;
        const std::size_t stop = e.byte == 0 ? 0 : e.byte - 1;
        for (std::size_t i = 0; i < stop && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::ostringstream os;
        os << origin << ":" << line << ":" << col << ": " << e.what();
        throw InvalidInput(os.str());
    }
}

} // namespace wallkit
