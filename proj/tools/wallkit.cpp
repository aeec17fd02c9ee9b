// Command-line surface over the library: datum ingestion, circuit and chamber
// reports, semistability verdicts, flop dimension tables, the crossing
// complex with its relations, representation certification, braid checks on
// the lattice shadow, and the built-in example corpus.
//
// Exit codes: 0 success, 1 internal failure (an invariant violation; always a
// bug), 2 input validation.

#include <CLI11.hpp>

#include <wallkit/io.hpp>
#include <wallkit/wallkit.hpp>

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace wallkit;

struct Common {
    std::string input;
    std::string output;
    std::string format = "json";
    std::size_t max_dim = kDefaultDimensionBound;
    std::uint64_t seed = 2026; // reserved for sampling surfaces; fixed seed, fixed bytes
    std::size_t depth = 6;     // reserved for bounded homotopy searches
};

void add_common(CLI::App* cmd, Common& c, bool with_input = true) {
    if (with_input) cmd->add_option("--input", c.input, "datum JSON file")->required();
    cmd->add_option("--output", c.output, "write here instead of stdout (atomic)");
    cmd->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"json", "dot", "csv", "text"}));
    cmd->add_option("--max-dim", c.max_dim, "elimination dimension bound");
    cmd->add_option("--seed", c.seed, "sampling seed");
    cmd->add_option("--depth", c.depth, "search depth bound");
}

NamedDatum load_datum(const std::string& path) {
    return datum_from_json(parse_json_text(read_file(path), path));
}

void emit(const Common& c, const std::string& text) {
    if (c.output.empty()) {
        std::cout << text;
        return;
    }
    write_file_atomic(c.output, text);
}

[[noreturn]] void reject_format(const std::string& cmd, const std::string& format) {
    throw InvalidInput(cmd + " does not support --format " + format);
}

// --m and --n assert the scale of the input datum
void check_scale(const NamedDatum& nd, long long m, long long n) {
    if (m >= 0 && (nd.datum.n() != static_cast<std::size_t>(m) + 1 ||
                   nd.datum.k_rank() != static_cast<std::size_t>(m)))
        throw InvalidInput("input datum does not match --m " + std::to_string(m));
    if (n >= 0 && nd.datum.n() != static_cast<std::size_t>(n))
        throw InvalidInput("input datum does not match --n " + std::to_string(n));
}

Character pick_character(const NamedDatum& nd, const std::vector<long long>& lift,
                         const std::string& name) {
    if (!lift.empty()) {
        ZVec v;
        v.reserve(lift.size());
        for (long long x : lift) v.push_back(Int(x));
        return Character::from_lift(nd.datum, std::move(v));
    }
    if (!name.empty()) return nd.character(name);
    if (nd.characters.empty())
        throw InvalidInput("datum carries no characters; pass --lift or --character");
    return nd.characters.front().second; // first declared is the default
}

std::string circuit_label(const Circuit& c) {
    std::ostringstream os;
    os << "{";
    for (std::size_t t = 0; t < c.indices.size(); ++t) os << (t ? "," : "") << c.indices[t] + 1;
    os << "}";
    return os.str();
}

void run_circuits(const Common& c, long long m, long long n) {
    const NamedDatum nd = load_datum(c.input);
    check_scale(nd, m, n);
    const std::vector<Circuit> circuits = enumerate_circuits(nd.datum);
    if (c.format == "json") {
        emit(c, to_text(circuits_to_json(circuits)));
    } else if (c.format == "csv") {
        emit(c, pairing_csv(nd.datum, discriminantal(nd.datum, circuits)));
    } else if (c.format == "text") {
        std::ostringstream os;
        os << "circuits: " << circuits.size() << "\n";
        for (const Circuit& x : circuits) {
            os << circuit_label(x) << " beta=[";
            for (std::size_t t = 0; t < x.beta.size(); ++t) os << (t ? "," : "") << x.beta[t];
            os << "]\n";
        }
        emit(c, os.str());
    } else {
        reject_format("circuits", c.format);
    }
}

void run_chambers(const Common& c, const std::string& which, long long m, long long n,
                  const std::vector<long long>& lift, const std::string& character) {
    const NamedDatum nd = load_datum(c.input);
    check_scale(nd, m, n);
    const bool eta = which == "eta";
    const Arrangement arr = eta
        ? build_eta_arrangement(nd.datum, pick_character(nd, lift, character))
        : discriminantal(nd.datum).arrangement;
    const ChamberGraph graph = enumerate_chambers(arr, c.max_dim);
    std::vector<std::size_t> bounded;
    if (eta) bounded = bounded_chambers(arr, graph, c.max_dim);
    if (c.format == "json") {
        emit(c, to_text(chambers_to_json(arr, graph, eta ? &bounded : nullptr)));
    } else if (c.format == "dot") {
        emit(c, chamber_graph_dot(graph));
    } else if (c.format == "text") {
        std::ostringstream os;
        os << "chambers: " << graph.chambers.size() << "\n";
        if (eta) os << "bounded: " << bounded.size() << "\n";
        emit(c, os.str());
    } else {
        reject_format("chambers", c.format);
    }
}

void run_semistable(const Common& c, const std::string& point_path, const std::string& character) {
    const NamedDatum nd = load_datum(c.input);
    const CotangentPointParse req = point_from_json(parse_json_text(read_file(point_path), point_path));
    const std::string name = !character.empty() ? character : req.character;
    const Character ch = pick_character(nd, {}, name);
    const std::vector<Circuit> circuits = enumerate_circuits(nd.datum);

    const bool mz = moment_zero(nd.datum, req.point, circuits);
    const bool konno = konno_semistable(nd.datum, ch, req.point, circuits);
    Json halfspace;
    try {
        halfspace = halfspace_semistable(nd.datum, ch, req.point, circuits, c.max_dim);
    } catch (const NotOnMomentFibre&) {
        halfspace = "NotOnMomentFibre";
    }
    const Json verdict{{"moment_zero", mz}, {"konno", konno}, {"halfspace", halfspace}};
    if (c.format == "json") {
        emit(c, to_text(verdict));
    } else if (c.format == "text") {
        std::ostringstream os;
        os << "moment_zero: " << (mz ? "true" : "false") << "\n"
           << "konno: " << (konno ? "true" : "false") << "\n"
           << "halfspace: " << (halfspace.is_boolean() ? (halfspace.get<bool>() ? "true" : "false")
                                                       : halfspace.get<std::string>())
           << "\n";
        emit(c, os.str());
    } else {
        reject_format("semistable", c.format);
    }
}

void run_flopdims(const Common& c) {
    const NamedDatum nd = load_datum(c.input);
    const std::vector<Circuit> circuits = enumerate_circuits(nd.datum);
    std::vector<FlopData> records;
    records.reserve(circuits.size());
    for (const Circuit& x : circuits) records.push_back(flop_dimensions(nd.datum, x));
    if (c.format == "json") {
        Json rows = Json::array();
        for (const FlopData& fd : records) {
            Json row{{"circuit", Json::array()},
                     {"dim_M", fd.dim_M},
                     {"dim_B_theta", fd.dim_B_theta},
                     {"dim_B_eta_theta", fd.dim_B_eta_theta},
                     {"dim_Z0", fd.dim_Z0}};
            for (auto i : fd.circuit.indices) row["circuit"].push_back(i + 1);
            row["fibre_dim"] = fd.fibre_dim ? Json(*fd.fibre_dim) : Json(nullptr);
            rows.push_back(std::move(row));
        }
        emit(c, to_text(Json{{"count", records.size()}, {"records", std::move(rows)}}));
    } else if (c.format == "csv") {
        std::ostringstream os;
        os << "circuit,dim_M,dim_B_theta,dim_B_eta_theta,dim_Z0,fibre_dim\n";
        for (const FlopData& fd : records) {
            os << "\"" << circuit_label(fd.circuit) << "\"," << fd.dim_M << "," << fd.dim_B_theta
               << "," << fd.dim_B_eta_theta << "," << fd.dim_Z0 << ",";
            if (fd.fibre_dim) os << *fd.fibre_dim;
            os << "\n";
        }
        emit(c, os.str());
    } else if (c.format == "text") {
        std::ostringstream os;
        for (const FlopData& fd : records) {
            os << circuit_label(fd.circuit) << ": dim_M=" << fd.dim_M
               << " dim_B_theta=" << fd.dim_B_theta << " dim_B_eta_theta=" << fd.dim_B_eta_theta
               << " dim_Z0=" << fd.dim_Z0 << " fibre_dim=";
            if (fd.fibre_dim)
                os << *fd.fibre_dim;
            else
                os << "-";
            os << "\n";
        }
        emit(c, os.str());
    } else {
        reject_format("flopdims", c.format);
    }
}

void run_salvetti(const Common& c) {
    const NamedDatum nd = load_datum(c.input);
    const DiscriminantalArrangement disc = discriminantal(nd.datum);
    const SalvettiComplex sc = build_salvetti(disc.arrangement, c.max_dim);
    const bool simplicial = is_simplicial(disc.arrangement, sc.graph);
    if (c.format == "json") {
        emit(c, to_text(Json{{"chambers", sc.graph.chambers.size()},
                             {"directed_edges", sc.graph.edges.size()},
                             {"cells", sc.cells.size()},
                             {"simplicial", simplicial},
                             {"relations", relations_to_json(sc.graph, sc.cells)}}));
    } else if (c.format == "dot") {
        emit(c, salvetti_dot(sc.graph));
    } else if (c.format == "text") {
        std::ostringstream os;
        os << "chambers: " << sc.graph.chambers.size() << "\n"
           << "directed edges: " << sc.graph.edges.size() << "\n"
           << "cells: " << sc.cells.size() << "\n"
           << "simplicial: " << (simplicial ? "yes" : "no") << "\n";
        emit(c, os.str());
    } else {
        reject_format("salvetti", c.format);
    }
}

void run_certify(const Common& c, long long am, const std::string& rep_path,
                 const std::string& arrangement_path) {
    if (am >= 0) {
        if (am < 1) throw InvalidInput("certify --am needs a scale of at least 1");
        const CertifyReport report = certify_am_action(static_cast<std::size_t>(am), c.max_dim);
        if (c.format == "json") {
            emit(c, to_text(Json{{"m", report.m},
                                 {"cells_total", report.cells.total},
                                 {"cell_failures", report.cells.failures},
                                 {"monodromies", report.monodromy_count},
                                 {"identity_monodromies", report.identity_monodromies},
                                 {"certified", report.certified}}));
        } else if (c.format == "text") {
            std::ostringstream os;
            if (report.certified)
                os << "PASS: " << report.cells.total - report.cells.failures.size() << "/"
                   << report.cells.total << " cells, " << report.identity_monodromies << "/"
                   << report.monodromy_count << " identity monodromies\n";
            else {
                os << "FAIL:";
                for (auto i : report.cells.failures) os << " cell " << i;
                os << "\n";
            }
            emit(c, os.str());
        } else {
            reject_format("certify", c.format);
        }
        return;
    }
    if (rep_path.empty() || arrangement_path.empty())
        throw InvalidInput("certify needs either --am M or both --rep and --arrangement");
    const Arrangement arr =
        arrangement_from_json(parse_json_text(read_file(arrangement_path), arrangement_path));
    const SalvettiComplex sc = build_salvetti(arr, c.max_dim);
    const std::vector<MatQ> walls =
        wall_matrices_from_json(parse_json_text(read_file(rep_path), rep_path));
    if (walls.size() != arr.class_count())
        throw InvalidInput("representation has " + std::to_string(walls.size()) +
                           " wall matrices for " + std::to_string(arr.class_count()) + " walls");
    EdgeRepresentation rep = EdgeRepresentation::from_wall_matrices(sc.graph, arr, walls);
    const CellReport report = check_two_cells(rep, sc.graph, sc.cells);
    if (c.format == "json") {
        Json failing = Json::array();
        for (auto i : report.failures)
            failing.push_back(Json{{"cell", i}, {"base", sign_string(sc.graph.chambers[sc.cells[i].base].sign)}});
        emit(c, to_text(Json{{"cells_total", report.total},
                             {"cell_failures", std::move(failing)},
                             {"certified", report.pass()}}));
    } else if (c.format == "text") {
        std::ostringstream os;
        if (report.pass())
            os << "PASS: " << report.total << "/" << report.total << " cells\n";
        else {
            os << "FAIL: " << report.failures.size() << "/" << report.total << " cells violated;";
            for (auto i : report.failures)
                os << " cell " << i << " (base "
                   << sign_string(sc.graph.chambers[sc.cells[i].base].sign) << ")";
            os << "\n";
        }
        emit(c, os.str());
    } else {
        reject_format("certify", c.format);
    }
}

void run_braidcheck(const Common& c, long long m) {
    if (m < 1) throw InvalidInput("braidcheck needs --m at least 1");
    const BraidReport report = verify_braid_relations(static_cast<std::size_t>(m));
    if (c.format == "json") {
        Json failures = Json::array();
        for (const auto& [i, j] : report.failures) failures.push_back(Json::array({i, j}));
        emit(c, to_text(Json{{"m", report.m},
                             {"braid_checked", report.braid_checked},
                             {"commute_checked", report.commute_checked},
                             {"failures", std::move(failures)},
                             {"pass", report.pass()}}));
    } else if (c.format == "text") {
        std::ostringstream os;
        os << (report.pass() ? "PASS" : "FAIL") << ": " << report.braid_checked
           << " braid relations, " << report.commute_checked << " commutations\n";
        emit(c, os.str());
    } else {
        reject_format("braidcheck", c.format);
    }
}

void run_example(const Common& c, const std::string& name, long long m, long long n) {
    TorusData datum = example_quad();
    std::vector<std::pair<std::string, ZVec>> characters;
    if (name == "am") {
        if (m < 1) throw InvalidInput("example am needs --m at least 1");
        datum = example_am(static_cast<std::size_t>(m));
        characters.emplace_back("eta", example_am_lift(static_cast<std::size_t>(m)));
    } else if (name == "tpn") {
        if (n < 2) throw InvalidInput("example tpn needs --n at least 2");
        datum = example_tpn(static_cast<std::size_t>(n));
        characters.emplace_back("eta", example_tpn_lift(static_cast<std::size_t>(n), true));
        characters.emplace_back("eta_neg", example_tpn_lift(static_cast<std::size_t>(n), false));
    } else if (name == "ex23") {
        characters.emplace_back("eta", example_quad_lift());
    } else {
        throw InvalidInput("unknown example \"" + name + "\"; choose am, tpn, or ex23");
    }
    if (c.format != "json") reject_format("example", c.format);
    emit(c, to_text(datum_to_json(datum, characters)));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact wall-crossing combinatorics toolkit"};
    app.require_subcommand(1);

    Common c;
    long long m = -1, n = -1, am = -1;
    std::string which = "discriminantal", character, point_path, rep_path, arrangement_path;
    std::string example_name;
    std::vector<long long> lift;

    CLI::App* circuits = app.add_subcommand("circuits", "circuit inventory of a datum");
    add_common(circuits, c);
    circuits->add_option("--m", m, "assert the chain scale of the input");
    circuits->add_option("--n", n, "assert the ambient rank of the input");

    CLI::App* chambers = app.add_subcommand("chambers", "chamber inventory of an arrangement");
    add_common(chambers, c);
    chambers->add_option("--which", which, "eta or discriminantal")
        ->check(CLI::IsMember({"eta", "discriminantal"}));
    chambers->add_option("--m", m, "assert the chain scale of the input");
    chambers->add_option("--n", n, "assert the ambient rank of the input");
    chambers->add_option("--lift", lift, "character lift, comma separated")->delimiter(',');
    chambers->add_option("--character", character, "named character from the datum");

    CLI::App* semistable = app.add_subcommand("semistable", "semistability verdict for a point");
    add_common(semistable, c);
    semistable->add_option("--point", point_path, "point JSON file")->required();
    semistable->add_option("--character", character, "named character from the datum");

    CLI::App* flopdims = app.add_subcommand("flopdims", "wall-crossing dimension records per circuit");
    add_common(flopdims, c);

    CLI::App* salvetti = app.add_subcommand("salvetti", "crossing complex of the wall arrangement");
    add_common(salvetti, c);

    CLI::App* certify = app.add_subcommand("certify", "check the gallery relations of a representation");
    add_common(certify, c, false);
    certify->add_option("--am", am, "certify the built-in chain action at this scale");
    certify->add_option("--rep", rep_path, "wall matrices JSON file");
    certify->add_option("--arrangement", arrangement_path, "central arrangement JSON file");

    CLI::App* braidcheck = app.add_subcommand("braidcheck", "braid relations on the lattice shadow");
    add_common(braidcheck, c, false);
    braidcheck->add_option("--m", m, "chain scale")->required();

    CLI::App* example = app.add_subcommand("example", "write a built-in example datum");
    add_common(example, c, false);
    example->add_option("name", example_name, "am, tpn, or ex23")->required();
    example->add_option("--m", m, "chain scale for am");
    example->add_option("--n", n, "ambient rank for tpn");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (circuits->parsed()) run_circuits(c, m, n);
        else if (chambers->parsed()) run_chambers(c, which, m, n, lift, character);
        else if (semistable->parsed()) run_semistable(c, point_path, character);
        else if (flopdims->parsed()) run_flopdims(c);
        else if (salvetti->parsed()) run_salvetti(c);
        else if (certify->parsed()) run_certify(c, am, rep_path, arrangement_path);
        else if (braidcheck->parsed()) run_braidcheck(c, m);
        else if (example->parsed()) run_example(c, example_name, m, n);
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
