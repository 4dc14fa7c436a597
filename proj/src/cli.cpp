#include "mubgeo/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <iostream>

#include "mubgeo/affine.hpp"
#include "mubgeo/latin.hpp"
#include "mubgeo/wigner.hpp"

namespace mubgeo::cli {

namespace {

class Stopwatch {
  public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// wall-clock goes to the human output only; the JSON report stays byte-stable
void print_report(const RunReport& rep, const GlobalOpts& opts, double elapsed) {
    if (opts.json_output) {
        std::cout << rep.to_json().dump(2) << "\n";
        return;
    }
    std::cout << rep.command << ": " << rep.status << "\n";
    for (const auto& [key, value] : rep.metrics.items())
        std::cout << "  " << key << " = " << value.dump() << "\n";
    for (const auto& path : rep.artifacts) std::cout << "  wrote " << path << "\n";
    std::cout << "  elapsed_seconds = " << elapsed << "\n";
}

std::pair<Polytope, AffinePlane> quantum_pipeline(int n, std::uint64_t seed) {
    const auto [p, k] = prime_power_decompose(n);
    const auto F = field_create_cached(p, k);
    return {polytope_from_mubs(mub_construct(F, seed)), plane_from_field(F)};
}

}  // namespace

json RunReport::to_json() const {
    return {{"command", command}, {"status", status}, {"metrics", metrics},
            {"artifacts", artifacts}};
}

RunReport cmd_mub(int n, const std::string& out, const GlobalOpts& opts) {
    RunReport rep;
    rep.command = "mub " + std::to_string(n);
    const auto mubs = mub_for_dimension(n, opts.seed);
    const auto check = mub_verify_parallel(mubs.bases, opts.tolerance);
    rep.metrics["n"] = n;
    rep.metrics["bases"] = mubs.bases.size();
    rep.metrics["max_unbiasedness_deviation"] = check.unbias_max_dev;
    rep.metrics["max_orthonormality_error"] = check.ortho_max_err;
    rep.metrics["seed"] = mubs.seed;
    rep.status = check.pass ? "pass" : "fail";
    if (!out.empty()) {
        write_json_file(out, mubset_to_json(mubs));
        rep.artifacts.push_back(out);
    }
    return rep;
}

namespace {

RunReport plane_report(const AffinePlane& plane, std::string command, const std::string& out) {
    RunReport rep;
    rep.command = std::move(command);
    const auto axioms = verify_axioms(plane);
    rep.metrics["n"] = plane.n;
    rep.metrics["points"] = plane.num_points();
    rep.metrics["lines"] = plane.num_lines();
    rep.metrics["pencils"] = plane.pencils.size();
    rep.metrics["a1"] = axioms.a1_pass;
    rep.metrics["a2"] = axioms.a2_pass;
    rep.metrics["a3"] = axioms.a3_pass;
    rep.metrics["counting"] = axioms.counting_pass;
    if (!axioms.all_pass()) rep.metrics["witness"] = axioms.summary();
    rep.status = axioms.all_pass() ? "pass" : "fail";
    if (!out.empty()) {
        write_json_file(out, plane_to_json(plane));
        rep.artifacts.push_back(out);
    }
    return rep;
}

}  // namespace

RunReport cmd_plane_generate(int n, const std::string& out, const GlobalOpts&) {
    const auto [p, k] = prime_power_decompose(n);  // refuses unavailable orders
    const auto plane = plane_from_field(field_create_cached(p, k));
    return plane_report(plane, "plane " + std::to_string(n), out);
}

RunReport cmd_plane_from_mols(const std::string& mols_path, const std::string& out,
                              const GlobalOpts&) {
    const auto mols = mols_from_text(read_text_file(mols_path));
    const auto plane = plane_from_mols(mols);
    return plane_report(plane, "plane --from-mols " + mols_path, out);
}

RunReport cmd_plane_verify(const std::string& path, const GlobalOpts&) {
    const auto plane = plane_from_json(read_json_file(path));
    return plane_report(plane, "plane --verify " + path, "");
}

RunReport cmd_mols(int n, const std::string& out, const GlobalOpts&) {
    RunReport rep;
    rep.command = "mols " + std::to_string(n);
    const auto [p, k] = prime_power_decompose(n);
    const auto mols = mols_from_field(field_create_cached(p, k));
    validate_mols(mols);
    rep.metrics["n"] = n;
    rep.metrics["squares"] = mols.squares.size();
    if (!out.empty()) {
        write_text_file(out, mols_to_text(mols));
        rep.artifacts.push_back(out);
    }
    return rep;
}

RunReport cmd_mols_verify(const std::string& path, const GlobalOpts&) {
    RunReport rep;
    rep.command = "mols --verify " + path;
    const auto mols = mols_from_text(read_text_file(path));  // throws on malformed input
    rep.metrics["n"] = mols.n;
    rep.metrics["squares"] = mols.squares.size();
    int bad_pairs = 0;
    for (std::size_t a = 0; a < mols.squares.size(); ++a)
        for (std::size_t b = a + 1; b < mols.squares.size(); ++b)
            if (!are_orthogonal(mols.squares[a], mols.squares[b]).ok) ++bad_pairs;
    rep.metrics["non_orthogonal_pairs"] = bad_pairs;
    rep.status = bad_pairs == 0 ? "pass" : "fail";
    return rep;
}

RunReport cmd_tarry(int order, int jobs, const GlobalOpts&) {
    RunReport rep;
    rep.command = "tarry --order " + std::to_string(order);
    if (order < 2 || order > 6)
        throw OrderTooLarge("tarry: order must be between 2 and 6, got " +
                            std::to_string(order));
    const auto result = tarry_sweep_parallel(order, jobs);
    rep.metrics["order"] = order;
    rep.metrics["squares_examined"] = result.squares_examined;
    rep.metrics["mates_found"] = result.mates_found;
    const bool count_ok = result.squares_examined == reduced_square_count(order);
    const bool mates_ok = (order != 2 && order != 6) || result.mates_found == 0;
    rep.status = (count_ok && mates_ok) ? "pass" : "fail";
    return rep;
}

RunReport cmd_polytope(int n, bool abstract_realization, const std::string& out,
                       const GlobalOpts& opts) {
    RunReport rep;
    rep.command = "polytope " + std::to_string(n) + (abstract_realization ? " --abstract" : "");
    const Polytope poly = abstract_realization
                              ? polytope_abstract(n)
                              : polytope_from_mubs(mub_for_dimension(n, opts.seed));
    const auto gram = verify_polytope(poly, opts.tolerance);
    const auto positivity = positivity_report(poly, opts.tolerance);
    rep.metrics["n"] = n;
    rep.metrics["realization"] = abstract_realization ? "abstract" : "quantum";
    rep.metrics["corners"] = poly.num_corners();
    rep.metrics["trace_max_dev"] = gram.trace_max_dev;
    rep.metrics["purity_max_dev"] = gram.purity_max_dev;
    rep.metrics["intra_simplex_max_dev"] = gram.intra_max_dev;
    rep.metrics["cross_simplex_max_dev"] = gram.cross_max_dev;
    rep.metrics["radius_max_dev"] = gram.radius_max_dev;
    rep.metrics["min_eigenvalue"] = positivity.worst;
    rep.metrics["is_density_set"] = positivity.is_density_set;
    const bool pos_ok = abstract_realization || positivity.is_density_set;
    rep.status = (gram.pass && pos_ok) ? "pass" : "fail";
    if (!out.empty()) {
        json corners = json::array();
        for (const auto& simplex : poly.corners) {
            json row = json::array();
            for (const auto& P : simplex) row.push_back(matrix_to_json(P.matrix()));
            corners.push_back(std::move(row));
        }
        write_json_file(out, {{"n", n},
                              {"realization", abstract_realization ? "abstract" : "quantum"},
                              {"corners", std::move(corners)}});
        rep.artifacts.push_back(out);
    }
    return rep;
}

RunReport cmd_wigner(const std::string& state_path, int n, const std::string& plane_path,
                     const std::string& out_prefix, const GlobalOpts& opts) {
    RunReport rep;
    rep.command = "wigner --state " + state_path + " --n " + std::to_string(n);

    const HermitianOp rho{matrix_from_json(read_json_file(state_path))};
    if (rho.dim() != n)
        throw DimensionMismatch("wigner: state is " + std::to_string(rho.dim()) +
                                "-dimensional, --n says " + std::to_string(n));
    rho.require_unit_trace("wigner");
    const double state_min_eig = rho.min_eigenvalue();
    if (state_min_eig < -1e-10)
        std::cerr << "warning: state is not positive semidefinite (min eigenvalue "
                  << state_min_eig << "); the Wigner map is linear, proceeding\n";

    AffinePlane plane;
    Polytope poly;
    if (is_prime_power(n)) {
        auto built = quantum_pipeline(n, opts.seed);
        poly = std::move(built.first);
        plane = plane_path.empty() ? std::move(built.second)
                                   : plane_from_json(read_json_file(plane_path));
    } else {
        if (plane_path.empty())
            throw OrderNotPrimePower(std::to_string(n) +
                                     " is not a prime power; supply --plane for the abstract "
                                     "pipeline");
        poly = polytope_abstract(n);
        plane = plane_from_json(read_json_file(plane_path));
    }

    const auto simplex =
        std::make_shared<const DSimplex>(inscribe_dsimplex(poly, plane, opts.tolerance));
    const auto table = wigner_from_state(rho, simplex);
    const auto probs = line_probabilities(table);

    const double roundtrip_err =
        (state_from_wigner(table).matrix() - rho.matrix()).cwiseAbs().maxCoeff();
    double marginal_dev = 0;
    for (const auto& pencil : probs.per_pencil) {
        double sum = 0;
        for (double v : pencil) sum += v;
        marginal_dev = std::max(marginal_dev, std::abs(sum - 1.0));
    }
    double cross_dev = 0;
    for (int line = 0; line < plane.num_lines(); ++line) {
        const double direct =
            (corner_from_dsimplex(*simplex, line).matrix() * rho.matrix()).trace().real();
        const auto [pencil, pos] = dsimplex_line_corner(*simplex, line);
        cross_dev = std::max(cross_dev,
                             std::abs(probs.per_pencil[static_cast<std::size_t>(pencil)]
                                                      [static_cast<std::size_t>(pos)] -
                                      direct));
    }

    rep.metrics["n"] = n;
    rep.metrics["realization"] = poly.realization == Realization::quantum ? "quantum" : "abstract";
    rep.metrics["state_min_eigenvalue"] = state_min_eig;
    rep.metrics["total"] = table.total();
    rep.metrics["roundtrip_max_error"] = roundtrip_err;
    rep.metrics["pencil_marginal_max_dev"] = marginal_dev;
    rep.metrics["line_probability_cross_check_dev"] = cross_dev;
    rep.metrics["min_line_probability"] = probs.min_value;
    rep.metrics["has_negative_line_probability"] = probs.min_value < -opts.tolerance;
    rep.status = (roundtrip_err <= opts.tolerance && marginal_dev <= 1e-12 &&
                  cross_dev <= opts.tolerance)
                     ? "pass"
                     : "fail";
    if (!out_prefix.empty()) {
        const std::string wpath = out_prefix + ".wigner.json";
        const std::string ppath = out_prefix + ".lineprobs.csv";
        const std::string dpath = out_prefix + ".dsimplex.json";
        write_json_file(wpath, wigner_to_json(table));
        write_text_file(ppath, line_probabilities_to_csv(probs));
        write_json_file(dpath, dsimplex_to_json(*simplex));
        rep.artifacts.push_back(wpath);
        rep.artifacts.push_back(ppath);
        rep.artifacts.push_back(dpath);
    }
    return rep;
}

RunReport cmd_sic(int n, long long max_selections, const GlobalOpts& opts) {
    RunReport rep;
    rep.command = "sic " + std::to_string(n);
    prime_power_decompose(n);  // throws for non prime powers
    if (n > 9)
        throw OrderTooLarge("sic: supported for n <= 9, got " + std::to_string(n));

    auto [poly, plane] = quantum_pipeline(n, opts.seed);
    const auto sweep = sic_selection_sweep(poly, plane, max_selections, kDefaultSicSweepSeed);

    rep.metrics["n"] = n;
    rep.metrics["sic_found"] = sweep.found;
    rep.metrics["selections_tested"] = sweep.selections_tested;
    rep.metrics["exhaustive"] = sweep.exhaustive;
    rep.metrics["best_min_eigenvalue"] = sweep.best_min_eig;
    if (sweep.found) {
        rep.metrics["orientation"] = sweep.report.facet.is_sic &&
                                             !sweep.report.point_face.is_sic
                                         ? "facet"
                                         : "point_face";
        const auto& side =
            sweep.report.point_face.is_sic ? sweep.report.point_face : sweep.report.facet;
        rep.metrics["overlap_max_dev"] = side.overlap_max_dev;
        rep.metrics["pencil_perm"] = sweep.pencil_perm;
        rep.metrics["line_perms"] = sweep.line_perms;
        if (side.overlap_max_dev > 1e-8 || !sweep.report.is_sic) rep.status = "fail";
    }
    return rep;
}

int run(int argc, const char* const* argv) {
    CLI::App app{"mutually unbiased bases, the complementarity polytope, finite affine "
                 "planes, and the discrete Wigner function"};
    app.require_subcommand(1);

    GlobalOpts opts;
    app.add_option("--tolerance", opts.tolerance, "pass/fail tolerance")
        ->capture_default_str();
    app.add_option("--seed", opts.seed, "seed for the deterministic eigenbasis construction")
        ->capture_default_str();
    app.add_flag("--json", opts.json_output, "print the machine-readable report to stdout");

    int n = 0;
    std::string out, verify_path, from_mols, state_path, plane_path;
    int order = 6, jobs = 0;
    bool abstract_realization = false;
    long long max_selections = kDefaultSicSelectionBudget;

    auto* mub = app.add_subcommand("mub", "construct and verify a complete MUB set");
    mub->add_option("n", n, "dimension (prime power <= 16)")->required();
    mub->add_option("--out", out, "write the MUB set as JSON");

    auto* plane = app.add_subcommand("plane", "construct or verify an affine plane");
    plane->add_option("n", n, "order (prime power) for generation");
    plane->add_option("--from-mols", from_mols, "build the plane from a MOLS text file");
    plane->add_option("--verify", verify_path, "verify a plane JSON file");
    plane->add_option("--out", out, "write the plane as JSON");

    auto* mols = app.add_subcommand("mols", "mutually orthogonal Latin squares");
    mols->add_option("n", n, "order (prime power)");
    mols->add_option("--verify", verify_path, "check pairwise orthogonality of a text file");
    mols->add_option("--out", out, "write the squares as text");

    auto* tarry = app.add_subcommand(
        "tarry", "mate search over all reduced Latin squares of one order");
    tarry->add_option("--order", order, "order (2..6)")->capture_default_str();
    tarry->add_option("--jobs", jobs, "worker threads (0 = all cores)")->capture_default_str();

    auto* polytope = app.add_subcommand("polytope", "build and verify a complementarity polytope");
    polytope->add_option("n", n, "dimension")->required();
    polytope->add_flag("--abstract", abstract_realization,
                       "Bloch-space realization instead of MUB projectors");
    polytope->add_option("--out", out, "write the corners as JSON");

    auto* wigner = app.add_subcommand("wigner", "discrete Wigner function of a state");
    wigner->add_option("--state", state_path, "density matrix JSON ([re,im] pairs, row-major)")
        ->required();
    wigner->add_option("--n", n, "dimension")->required();
    wigner->add_option("--plane", plane_path, "affine plane JSON (defaults to the field plane)");
    wigner->add_option("--out", out, "output prefix for the table and line probabilities");

    auto* sic = app.add_subcommand("sic", "search selections for a MUB-SIC-POVM");
    sic->add_option("n", n, "dimension (prime power <= 9)")->required();
    sic->add_option("--max-selections", max_selections, "selection sweep budget")
        ->capture_default_str();

    // let the global flags (--json, --tolerance, --seed) appear after the
    // subcommand name as well
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Stopwatch timer;
        RunReport rep;
        if (mub->parsed()) {
            rep = cmd_mub(n, out, opts);
        } else if (plane->parsed()) {
            if (!verify_path.empty())
                rep = cmd_plane_verify(verify_path, opts);
            else if (!from_mols.empty())
                rep = cmd_plane_from_mols(from_mols, out, opts);
            else if (n > 0)
                rep = cmd_plane_generate(n, out, opts);
            else
                throw Error("plane: give an order, --from-mols, or --verify");
        } else if (mols->parsed()) {
            if (!verify_path.empty())
                rep = cmd_mols_verify(verify_path, opts);
            else if (n > 0)
                rep = cmd_mols(n, out, opts);
            else
                throw Error("mols: give an order or --verify");
        } else if (tarry->parsed()) {
            rep = cmd_tarry(order, jobs, opts);
        } else if (polytope->parsed()) {
            rep = cmd_polytope(n, abstract_realization, out, opts);
        } else if (wigner->parsed()) {
            rep = cmd_wigner(state_path, n, plane_path, out, opts);
        } else if (sic->parsed()) {
            rep = cmd_sic(n, max_selections, opts);
        }
        print_report(rep, opts, timer.seconds());
        return rep.passed() ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace mubgeo::cli
