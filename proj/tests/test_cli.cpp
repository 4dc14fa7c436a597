#include <doctest.h>

#include <filesystem>

#include "mubgeo/cli.hpp"
#include "mubgeo/latin.hpp"
#include "mubgeo/wigner.hpp"

using namespace mubgeo;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("mubgeo_test_" + std::to_string(
                                     std::chrono::steady_clock::now().time_since_epoch().count()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

const cli::GlobalOpts kOpts;

}  // namespace

TEST_CASE("cmd_mub writes a reloadable, reverifiable set") {
    TempDir tmp;
    const auto out = tmp.file("m9.json");
    const auto rep = cli::cmd_mub(9, out, kOpts);
    CHECK(rep.passed());
    CHECK(rep.metrics["max_unbiasedness_deviation"].get<double>() < 1e-10);
    REQUIRE(rep.artifacts.size() == 1);

    const auto loaded = mubset_from_json(read_json_file(out));
    CHECK(loaded.n == 9);
    CHECK(loaded.modulus == std::vector<int>{1, 0, 1});
    CHECK(mub_verify(loaded.bases).pass);
}

TEST_CASE("cmd_mub refuses non prime powers") {
    CHECK_THROWS_AS(cli::cmd_mub(6, "", kOpts), OrderNotPrimePower);
    CHECK_THROWS_AS(cli::cmd_mub(10, "", kOpts), OrderNotPrimePower);
}

TEST_CASE("report json is byte-stable across runs") {
    const auto a = cli::cmd_mub(5, "", kOpts).to_json().dump();
    const auto b = cli::cmd_mub(5, "", kOpts).to_json().dump();
    CHECK(a == b);
    const auto t1 = cli::cmd_tarry(4, 1, kOpts).to_json().dump();
    const auto t2 = cli::cmd_tarry(4, 4, kOpts).to_json().dump();
    CHECK(t1 == t2);  // thread count must not leak into the report
}

TEST_CASE("cmd_plane generation and verification") {
    TempDir tmp;
    const auto out = tmp.file("p3.json");
    const auto rep = cli::cmd_plane_generate(3, out, kOpts);
    CHECK(rep.passed());
    CHECK(rep.metrics["points"] == 9);
    CHECK(rep.metrics["lines"] == 12);
    CHECK(rep.metrics["pencils"] == 4);

    CHECK(cli::cmd_plane_verify(out, kOpts).passed());

    // corrupt one incidence: A1 must fail with a witness
    auto j = read_json_file(out);
    j["lines"][0][0] = 5;
    const auto bad = tmp.file("corrupted.json");
    write_json_file(bad, j);
    const auto vrep = cli::cmd_plane_verify(bad, kOpts);
    CHECK_FALSE(vrep.passed());
    CHECK(vrep.metrics["a1"] == false);
    CHECK(vrep.metrics.contains("witness"));

    CHECK_THROWS_AS(cli::cmd_plane_generate(6, "", kOpts), OrderNotPrimePower);
}

TEST_CASE("cmd_plane accepts an externally supplied MOLS file") {
    TempDir tmp;
    const auto mols_path = tmp.file("mols4.txt");
    write_text_file(mols_path, mols_to_text(mols_from_field(field_create(2, 2))));
    const auto rep = cli::cmd_plane_from_mols(mols_path, tmp.file("p4.json"), kOpts);
    CHECK(rep.passed());
    CHECK(rep.metrics["n"] == 4);
    CHECK(rep.metrics["lines"] == 20);
}

TEST_CASE("cmd_mols round trip through files") {
    TempDir tmp;
    const auto out = tmp.file("mols5.txt");
    const auto rep = cli::cmd_mols(5, out, kOpts);
    CHECK(rep.passed());
    CHECK(rep.metrics["squares"] == 4);
    CHECK(cli::cmd_mols_verify(out, kOpts).passed());

    // break orthogonality: duplicate one square
    auto mols = mols_from_text(read_text_file(out));
    mols.squares[1] = mols.squares[0];
    const auto bad = tmp.file("bad.txt");
    write_text_file(bad, mols_to_text(mols));
    CHECK_FALSE(cli::cmd_mols_verify(bad, kOpts).passed());
}

TEST_CASE("cmd_tarry") {
    const auto r3 = cli::cmd_tarry(3, 1, kOpts);
    CHECK(r3.passed());
    CHECK(r3.metrics["squares_examined"] == 1);
    CHECK(r3.metrics["mates_found"] == 1);

    const auto r2 = cli::cmd_tarry(2, 1, kOpts);
    CHECK(r2.passed());
    CHECK(r2.metrics["mates_found"] == 0);

    CHECK_THROWS_AS(cli::cmd_tarry(7, 1, kOpts), OrderTooLarge);
}

TEST_CASE("cmd_polytope") {
    const auto quantum = cli::cmd_polytope(3, false, "", kOpts);
    CHECK(quantum.passed());
    CHECK(quantum.metrics["is_density_set"] == true);

    const auto abstract6 = cli::cmd_polytope(6, true, "", kOpts);
    CHECK(abstract6.passed());
    CHECK(abstract6.metrics["is_density_set"] == false);
    CHECK(abstract6.metrics["cross_simplex_max_dev"].get<double>() < 1e-10);
}

TEST_CASE("cmd_wigner") {
    TempDir tmp;
    SUBCASE("maximally mixed state gives the uniform table") {
        const auto state = tmp.file("mixed3.json");
        write_json_file(state, matrix_to_json(maximally_mixed(3).matrix()));
        const auto rep = cli::cmd_wigner(state, 3, "", tmp.file("w"), kOpts);
        CHECK(rep.passed());
        CHECK(rep.metrics["has_negative_line_probability"] == false);
        const auto table = read_json_file(tmp.file("w") + ".wigner.json");
        for (const auto& row : table["values"])
            for (const auto& v : row)
                CHECK(v.get<double>() == doctest::Approx(1.0 / 9).epsilon(1e-12));
    }
    SUBCASE("non-positive unit-trace input proceeds with a warning") {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
        m(0, 0) = 1.5;
        m(1, 1) = -0.5;
        const auto state = tmp.file("nonpos.json");
        write_json_file(state, matrix_to_json(m));
        const auto rep = cli::cmd_wigner(state, 2, "", "", kOpts);
        CHECK(rep.passed());  // the map is linear, identities still hold
        CHECK(rep.metrics["state_min_eigenvalue"].get<double>() < -0.4);
    }
    SUBCASE("non unit trace is an input error") {
        const auto state = tmp.file("trace2.json");
        write_json_file(state, matrix_to_json(Eigen::MatrixXcd::Identity(2, 2)));
        CHECK_THROWS_AS(cli::cmd_wigner(state, 2, "", "", kOpts), NotUnitTrace);
    }
    SUBCASE("an explicit plane file is honored") {
        const auto plane_path = tmp.file("p2.json");
        cli::cmd_plane_generate(2, plane_path, kOpts);
        const auto state = tmp.file("mixed2.json");
        write_json_file(state, matrix_to_json(maximally_mixed(2).matrix()));
        CHECK(cli::cmd_wigner(state, 2, plane_path, "", kOpts).passed());
    }
}

TEST_CASE("cmd_sic") {
    const auto r2 = cli::cmd_sic(2, 100, kOpts);
    CHECK(r2.passed());
    CHECK(r2.metrics["sic_found"] == true);

    const auto r4 = cli::cmd_sic(4, 200, kOpts);
    CHECK(r4.passed());
    CHECK(r4.metrics["sic_found"] == false);
    CHECK(r4.metrics["best_min_eigenvalue"].get<double>() < -1e-3);

    CHECK_THROWS_AS(cli::cmd_sic(6, 100, kOpts), OrderNotPrimePower);
    CHECK_THROWS_AS(cli::cmd_sic(16, 100, kOpts), OrderTooLarge);
}

TEST_CASE("run() maps outcomes to exit codes") {
    auto exit_code = [](std::initializer_list<const char*> args) {
        std::vector<const char*> argv = {"mubgeo"};
        argv.insert(argv.end(), args.begin(), args.end());
        return cli::run(static_cast<int>(argv.size()), argv.data());
    };
    CHECK(exit_code({"mub", "5"}) == 0);
    CHECK(exit_code({"mub", "6"}) == 2);
    CHECK(exit_code({"mub"}) == 2);         // missing argument
    CHECK(exit_code({"nonsense"}) == 2);    // unknown subcommand
    CHECK(exit_code({"tarry", "--order", "3"}) == 0);

    TempDir tmp;
    const auto out = tmp.file("p3.json");
    CHECK(exit_code({"plane", "3", "--out", out.c_str()}) == 0);
    auto j = read_json_file(out);
    j["lines"][2][1] = 0;
    const auto bad = tmp.file("bad.json");
    write_json_file(bad, j);
    CHECK(exit_code({"plane", "--verify", bad.c_str()}) == 1);   // invariant failure
    CHECK(exit_code({"plane", "--verify", "/nonexistent"}) == 2);
}
