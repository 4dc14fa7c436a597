#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <filesystem>

#include "mubgeo/json_io.hpp"
#include "mubgeo/polytope.hpp"
#include "test_util.hpp"

using namespace mubgeo;
using mubgeo::testing::TestRng;
namespace fs = std::filesystem;

TEST_CASE("complex matrix json round trip preserves entries exactly") {
    TestRng rng(61);
    for (int trial = 0; trial < 5; ++trial) {
        const int n = 2 + trial;
        const Eigen::MatrixXcd m = rng.random_density(n);
        const Eigen::MatrixXcd back = matrix_from_json(matrix_to_json(m));
        CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);  // doubles survive json verbatim
    }
    CHECK_THROWS_AS(matrix_from_json(json::array()), ParseFailure);
    CHECK_THROWS_AS(matrix_from_json(json::parse("[[1.0]]")), ParseFailure);
    CHECK_THROWS_AS(matrix_from_json(json::parse("[[[1,0],[0,0]],[[1,0]]]")), ParseFailure);
}

TEST_CASE("field table json round trip") {
    const auto F = field_create(3, 2);
    const auto back = field_from_json(field_to_json(F));
    CHECK(back.p == F.p);
    CHECK(back.k == F.k);
    CHECK(back.modulus == F.modulus);
    CHECK(back.mul_table == F.mul_table);
    CHECK(back.add_table == F.add_table);
    CHECK(back.inv_table == F.inv_table);
    CHECK(back.trace_table == F.trace_table);

    auto j = field_to_json(F);
    j["mul"][1][1] = 2;  // 1*1 must stay 1
    CHECK_THROWS_AS(field_from_json(j), ParseFailure);
}

TEST_CASE("field cache under MUBGEO_CACHE_DIR") {
    const fs::path dir = fs::temp_directory_path() / "mubgeo_cache_test";
    fs::remove_all(dir);
    setenv("MUBGEO_CACHE_DIR", dir.c_str(), 1);

    const auto F = field_create_cached(2, 3);
    CHECK(fs::exists(dir / "gf_2_3.json"));
    const auto again = field_create_cached(2, 3);  // served from the cache file
    CHECK(again.mul_table == F.mul_table);
    CHECK(again.trace_table == F.trace_table);

    unsetenv("MUBGEO_CACHE_DIR");
    fs::remove_all(dir);
    const auto plain = field_create_cached(2, 3);
    CHECK(plain.mul_table == F.mul_table);
}

TEST_CASE("plane json round trip") {
    const auto plane = plane_from_field(field_create(5, 1));
    const auto back = plane_from_json(plane_to_json(plane));
    CHECK(back.n == plane.n);
    CHECK(back.lines == plane.lines);
    CHECK(back.pencils == plane.pencils);
}

TEST_CASE("an externally supplied plane drives the inscription") {
    // a relabeled plane arriving as json, the way a non-field plane would
    TestRng rng(62);
    const auto F = field_create(3, 2);
    auto plane = plane_from_field(F);
    const auto perm = rng.random_perm(plane.num_points());
    for (auto& line : plane.lines) {
        for (int& p : line) p = perm[static_cast<std::size_t>(p)];
        std::sort(line.begin(), line.end());
    }
    const auto loaded = plane_from_json(plane_to_json(plane));
    CHECK(verify_axioms(loaded).all_pass());

    const auto poly = polytope_from_mubs(mub_construct(F));
    const auto D = inscribe_dsimplex(poly, loaded);
    CHECK(D.gram_max_dev < 1e-10);
}

TEST_CASE("dsimplex json round trip feeds the wigner map unchanged") {
    TestRng rng(63);
    const auto F = field_create(3, 1);
    const auto poly = polytope_from_mubs(mub_construct(F));
    const auto D = inscribe_dsimplex(poly, plane_from_field(F));

    const auto loaded = dsimplex_from_json(dsimplex_to_json(D));
    CHECK(loaded.n == D.n);
    CHECK(loaded.realization == Realization::quantum);
    CHECK(loaded.gram_max_dev < 1e-10);

    const HermitianOp rho(rng.random_density(3));
    const auto w1 = wigner_from_state(rho, std::make_shared<const DSimplex>(D));
    const auto w2 = wigner_from_state(rho, std::make_shared<const DSimplex>(loaded));
    for (int alpha = 0; alpha < 9; ++alpha)
        CHECK(w1.at_point(alpha) == doctest::Approx(w2.at_point(alpha)).epsilon(1e-14));

    SUBCASE("tampered operators are rejected") {
        auto j = dsimplex_to_json(D);
        j["operators"][0][0][0] = {5.0, 0.0};
        CHECK_THROWS_AS(dsimplex_from_json(j), ParseFailure);
    }
    SUBCASE("choice maps must match the plane") {
        auto j = dsimplex_to_json(D);
        j["choices"][0][2] = (j["choices"][0][2].get<int>() + 1) % 3;
        CHECK_THROWS_AS(dsimplex_from_json(j), ParseFailure);
    }
}

TEST_CASE("wigner table json carries the grid and the plane") {
    const auto F = field_create(2, 1);
    const auto poly = polytope_from_mubs(mub_construct(F));
    const auto D = std::make_shared<const DSimplex>(
        inscribe_dsimplex(poly, plane_from_field(F)));
    const auto W = wigner_from_state(maximally_mixed(2), D);
    const auto j = wigner_to_json(W);
    CHECK(j["n"] == 2);
    CHECK(j["plane"]["lines"].size() == 6);
    CHECK(j["values"].size() == 2);

    const auto probs = line_probabilities(W);
    const auto csv = line_probabilities_to_csv(probs);
    std::istringstream is(csv);
    std::string line;
    int lines = 0;
    while (std::getline(is, line)) {
        ++lines;
        double a = 0, b = 0;
        char comma = 0;
        std::istringstream(line) >> a >> comma >> b;
        CHECK(a == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(b == doctest::Approx(0.5).epsilon(1e-12));
    }
    CHECK(lines == 3);
}
