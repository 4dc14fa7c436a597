#include <doctest.h>

#include <set>

#include "mubgeo/affine.hpp"
#include "paper_data.hpp"
#include "test_util.hpp"

using namespace mubgeo;
using mubgeo::testing::TestRng;

namespace {
const int kPlaneOrders[] = {2, 3, 4, 5, 7, 8, 9};

AffinePlane field_plane(int n) {
    const auto [p, k] = prime_power_decompose(n);
    return plane_from_field(field_create(p, k));
}

std::set<std::set<int>> line_sets(const AffinePlane& plane) {
    std::set<std::set<int>> out;
    for (const auto& line : plane.lines) out.insert(std::set<int>(line.begin(), line.end()));
    return out;
}
}  // namespace

TEST_CASE("reference planes pass the axioms") {
    for (const auto& plane :
         {mubgeo::testing::order2_reference_plane(), mubgeo::testing::order3_reference_plane()}) {
        const auto rep = verify_axioms(plane);
        CHECK(rep.a1_pass);
        CHECK(rep.a2_pass);
        CHECK(rep.a3_pass);
        CHECK(rep.counting_pass);
    }
}

TEST_CASE("a swapped point breaks A1 with a witness") {
    auto plane = mubgeo::testing::order3_reference_plane();
    // line {2,4,6} of the 3rd pencil, with 4 replaced by 5
    plane.lines[6] = {2, 5, 6};
    const auto rep = verify_axioms(plane);
    CHECK_FALSE(rep.a1_pass);
    CHECK(rep.a1_point_a >= 0);
    CHECK(rep.a1_count != 1);
    CHECK_FALSE(rep.all_pass());
}

TEST_CASE("malformed incidence structures throw") {
    auto plane = mubgeo::testing::order2_reference_plane();
    plane.lines[0] = {0, 0};
    CHECK_THROWS_AS(verify_axioms(plane), MalformedIncidence);

    auto plane2 = mubgeo::testing::order2_reference_plane();
    plane2.lines[3] = {1, 9};
    CHECK_THROWS_AS(verify_axioms(plane2), MalformedIncidence);

    CHECK_THROWS_AS(verify_axioms(AffinePlane{}), MalformedIncidence);
}

TEST_CASE("plane_from_mols") {
    SUBCASE("order 2 from the single square matches the reference plane") {
        MolsSet mols;
        mols.n = 2;
        mols.squares.push_back(LatinSquare(2, {0, 1, 1, 0}));
        const auto plane = plane_from_mols(mols);
        CHECK(plane.num_lines() == 6);
        CHECK(verify_axioms(plane).all_pass());
        CHECK(line_sets(plane) == line_sets(mubgeo::testing::order2_reference_plane()));
    }
    SUBCASE("order 3 from the reference pair") {
        MolsSet mols;
        mols.n = 3;
        mols.squares.push_back(mubgeo::testing::order3_third_pencil_square());
        mols.squares.push_back(mubgeo::testing::order3_fourth_pencil_square());
        const auto plane = plane_from_mols(mols);
        CHECK(plane.num_lines() == 12);
        CHECK(verify_axioms(plane).all_pass());
        CHECK(line_sets(plane) == line_sets(mubgeo::testing::order3_reference_plane()));
    }
    SUBCASE("order 4 from GF(4)") {
        const auto plane = plane_from_mols(mols_from_field(field_create(2, 2)));
        CHECK(plane.num_lines() == 20);
        CHECK(verify_axioms(plane).all_pass());
    }
    SUBCASE("errors") {
        MolsSet short_set;
        short_set.n = 3;
        short_set.squares.push_back(cyclic_square(3));
        CHECK_THROWS_AS(plane_from_mols(short_set), WrongCount);

        MolsSet dup;
        dup.n = 3;
        dup.squares.push_back(cyclic_square(3));
        dup.squares.push_back(cyclic_square(3));
        CHECK_THROWS_AS(plane_from_mols(dup), NotOrthogonal);
    }
}

TEST_CASE("plane_from_field") {
    SUBCASE("orders and axioms") {
        const auto p2 = field_plane(2);
        CHECK(p2.num_lines() == 6);
        CHECK(line_sets(p2) == line_sets(mubgeo::testing::order2_reference_plane()));

        const auto p5 = field_plane(5);
        CHECK(p5.num_lines() == 30);
        CHECK(p5.pencils.size() == 6);
        CHECK(verify_axioms(p5).all_pass());
    }
    SUBCASE("order 3 matches the reference plane up to relabeling") {
        CHECK(canonical_form(field_plane(3)) ==
              canonical_form(mubgeo::testing::order3_reference_plane()));
    }
    SUBCASE("agrees with the MOLS route for all orders") {
        for (int n : kPlaneOrders) {
            CAPTURE(n);
            const auto [p, k] = prime_power_decompose(n);
            const auto F = field_create(p, k);
            CHECK(canonical_form(plane_from_field(F)) ==
                  canonical_form(plane_from_mols(mols_from_field(F))));
        }
    }
}

TEST_CASE("plane_to_mols") {
    SUBCASE("round trip up to per-square symbol relabeling") {
        for (int n : kPlaneOrders) {
            CAPTURE(n);
            const auto [p, k] = prime_power_decompose(n);
            const auto mols = mols_from_field(field_create(p, k));
            const auto back = plane_to_mols(plane_from_mols(mols), 0, 1);
            REQUIRE(back.squares.size() == mols.squares.size());
            std::multiset<std::vector<int>> got, expected;
            for (const auto& sq : back.squares) got.insert(canonicalize_symbols(sq).cells);
            for (const auto& sq : mols.squares) expected.insert(canonicalize_symbols(sq).cells);
            CHECK(got == expected);
        }
    }
    SUBCASE("reference plane yields the displayed square pair") {
        const auto mols = plane_to_mols(mubgeo::testing::order3_reference_plane(), 0, 1);
        REQUIRE(mols.squares.size() == 2);
        std::set<std::vector<int>> got, expected;
        for (const auto& sq : mols.squares) got.insert(canonicalize_symbols(sq).cells);
        expected.insert(
            canonicalize_symbols(mubgeo::testing::order3_third_pencil_square()).cells);
        expected.insert(
            canonicalize_symbols(mubgeo::testing::order3_fourth_pencil_square()).cells);
        CHECK(got == expected);
    }
    SUBCASE("order 2 yields exactly one square") {
        CHECK(plane_to_mols(field_plane(2), 0, 1).squares.size() == 1);
    }
    SUBCASE("errors") {
        const auto plane = field_plane(3);
        CHECK_THROWS_AS(plane_to_mols(plane, 1, 1), SamePencil);
        CHECK_THROWS_AS(plane_to_mols(plane, 0, 9), SamePencil);
        auto broken = plane;
        broken.lines[6] = {2, 5, 6};
        CHECK_THROWS_AS(plane_to_mols(broken, 0, 1), InvalidPlane);
    }
}

TEST_CASE("lines from different pencils meet exactly once") {
    for (int n : {3, 4, 5}) {
        const auto plane = field_plane(n);
        for (std::size_t pa = 0; pa < plane.pencils.size(); ++pa) {
            for (std::size_t pb = pa + 1; pb < plane.pencils.size(); ++pb) {
                for (int la : plane.pencils[pa]) {
                    for (int lb : plane.pencils[pb]) {
                        const auto& A = plane.lines[static_cast<std::size_t>(la)];
                        const auto& B = plane.lines[static_cast<std::size_t>(lb)];
                        int meet = 0;
                        for (int p : A)
                            if (std::find(B.begin(), B.end(), p) != B.end()) ++meet;
                        CHECK(meet == 1);
                    }
                }
            }
        }
    }
}

TEST_CASE("fuzz: any single corrupted incidence is detected") {
    TestRng rng(99);
    const auto plane = field_plane(4);
    for (int trial = 0; trial < 100; ++trial) {
        auto corrupted = plane;
        const int li = rng.uniform_int(plane.num_lines());
        auto& line = corrupted.lines[static_cast<std::size_t>(li)];
        const int slot = rng.uniform_int(static_cast<int>(line.size()));
        int replacement = rng.uniform_int(plane.num_points());
        while (replacement == line[static_cast<std::size_t>(slot)])
            replacement = rng.uniform_int(plane.num_points());
        line[static_cast<std::size_t>(slot)] = replacement;
        bool detected = false;
        try {
            detected = !verify_axioms(corrupted).all_pass();
        } catch (const MalformedIncidence&) {
            detected = true;  // duplicate point inside the line
        }
        CHECK(detected);
    }
}

TEST_CASE("parallel axiom verification matches serial") {
    SUBCASE("valid planes") {
        for (int n : {4, 7}) {
            const auto plane = field_plane(n);
            const auto s = verify_axioms(plane);
            const auto p = verify_axioms_parallel(plane, 2);
            CHECK(s.all_pass());
            CHECK(p.all_pass());
        }
    }
    SUBCASE("corrupted plane gives identical witnesses") {
        auto plane = field_plane(3);
        plane.lines[7][1] = plane.lines[7][1] == 0 ? 1 : 0;
        AxiomReport s, p;
        bool s_threw = false, p_threw = false;
        try {
            s = verify_axioms(plane);
        } catch (const MalformedIncidence&) {
            s_threw = true;
        }
        try {
            p = verify_axioms_parallel(plane, 3);
        } catch (const MalformedIncidence&) {
            p_threw = true;
        }
        REQUIRE(s_threw == p_threw);
        if (!s_threw) {
            CHECK(s.a1_pass == p.a1_pass);
            CHECK(s.a1_point_a == p.a1_point_a);
            CHECK(s.a1_point_b == p.a1_point_b);
            CHECK(s.a1_count == p.a1_count);
            CHECK(s.a2_pass == p.a2_pass);
            CHECK(s.a2_line == p.a2_line);
            CHECK(s.a2_point == p.a2_point);
            CHECK(s.summary() == p.summary());
        }
    }
}
