#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "mubgeo/mub.hpp"
#include "test_util.hpp"

using namespace mubgeo;

namespace {

Eigen::MatrixXcd fourier_basis(int n) {
    Eigen::MatrixXcd B(n, n);
    for (int x = 0; x < n; ++x)
        for (int i = 0; i < n; ++i)
            B(x, i) = std::polar(1.0 / std::sqrt(static_cast<double>(n)),
                                 2.0 * std::numbers::pi * x * i / n);
    return B;
}

// character-formula basis for odd prime p: v_x = w^(b x^2 + i x)/sqrt(p)
Eigen::MatrixXcd formula_basis(int p, int b) {
    Eigen::MatrixXcd B(p, p);
    for (int x = 0; x < p; ++x)
        for (int i = 0; i < p; ++i)
            B(x, i) = std::polar(1.0 / std::sqrt(static_cast<double>(p)),
                                 2.0 * std::numbers::pi * ((b * x * x + i * x) % p) / p);
    return B;
}

bool is_permutation_overlap(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
    const int n = static_cast<int>(A.rows());
    const Eigen::MatrixXd M = (A.adjoint() * B).cwiseAbs2();
    for (int r = 0; r < n; ++r) {
        int ones = 0;
        for (int c = 0; c < n; ++c) {
            if (M(r, c) > 0.99)
                ++ones;
            else if (M(r, c) > 1e-8)
                return false;
        }
        if (ones != 1) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("weyl_partition for the qubit gives the Pauli axes") {
    const auto classes = weyl_partition(field_create(2, 1));
    REQUIRE(classes.size() == 3);
    Eigen::Matrix2cd X, Z;
    X << 0, 1, 1, 0;
    Z << 1, 0, 0, -1;
    const Eigen::Matrix2cd XZ = X * Z;

    REQUIRE(classes[0].ops.size() == 1);
    CHECK((classes[0].ops[0] - Z).cwiseAbs().maxCoeff() < 1e-15);  // label (0,1)
    CHECK((classes[1].ops[0] - X).cwiseAbs().maxCoeff() < 1e-15);  // label (1,0)
    CHECK((classes[2].ops[0] - XZ).cwiseAbs().maxCoeff() < 1e-15); // label (1,1)
}

TEST_CASE("weyl_partition partitions the nonidentity labels") {
    for (int n : {3, 4, 8, 9}) {
        CAPTURE(n);
        const auto [p, k] = prime_power_decompose(n);
        const auto classes = weyl_partition(field_create(p, k));
        REQUIRE(static_cast<int>(classes.size()) == n + 1);
        std::set<std::pair<int, int>> labels;
        for (const auto& cls : classes) {
            CHECK(static_cast<int>(cls.members.size()) == n - 1);
            for (const auto& lab : cls.members) {
                CHECK(lab != std::pair<int, int>{0, 0});
                CHECK(labels.insert(lab).second);
            }
        }
        CHECK(static_cast<int>(labels.size()) == n * n - 1);
    }
}

TEST_CASE("mub_construct for the qubit") {
    const auto mubs = mub_construct(field_create(2, 1));
    REQUIRE(mubs.bases.size() == 3);
    CHECK((mubs.bases[0] - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);

    const auto classes = weyl_partition(field_create(2, 1));
    // basis I diagonalizes class I (the standard basis diagonalizes the Z axis)
    for (std::size_t I = 0; I < 3; ++I) {
        for (const auto& W : classes[I].ops) {
            const Eigen::MatrixXcd D = mubs.bases[I].adjoint() * W * mubs.bases[I];
            Eigen::MatrixXcd off = D;
            off.diagonal().setZero();
            CHECK(off.cwiseAbs().maxCoeff() < 1e-12);
        }
    }
    const auto rep = mub_verify(mubs);
    CHECK(rep.pass);
    CHECK(rep.unbias_max_dev < 1e-12);
}

TEST_CASE("mub_construct n=3: every cross overlap squared is 1/3") {
    const auto mubs = mub_construct(field_create(3, 1));
    REQUIRE(mubs.bases.size() == 4);
    int checked = 0;
    for (std::size_t I = 0; I < 4; ++I) {
        for (std::size_t J = 0; J < 4; ++J) {
            if (I == J) continue;
            const Eigen::MatrixXd M =
                (mubs.bases[I].adjoint() * mubs.bases[J]).cwiseAbs2();
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    CHECK(M(i, j) == doctest::Approx(1.0 / 3).epsilon(1e-10));
                    ++checked;
                }
        }
    }
    CHECK(checked == 108);
}

TEST_CASE("construction covers every prime power up to the cap") {
    for (int n : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}) {
        CAPTURE(n);
        const auto mubs = mub_for_dimension(n);
        REQUIRE(static_cast<int>(mubs.bases.size()) == n + 1);
        const auto rep = mub_verify_parallel(mubs.bases);
        CHECK(rep.pass);
        CHECK(rep.unbias_max_dev < 1e-10);
        CHECK(rep.ortho_max_err < 1e-10);
    }
}

TEST_CASE("non prime powers and the cap are refused") {
    CHECK_THROWS_AS(mub_for_dimension(6), OrderNotPrimePower);
    CHECK_THROWS_AS(mub_for_dimension(10), OrderNotPrimePower);
    CHECK_THROWS_AS(mub_for_dimension(32), OrderTooLarge);
}

TEST_CASE("mub_verify") {
    SUBCASE("standard plus Fourier in n=5 passes tightly") {
        const std::vector<Eigen::MatrixXcd> bases = {Eigen::MatrixXcd::Identity(5, 5),
                                                     fourier_basis(5)};
        const auto rep = mub_verify(bases);
        CHECK(rep.pass);
        CHECK(rep.unbias_max_dev < 1e-12);
    }
    SUBCASE("a repeated basis is maximally biased") {
        const std::vector<Eigen::MatrixXcd> bases = {Eigen::MatrixXcd::Identity(4, 4),
                                                     Eigen::MatrixXcd::Identity(4, 4)};
        const auto rep = mub_verify(bases);
        CHECK_FALSE(rep.pass);
        CHECK(rep.unbias_max_dev == doctest::Approx(0.75).epsilon(1e-12));
        CHECK(rep.worst_I == 0);
        CHECK(rep.worst_J == 1);
    }
    SUBCASE("too many bases") {
        const std::vector<Eigen::MatrixXcd> bases(4, Eigen::MatrixXcd::Identity(2, 2));
        CHECK_THROWS_AS(mub_verify(bases), TooManyBases);
    }
    SUBCASE("non-unit vectors") {
        const std::vector<Eigen::MatrixXcd> bases = {2.0 * Eigen::MatrixXcd::Identity(3, 3)};
        CHECK_THROWS_AS(mub_verify(bases), NonUnitVector);
    }
    SUBCASE("parallel report equals serial") {
        const auto mubs = mub_for_dimension(8);
        const auto s = mub_verify(mubs.bases);
        const auto p = mub_verify_parallel(mubs.bases, 1e-10, 3);
        CHECK(s.pass == p.pass);
        CHECK(s.ortho_max_err == p.ortho_max_err);
        CHECK(s.unbias_max_dev == p.unbias_max_dev);
        CHECK(s.worst_I == p.worst_I);
        CHECK(s.worst_i == p.worst_i);
        CHECK(s.worst_J == p.worst_J);
        CHECK(s.worst_j == p.worst_j);
    }
}

TEST_CASE("construction is deterministic") {
    const auto a = mub_for_dimension(9);
    const auto b = mub_for_dimension(9);
    REQUIRE(a.bases.size() == b.bases.size());
    for (std::size_t I = 0; I < a.bases.size(); ++I)
        CHECK((a.bases[I] - b.bases[I]).cwiseAbs().maxCoeff() == 0.0);
    CHECK(a.seed == b.seed);
    CHECK(a.modulus == b.modulus);

    const auto c = mub_for_dimension(9, 777);
    CHECK(mub_verify(c.bases).pass);  // any seed gives a valid set
}

TEST_CASE("odd-prime bases match the character formula up to relabeling") {
    for (int p : {3, 5, 7}) {
        CAPTURE(p);
        const auto mubs = mub_construct(field_create(p, 1));
        std::set<int> matched;
        for (int m = 1; m <= p; ++m) {
            int hits = 0, match = -1;
            for (int b = 0; b < p; ++b) {
                if (is_permutation_overlap(mubs.bases[static_cast<std::size_t>(m)],
                                           formula_basis(p, b))) {
                    ++hits;
                    match = b;
                }
            }
            CHECK(hits == 1);  // exactly one formula basis per constructed basis
            matched.insert(match);
        }
        // and the map is a bijection onto {0..p-1}; the Fourier basis (b=0)
        // is the eigenbasis of the X class
        CHECK(static_cast<int>(matched.size()) == p);
        CHECK(is_permutation_overlap(mubs.bases[1], formula_basis(p, 0)));
    }
}
