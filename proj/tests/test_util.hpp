#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace mubgeo::testing {

// seeded randomness for tests, kept independent of the library's RNG use
class TestRng {
  public:
    explicit TestRng(std::uint64_t seed) : rng_(seed) {}

    double uniform() { return (rng_() >> 11) * (1.0 / 9007199254740992.0); }
    double uniform_pm1() { return 2.0 * uniform() - 1.0; }
    int uniform_int(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * std::numbers::pi * u2);
    }

    std::complex<double> cnormal() { return {normal(), normal()}; }

    Eigen::VectorXcd random_state(int n) {
        Eigen::VectorXcd v(n);
        for (int i = 0; i < n; ++i) v(i) = cnormal();
        v.normalize();
        return v;
    }

    // positive semidefinite, unit trace
    Eigen::MatrixXcd random_density(int n) {
        Eigen::MatrixXcd G(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) G(i, j) = cnormal();
        Eigen::MatrixXcd rho = G * G.adjoint();
        return rho / rho.trace().real();
    }

    // Hermitian with unit trace but arbitrary spectrum
    Eigen::MatrixXcd random_unit_trace_hermitian(int n) {
        Eigen::MatrixXcd H(n, n);
        for (int i = 0; i < n; ++i) {
            H(i, i) = normal();
            for (int j = i + 1; j < n; ++j) {
                H(i, j) = cnormal();
                H(j, i) = std::conj(H(i, j));
            }
        }
        const auto tr = H.trace();
        H -= (tr - std::complex<double>(1.0)) / static_cast<double>(n) *
             Eigen::MatrixXcd::Identity(n, n);
        return H;
    }

    std::vector<int> random_perm(int n) {
        std::vector<int> p(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
        for (std::size_t i = p.size(); i > 1; --i)
            std::swap(p[i - 1], p[static_cast<std::size_t>(uniform_int(static_cast<int>(i)))]);
        return p;
    }

  private:
    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0;
};

}  // namespace mubgeo::testing
