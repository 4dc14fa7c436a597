#include "mubgeo/mub.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mubgeo {

namespace {

Eigen::MatrixXcd shift_op(const FieldTable& F, int a) {
    const int n = F.order;
    Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(n, n);
    for (int x = 0; x < n; ++x) X(F.add(x, a), x) = 1.0;
    return X;
}

Eigen::MatrixXcd clock_op(const FieldTable& F, int b) {
    const int n = F.order;
    Eigen::MatrixXcd Z = Eigen::MatrixXcd::Zero(n, n);
    for (int x = 0; x < n; ++x) {
        const double angle =
            2.0 * std::numbers::pi * F.trace(F.mul(b, x)) / static_cast<double>(F.p);
        Z(x, x) = std::polar(1.0, angle);
    }
    return Z;
}

// uniform double in [-1, 1) from raw mt19937_64 output, portable across
// standard library implementations
double uniform_pm1(std::mt19937_64& rng) {
    return 2.0 * ((rng() >> 11) * (1.0 / 9007199254740992.0)) - 1.0;
}

}  // namespace

std::vector<WeylOperatorClass> weyl_partition(const FieldTable& F) {
    const int n = F.order;
    if (n > kMubOrderCap)
        throw OrderTooLarge("weyl_partition: order " + std::to_string(n) + " exceeds cap " +
                            std::to_string(kMubOrderCap));

    std::vector<WeylOperatorClass> classes;
    auto build = [&](int a0, int b0) {
        WeylOperatorClass cls;
        cls.n = n;
        cls.label = {a0, b0};
        for (int lambda = 1; lambda < n; ++lambda)
            cls.members.emplace_back(F.mul(lambda, a0), F.mul(lambda, b0));
        for (const auto& [a, b] : cls.members) cls.ops.push_back(shift_op(F, a) * clock_op(F, b));
        classes.push_back(std::move(cls));
    };
    build(0, 1);                                // the {Z_b} axis
    for (int m = 0; m < n; ++m) build(1, m);    // lines {(l, m*l)}

    for (const auto& cls : classes) {
        for (std::size_t i = 0; i < cls.ops.size(); ++i) {
            for (std::size_t j = i + 1; j < cls.ops.size(); ++j) {
                const double comm =
                    (cls.ops[i] * cls.ops[j] - cls.ops[j] * cls.ops[i]).cwiseAbs().maxCoeff();
                if (comm > 1e-10)
                    throw CommutationFailure(
                        "weyl_partition: class members do not commute (residual " +
                        std::to_string(comm) + ") -- implementation bug");
            }
        }
    }
    return classes;
}

namespace {

// joint eigenbasis of one commuting class, canonicalized
Eigen::MatrixXcd class_eigenbasis(const WeylOperatorClass& cls, std::uint64_t seed) {
    const int n = cls.n;
    constexpr int kMaxAttempts = 8;

    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt));
        Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n, n);
        for (const auto& W : cls.ops) {
            const std::complex<double> c(uniform_pm1(rng), uniform_pm1(rng));
            H += c * W + std::conj(c) * W.adjoint();
        }

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H);
        const auto& vals = solver.eigenvalues();
        const double spread = std::max(1.0, vals(n - 1) - vals(0));
        double min_gap = spread;
        for (int i = 1; i < n; ++i) min_gap = std::min(min_gap, vals(i) - vals(i - 1));
        if (min_gap < 1e-6 * spread) continue;  // degenerate combination, reseed

        Eigen::MatrixXcd vecs = solver.eigenvectors();

        // verify each eigenvector against every class member
        bool joint = true;
        std::vector<std::vector<std::complex<double>>> eigtuples(static_cast<std::size_t>(n));
        for (int v = 0; v < n && joint; ++v) {
            const Eigen::VectorXcd col = vecs.col(v);
            for (const auto& W : cls.ops) {
                const std::complex<double> mu = col.dot(W * col);  // <v|W|v>
                if ((W * col - mu * col).cwiseAbs().maxCoeff() > 1e-10) {
                    joint = false;
                    break;
                }
                eigtuples[static_cast<std::size_t>(v)].push_back(mu);
            }
        }
        if (!joint) continue;

        // order vectors by the eigenvalue tuple of the class members
        std::vector<int> order(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
        auto key = [&](int v) {
            std::vector<long long> k;
            for (const auto& mu : eigtuples[static_cast<std::size_t>(v)]) {
                k.push_back(std::llround(mu.real() * 1e9));
                k.push_back(std::llround(mu.imag() * 1e9));
            }
            return k;
        };
        std::sort(order.begin(), order.end(), [&](int a, int b) { return key(a) < key(b); });

        Eigen::MatrixXcd basis(n, n);
        for (int v = 0; v < n; ++v) {
            Eigen::VectorXcd col = vecs.col(order[static_cast<std::size_t>(v)]);
            // make the largest-magnitude component real positive
            double maxmag = 0;
            for (int i = 0; i < n; ++i) maxmag = std::max(maxmag, std::abs(col(i)));
            int pivot = 0;
            for (int i = 0; i < n; ++i) {
                if (std::abs(col(i)) >= maxmag - 1e-9) {
                    pivot = i;
                    break;
                }
            }
            col *= std::conj(col(pivot)) / std::abs(col(pivot));
            basis.col(v) = col;
        }
        return basis;
    }
    throw DegenerateCombination(
        "class_eigenbasis: no non-degenerate Hermitian combination found after retries");
}

}  // namespace

MubSet mub_construct(const FieldTable& F, std::uint64_t seed) {
    const int n = F.order;
    const auto classes = weyl_partition(F);  // also enforces the order cap

    MubSet out;
    out.n = n;
    out.p = F.p;
    out.k = F.k;
    out.modulus = F.modulus;
    out.seed = seed;
    out.bases.push_back(Eigen::MatrixXcd::Identity(n, n));
    for (std::size_t c = 1; c < classes.size(); ++c) {
        const std::uint64_t class_seed = seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(c);
        out.bases.push_back(class_eigenbasis(classes[c], class_seed));
    }

    const auto report = mub_verify(out.bases, 1e-10);
    if (!report.pass)
        throw Error("mub_construct: output failed unbiasedness verification (internal bug), "
                    "max deviation " +
                    std::to_string(report.unbias_max_dev));
    return out;
}

MubSet mub_for_dimension(int n, std::uint64_t seed) {
    const auto [p, k] = prime_power_decompose(n);  // throws OrderNotPrimePower
    if (n > kMubOrderCap)
        throw OrderTooLarge("mub_for_dimension: order " + std::to_string(n) + " exceeds cap " +
                            std::to_string(kMubOrderCap));
    return mub_construct(field_create(p, k), seed);
}

namespace {

struct PairDev {
    double dev = 0;
    int i = -1, j = -1;
};

PairDev unbias_deviation(const Eigen::MatrixXcd& BI, const Eigen::MatrixXcd& BJ, int n) {
    PairDev out;
    const Eigen::MatrixXcd overlaps = BI.adjoint() * BJ;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double dev = std::abs(std::norm(overlaps(i, j)) - 1.0 / n);
            if (dev > out.dev) {
                out.dev = dev;
                out.i = i;
                out.j = j;
            }
        }
    }
    return out;
}

void validate_bases(const std::vector<Eigen::MatrixXcd>& bases) {
    if (bases.empty()) throw Error("mub_verify: no bases given");
    const int n = static_cast<int>(bases[0].rows());
    if (static_cast<int>(bases.size()) > n + 1)
        throw TooManyBases("mub_verify: " + std::to_string(bases.size()) +
                           " bases exceed the bound n+1 = " + std::to_string(n + 1));
    for (const auto& B : bases) {
        if (B.rows() != n || B.cols() != n)
            throw DimensionMismatch("mub_verify: bases of inconsistent shape");
        for (int v = 0; v < n; ++v)
            if (std::abs(B.col(v).norm() - 1.0) > 1e-6)
                throw NonUnitVector("mub_verify: basis vector with norm " +
                                    std::to_string(B.col(v).norm()));
    }
}

MubReport combine_reports(const std::vector<Eigen::MatrixXcd>& bases,
                          const std::vector<PairDev>& devs, double tol) {
    const int n = static_cast<int>(bases[0].rows());
    const int m = static_cast<int>(bases.size());
    MubReport rep;
    rep.n = n;
    rep.tolerance = tol;
    for (const auto& B : bases) {
        const double err =
            (B.adjoint() * B - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
        rep.ortho_max_err = std::max(rep.ortho_max_err, err);
    }
    int pair = 0;
    for (int I = 0; I < m; ++I) {
        for (int J = I + 1; J < m; ++J, ++pair) {
            const auto& d = devs[static_cast<std::size_t>(pair)];
            if (d.dev > rep.unbias_max_dev) {
                rep.unbias_max_dev = d.dev;
                rep.worst_I = I;
                rep.worst_i = d.i;
                rep.worst_J = J;
                rep.worst_j = d.j;
            }
        }
    }
    rep.pass = rep.ortho_max_err <= tol && rep.unbias_max_dev <= tol;
    return rep;
}

}  // namespace

MubReport mub_verify(const std::vector<Eigen::MatrixXcd>& bases, double tol) {
    validate_bases(bases);
    const int n = static_cast<int>(bases[0].rows());
    const int m = static_cast<int>(bases.size());
    std::vector<PairDev> devs;
    for (int I = 0; I < m; ++I)
        for (int J = I + 1; J < m; ++J)
            devs.push_back(unbias_deviation(bases[static_cast<std::size_t>(I)],
                                            bases[static_cast<std::size_t>(J)], n));
    return combine_reports(bases, devs, tol);
}

MubReport mub_verify(const MubSet& mubs, double tol) { return mub_verify(mubs.bases, tol); }

MubReport mub_verify_parallel(const std::vector<Eigen::MatrixXcd>& bases, double tol, int jobs) {
    validate_bases(bases);
    const int n = static_cast<int>(bases[0].rows());
    const int m = static_cast<int>(bases.size());
    std::vector<std::pair<int, int>> pairs;
    for (int I = 0; I < m; ++I)
        for (int J = I + 1; J < m; ++J) pairs.emplace_back(I, J);

    std::vector<PairDev> devs(pairs.size());
#ifdef _OPENMP
    if (jobs > 0) omp_set_num_threads(jobs);
#pragma omp parallel for schedule(dynamic)
#else
    (void)jobs;
#endif
    for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(pairs.size()); ++p) {
        const auto [I, J] = pairs[static_cast<std::size_t>(p)];
        devs[static_cast<std::size_t>(p)] = unbias_deviation(
            bases[static_cast<std::size_t>(I)], bases[static_cast<std::size_t>(J)], n);
    }
    return combine_reports(bases, devs, tol);
}

}  // namespace mubgeo
