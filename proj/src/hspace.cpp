#include "mubgeo/hspace.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>

namespace mubgeo {

HermitianOp::HermitianOp(Eigen::MatrixXcd m) : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols()) throw NotHermitian("matrix is not square");
    const double scale = std::max(1.0, mat_.cwiseAbs().maxCoeff());
    const double dev = (mat_ - mat_.adjoint().eval()).cwiseAbs().maxCoeff();
    if (dev > kHermTol * scale)
        throw NotHermitian("matrix deviates from Hermiticity by " + std::to_string(dev));
}

bool HermitianOp::is_unit_trace(double tol) const {
    return std::abs(mat_.trace() - std::complex<double>(1.0, 0.0)) <= tol;
}

void HermitianOp::require_unit_trace(const char* who) const {
    if (!is_unit_trace())
        throw NotUnitTrace(std::string(who) + ": trace is " +
                           std::to_string(mat_.trace().real()) + ", expected 1");
}

std::vector<double> HermitianOp::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(mat_, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

double HermitianOp::min_eigenvalue() const { return eigenvalues().front(); }

HermitianOp HermitianOp::operator+(const HermitianOp& o) const {
    if (dim() != o.dim()) throw DimensionMismatch("HermitianOp: dimension mismatch in +");
    return HermitianOp(mat_ + o.mat_);
}

HermitianOp HermitianOp::operator-(const HermitianOp& o) const {
    if (dim() != o.dim()) throw DimensionMismatch("HermitianOp: dimension mismatch in -");
    return HermitianOp(mat_ - o.mat_);
}

HermitianOp HermitianOp::operator*(double s) const { return HermitianOp(mat_ * s); }

HermitianOp maximally_mixed(int n) {
    if (n < 1) throw Error("maximally_mixed: dimension must be >= 1");
    return HermitianOp(Eigen::MatrixXcd::Identity(n, n) / static_cast<double>(n));
}

double distance_sq(const HermitianOp& A, const HermitianOp& B) {
    if (A.dim() != B.dim()) throw DimensionMismatch("distance_sq: dimension mismatch");
    const Eigen::MatrixXcd d = A.matrix() - B.matrix();
    return 0.5 * (d * d).trace().real();
}

double scalar(const HermitianOp& A, const HermitianOp& B) {
    if (A.dim() != B.dim()) throw DimensionMismatch("scalar: dimension mismatch");
    A.require_unit_trace("scalar");
    B.require_unit_trace("scalar");
    return 0.5 * ((A.matrix() * B.matrix()).trace().real() - 1.0 / A.dim());
}

const std::vector<Eigen::MatrixXcd>& gellmann_basis(int n) {
    static std::map<int, std::vector<Eigen::MatrixXcd>> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<Eigen::MatrixXcd> basis;
    basis.reserve(static_cast<std::size_t>(n) * n - 1);
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(n, n);
            e(j, k) = e(k, j) = 1.0;
            basis.push_back(e);
        }
    }
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(n, n);
            e(j, k) = std::complex<double>(0, -1);
            e(k, j) = std::complex<double>(0, 1);
            basis.push_back(e);
        }
    }
    for (int l = 1; l < n; ++l) {
        Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(n, n);
        const double norm = std::sqrt(2.0 / (static_cast<double>(l) * (l + 1)));
        for (int j = 0; j < l; ++j) e(j, j) = norm;
        e(l, l) = -l * norm;
        basis.push_back(e);
    }
    return cache.emplace(n, std::move(basis)).first->second;
}

BlochVector to_bloch(const HermitianOp& A) {
    const int n = A.dim();
    const auto& basis = gellmann_basis(n);
    BlochVector v;
    v.n = n;
    v.coords.resize(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t a = 0; a < basis.size(); ++a)
        v.coords[static_cast<Eigen::Index>(a)] =
            0.5 * (A.matrix() * basis[a]).trace().real();
    return v;
}

HermitianOp from_bloch(const BlochVector& v) {
    const int n = v.n;
    const auto& basis = gellmann_basis(n);
    if (v.coords.size() != static_cast<Eigen::Index>(basis.size()))
        throw DimensionMismatch("from_bloch: expected " + std::to_string(basis.size()) +
                                " coordinates, got " + std::to_string(v.coords.size()));
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n) / static_cast<double>(n);
    for (std::size_t a = 0; a < basis.size(); ++a)
        m += v.coords[static_cast<Eigen::Index>(a)] * basis[a];
    return HermitianOp(std::move(m));
}

HermitianOp projector(const Eigen::VectorXcd& state) {
    return HermitianOp(state * state.adjoint());
}

}  // namespace mubgeo
