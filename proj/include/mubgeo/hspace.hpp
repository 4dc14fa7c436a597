#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "mubgeo/errors.hpp"

namespace mubgeo {

inline constexpr double kHermTol = 1e-12;

/// Element of the space of Hermitian n x n matrices. Unit trace is required
/// only where an operation says so; differences and unnormalized operators
/// are legitimate values of this type.
class HermitianOp {
  public:
    HermitianOp() = default;
    explicit HermitianOp(Eigen::MatrixXcd m);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return mat_; }

    double trace_real() const { return mat_.trace().real(); }
    bool is_unit_trace(double tol = kHermTol) const;
    void require_unit_trace(const char* who) const;

    std::vector<double> eigenvalues() const;  // ascending
    double min_eigenvalue() const;

    HermitianOp operator+(const HermitianOp& o) const;
    HermitianOp operator-(const HermitianOp& o) const;
    HermitianOp operator*(double s) const;

  private:
    Eigen::MatrixXcd mat_;
};

/// rho* = identity/n, the origin of the unit-trace hyperplane.
HermitianOp maximally_mixed(int n);

/// D^2(A,B) = (1/2) Tr (A-B)^2.
double distance_sq(const HermitianOp& A, const HermitianOp& B);

/// (A,B) = (1/2)[Tr AB - 1/n], for unit-trace A and B.
double scalar(const HermitianOp& A, const HermitianOp& B);

/// Real coordinates of a unit-trace Hermitian matrix in the fixed traceless
/// basis (see gellmann_basis); the zero vector is rho*.
struct BlochVector {
    int n = 0;
    Eigen::VectorXd coords;  // length n^2 - 1
};

/// Generalized Gell-Mann basis of traceless Hermitian matrices, ordered as
/// symmetric pairs, antisymmetric pairs, then diagonal, and scaled so that
/// (1/2) Tr E^2 = 1. With this scaling distance_sq is literally the
/// Euclidean norm on Bloch coordinates.
const std::vector<Eigen::MatrixXcd>& gellmann_basis(int n);

BlochVector to_bloch(const HermitianOp& A);
HermitianOp from_bloch(const BlochVector& v);

HermitianOp projector(const Eigen::VectorXcd& state);

}  // namespace mubgeo
