#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "mubgeo/errors.hpp"
#include "mubgeo/gf.hpp"

namespace mubgeo {

inline constexpr int kMubOrderCap = 16;
inline constexpr std::uint64_t kDefaultMubSeed = 20040604u;

/// One line through the origin of GF(n)^2 and its generalized Pauli
/// operators X_a Z_b; all members commute exactly.
struct WeylOperatorClass {
    int n = 0;
    std::pair<int, int> label;                     // line representative (a0, b0)
    std::vector<std::pair<int, int>> members;      // (a, b) labels, multiplier ascending
    std::vector<Eigen::MatrixXcd> ops;
};

/// The n+1 commuting classes partitioning the n^2-1 nonidentity labels:
/// class 0 is the {Z_b} axis, class 1+m the line {(l, m*l)}.
std::vector<WeylOperatorClass> weyl_partition(const FieldTable& F);

/// Complete set of n+1 mutually unbiased bases. bases[I] holds the I-th
/// basis as matrix columns; bases[0] is the standard basis.
struct MubSet {
    int n = 0;
    std::vector<Eigen::MatrixXcd> bases;
    // construction metadata
    int p = 0, k = 0;
    std::vector<int> modulus;
    std::uint64_t seed = 0;
};

/// Basis 0 = standard; basis 1+m = joint eigenbasis of class 1+m, obtained
/// by diagonalizing a seeded random Hermitian combination of the class
/// members and verified against every member. Output is canonicalized
/// (vectors ordered by the eigenvalue tuple of the class members, largest
/// component made real positive) and passes mub_verify at 1e-10.
MubSet mub_construct(const FieldTable& F, std::uint64_t seed = kDefaultMubSeed);

/// Factors n = p^k and constructs; throws OrderNotPrimePower otherwise,
/// OrderTooLarge above the cap.
MubSet mub_for_dimension(int n, std::uint64_t seed = kDefaultMubSeed);

struct MubReport {
    int n = 0;
    double ortho_max_err = 0;   // worst |Gram - I| entry within a basis
    double unbias_max_dev = 0;  // worst | |<e_Ii|e_Jj>|^2 - 1/n |
    int worst_I = -1, worst_i = -1, worst_J = -1, worst_j = -1;
    double tolerance = 1e-10;
    bool pass = false;
};

/// Exhaustive all-pairs check of orthonormality and unbiasedness for up to
/// n+1 candidate bases. Throws TooManyBases and NonUnitVector.
MubReport mub_verify(const std::vector<Eigen::MatrixXcd>& bases, double tol = 1e-10);
MubReport mub_verify(const MubSet& mubs, double tol = 1e-10);

/// OpenMP variant; per-pair results are combined in a fixed order, so the
/// report is identical to the serial one.
MubReport mub_verify_parallel(const std::vector<Eigen::MatrixXcd>& bases, double tol = 1e-10,
                              int jobs = 0);

}  // namespace mubgeo
