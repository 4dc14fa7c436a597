#pragma once

#include <cstdint>
#include <vector>

#include "mubgeo/affine.hpp"
#include "mubgeo/errors.hpp"
#include "mubgeo/hspace.hpp"
#include "mubgeo/mub.hpp"

namespace mubgeo {

enum class Realization { abstract, quantum };

/// The Complementarity Polytope: n+1 regular n-corner simplices in mutually
/// orthogonal (n-1)-dimensional subspaces of the unit-trace Hermitian space.
/// corners[I][i] is corner i of B-simplex I.
struct Polytope {
    int n = 0;
    Realization realization = Realization::abstract;
    std::vector<std::vector<HermitianOp>> corners;

    const HermitianOp& corner(int I, int i) const {
        return corners[static_cast<std::size_t>(I)][static_cast<std::size_t>(i)];
    }
    // collective index omega = I*n + i over the n^2+n corners
    const HermitianOp& corner_flat(int omega) const { return corner(omega / n, omega % n); }
    int num_corners() const { return n * (n + 1); }
};

/// Corners P_Ii = |e_Ii><e_Ii|; requires the bases to pass mub_verify.
Polytope polytope_from_mubs(const MubSet& mubs);

/// Direct Bloch-space witness: block I of coordinates carries a centered
/// regular n-vertex simplex of circumradius sqrt((n-1)/2n). The Gram
/// conditions hold by construction; positivity of the corners generally
/// does not.
Polytope polytope_abstract(int n);

struct PolytopeGramReport {
    double trace_max_dev = 0;   // |Tr P - 1|
    double purity_max_dev = 0;  // |Tr P^2 - 1|
    double intra_max_dev = 0;   // |Tr P_Ii P_Ij|, i != j
    double cross_max_dev = 0;   // |Tr P_Ii P_Jj - 1/n|, I != J
    double radius_max_dev = 0;  // |D(P, rho*) - sqrt((n-1)/2n)|
    double tolerance = 1e-10;
    bool pass = false;
};

/// Exhaustive check of the corner identities.
PolytopeGramReport verify_polytope(const Polytope& poly, double tol = 1e-10);

/// A = sum_I P_{I, choice[I]} - n rho*, one corner per B-simplex.
struct PointFaceOperator {
    std::vector<int> choice;
    HermitianOp op;
};

PointFaceOperator point_face_operator(const Polytope& poly, const std::vector<int>& choice);

/// Tr(A rho): 1 when rho lies in the point face, 0 on the opposite facet.
double facet_evaluate(const PointFaceOperator& A, const HermitianOp& rho);

/// The regular simplex of n^2 point-face operators selected by an affine
/// plane: pencil I feeds B-simplex I, line position l picks corner l, and
/// each plane point selects the line through it in every pencil.
struct DSimplex {
    int n = 0;
    Realization realization = Realization::abstract;
    AffinePlane plane;
    std::vector<PointFaceOperator> points;        // indexed by plane point
    std::vector<std::pair<int, int>> grid_coord;  // (pencil-0 line, pencil-1 line) per point
    double gram_max_dev = 0;                      // achieved deviation from n*delta

    const HermitianOp& op(int alpha) const {
        return points[static_cast<std::size_t>(alpha)].op;
    }
};

DSimplex inscribe_dsimplex(const Polytope& poly, const AffinePlane& plane, double tol = 1e-10);

/// (1/n) * sum of A_alpha over the points of the line; equals the corner the
/// line is mapped to.
HermitianOp corner_from_dsimplex(const DSimplex& D, int line);

/// Which corner (I = pencil, i = position) a global line index maps to.
std::pair<int, int> dsimplex_line_corner(const DSimplex& D, int line);

enum class SicOrientation { point_face, facet };

struct SicEntry {
    double purity = 0;   // Tr rho^2
    double min_eig = 0;
    double tr_rho3 = 0;
    bool pure_state = false;
};

struct SicOrientationReport {
    std::vector<SicEntry> entries;
    double min_eig = 0;          // min over entries
    double overlap_max_dev = 0;  // max |Tr rho_a rho_b - 1/(n+1)|, a != b
    bool is_sic = false;
};

/// Rescaling of the D-simplex onto the pure-state sphere. Both orientations
/// rho* +- (A - rho*)/sqrt(n+1) reach the sphere and give pairwise overlaps
/// 1/(n+1); positivity singles out at most one of them, so both are
/// examined. Requires a quantum realization.
struct SicReport {
    int n = 0;
    SicOrientationReport point_face;  // rho* + (A - rho*)/sqrt(n+1)
    SicOrientationReport facet;       // rho* - (A - rho*)/sqrt(n+1)
    SicOrientation best_orientation = SicOrientation::point_face;
    bool is_sic = false;
};

SicReport sic_candidate(const DSimplex& D, double tol = 1e-8);

struct PositivityReport {
    std::vector<std::vector<double>> min_eigs;  // [I][i]
    double worst = 0;
    bool is_density_set = false;
};

PositivityReport positivity_report(const Polytope& poly, double tol = 1e-10);

inline constexpr long long kDefaultSicSelectionBudget = 40000;
inline constexpr std::uint64_t kDefaultSicSweepSeed = 271828;

/// Deterministic bounded sweep over plane relabelings (pencil permutation +
/// per-pencil line permutations): odometer order first, then seeded random
/// relabelings once the space exceeds the budget. Stops at the first
/// selection whose sic_candidate succeeds.
struct SicSweepResult {
    bool found = false;
    long long selections_tested = 0;
    bool exhaustive = false;
    std::vector<int> pencil_perm;              // winning / last selection
    std::vector<std::vector<int>> line_perms;
    double best_min_eig = -1;                  // best over all tested selections
    SicReport report;                          // report for the winning selection
};

SicSweepResult sic_selection_sweep(const Polytope& poly, const AffinePlane& plane,
                                   long long max_selections = kDefaultSicSelectionBudget,
                                   std::uint64_t seed = kDefaultSicSweepSeed,
                                   double tol = 1e-8);

}  // namespace mubgeo
