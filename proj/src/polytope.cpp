#include "mubgeo/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace mubgeo {

namespace {

double trace_product(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
    return A.cwiseProduct(B.transpose()).sum().real();
}

}  // namespace

Polytope polytope_from_mubs(const MubSet& mubs) {
    const auto report = mub_verify(mubs.bases, 1e-10);
    if (!report.pass)
        throw InvalidMubSet("polytope_from_mubs: bases fail unbiasedness, max deviation " +
                            std::to_string(report.unbias_max_dev));
    Polytope poly;
    poly.n = mubs.n;
    poly.realization = Realization::quantum;
    for (const auto& B : mubs.bases) {
        std::vector<HermitianOp> simplex;
        for (int i = 0; i < mubs.n; ++i) simplex.push_back(projector(B.col(i)));
        poly.corners.push_back(std::move(simplex));
    }
    return poly;
}

Polytope polytope_abstract(int n) {
    if (n < 2) throw Error("polytope_abstract: n must be >= 2");

    // Helmert basis of the sum-zero hyperplane in R^n; column i scaled by
    // 1/sqrt(2) is the Bloch vector of corner i inside its block
    Eigen::MatrixXd simplex = Eigen::MatrixXd::Zero(n - 1, n);
    for (int l = 1; l < n; ++l) {
        const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
        for (int j = 0; j < l; ++j) simplex(l - 1, j) = norm;
        simplex(l - 1, l) = -l * norm;
    }
    simplex /= std::sqrt(2.0);

    Polytope poly;
    poly.n = n;
    poly.realization = Realization::abstract;
    const int dim = n * n - 1;
    for (int I = 0; I <= n; ++I) {
        std::vector<HermitianOp> corners;
        for (int i = 0; i < n; ++i) {
            BlochVector v;
            v.n = n;
            v.coords = Eigen::VectorXd::Zero(dim);
            v.coords.segment(static_cast<Eigen::Index>(I) * (n - 1), n - 1) = simplex.col(i);
            corners.push_back(from_bloch(v));
        }
        poly.corners.push_back(std::move(corners));
    }
    return poly;
}

PolytopeGramReport verify_polytope(const Polytope& poly, double tol) {
    const int n = poly.n;
    PolytopeGramReport rep;
    rep.tolerance = tol;
    const double radius = std::sqrt((n - 1.0) / (2.0 * n));
    const HermitianOp origin = maximally_mixed(n);

    for (int I = 0; I <= n; ++I) {
        for (int i = 0; i < n; ++i) {
            const auto& P = poly.corner(I, i).matrix();
            rep.trace_max_dev = std::max(rep.trace_max_dev, std::abs(P.trace().real() - 1.0));
            rep.purity_max_dev =
                std::max(rep.purity_max_dev, std::abs(trace_product(P, P) - 1.0));
            rep.radius_max_dev = std::max(
                rep.radius_max_dev,
                std::abs(std::sqrt(distance_sq(poly.corner(I, i), origin)) - radius));
            for (int J = I; J <= n; ++J) {
                for (int j = (J == I ? i + 1 : 0); j < n; ++j) {
                    const double t = trace_product(P, poly.corner(J, j).matrix());
                    if (J == I)
                        rep.intra_max_dev = std::max(rep.intra_max_dev, std::abs(t));
                    else
                        rep.cross_max_dev =
                            std::max(rep.cross_max_dev, std::abs(t - 1.0 / n));
                }
            }
        }
    }
    rep.pass = rep.trace_max_dev <= tol && rep.purity_max_dev <= tol &&
               rep.intra_max_dev <= tol && rep.cross_max_dev <= tol &&
               rep.radius_max_dev <= tol;
    return rep;
}

PointFaceOperator point_face_operator(const Polytope& poly, const std::vector<int>& choice) {
    const int n = poly.n;
    if (static_cast<int>(choice.size()) != n + 1)
        throw IncompleteChoice("point_face_operator: need one corner per B-simplex (" +
                               std::to_string(n + 1) + " entries), got " +
                               std::to_string(choice.size()));
    Eigen::MatrixXcd A = -Eigen::MatrixXcd::Identity(n, n);  // -n * rho*
    for (int I = 0; I <= n; ++I) {
        const int i = choice[static_cast<std::size_t>(I)];
        if (i < 0 || i >= n)
            throw IncompleteChoice("point_face_operator: corner index " + std::to_string(i) +
                                   " out of range for B-simplex " + std::to_string(I));
        A += poly.corner(I, i).matrix();
    }
    return {choice, HermitianOp(std::move(A))};
}

double facet_evaluate(const PointFaceOperator& A, const HermitianOp& rho) {
    if (A.op.dim() != rho.dim()) throw DimensionMismatch("facet_evaluate: dimension mismatch");
    rho.require_unit_trace("facet_evaluate");
    return trace_product(A.op.matrix(), rho.matrix());
}

DSimplex inscribe_dsimplex(const Polytope& poly, const AffinePlane& plane, double tol) {
    if (plane.n != poly.n)
        throw PlaneOrderMismatch("inscribe_dsimplex: plane order " + std::to_string(plane.n) +
                                 " vs polytope " + std::to_string(poly.n));
    if (!verify_axioms(plane).all_pass())
        throw InvalidPlane("inscribe_dsimplex: plane fails the axioms");

    const int n = poly.n;
    DSimplex D;
    D.n = n;
    D.realization = poly.realization;
    D.plane = plane;

    std::vector<std::vector<int>> pos;
    for (int pi = 0; pi <= n; ++pi) pos.push_back(pencil_coordinates(plane, pi));

    for (int alpha = 0; alpha < n * n; ++alpha) {
        std::vector<int> choice(static_cast<std::size_t>(n) + 1);
        for (int I = 0; I <= n; ++I)
            choice[static_cast<std::size_t>(I)] =
                pos[static_cast<std::size_t>(I)][static_cast<std::size_t>(alpha)];
        D.points.push_back(point_face_operator(poly, choice));
        D.grid_coord.emplace_back(pos[0][static_cast<std::size_t>(alpha)],
                                  pos[1][static_cast<std::size_t>(alpha)]);
    }

    for (int a = 0; a < n * n; ++a) {
        for (int b = a; b < n * n; ++b) {
            const double t = trace_product(D.op(a).matrix(), D.op(b).matrix());
            const double target = (a == b) ? n : 0.0;
            D.gram_max_dev = std::max(D.gram_max_dev, std::abs(t - target));
        }
    }
    if (D.gram_max_dev > tol)
        throw Error("inscribe_dsimplex: Gram deviates from n*delta by " +
                    std::to_string(D.gram_max_dev) + " (internal bug)");
    return D;
}

HermitianOp corner_from_dsimplex(const DSimplex& D, int line) {
    if (line < 0 || line >= D.plane.num_lines())
        throw UnknownLine("corner_from_dsimplex: line " + std::to_string(line));
    const int n = D.n;
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(n, n);
    for (int alpha : D.plane.lines[static_cast<std::size_t>(line)])
        sum += D.op(alpha).matrix();
    return HermitianOp(sum / static_cast<double>(n));
}

std::pair<int, int> dsimplex_line_corner(const DSimplex& D, int line) {
    for (std::size_t pi = 0; pi < D.plane.pencils.size(); ++pi) {
        const auto& pencil = D.plane.pencils[pi];
        for (std::size_t pos = 0; pos < pencil.size(); ++pos)
            if (pencil[pos] == line) return {static_cast<int>(pi), static_cast<int>(pos)};
    }
    throw UnknownLine("dsimplex_line_corner: line " + std::to_string(line));
}

namespace {

SicOrientationReport sic_orientation(const std::vector<Eigen::MatrixXcd>& rhos, int n,
                                     double tol) {
    SicOrientationReport rep;
    rep.min_eig = 1e300;
    for (const auto& rho : rhos) {
        SicEntry e;
        e.purity = trace_product(rho, rho);
        e.tr_rho3 = trace_product(rho * rho, rho);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
        e.min_eig = solver.eigenvalues()(0);
        e.pure_state = std::abs(e.purity - 1.0) <= tol && e.min_eig >= -tol;
        rep.min_eig = std::min(rep.min_eig, e.min_eig);
        rep.entries.push_back(e);
    }
    const double target = 1.0 / (n + 1);
    for (std::size_t a = 0; a < rhos.size(); ++a)
        for (std::size_t b = a + 1; b < rhos.size(); ++b)
            rep.overlap_max_dev = std::max(
                rep.overlap_max_dev, std::abs(trace_product(rhos[a], rhos[b]) - target));
    rep.is_sic = std::all_of(rep.entries.begin(), rep.entries.end(),
                             [](const SicEntry& e) { return e.pure_state; });
    return rep;
}

}  // namespace

SicReport sic_candidate(const DSimplex& D, double tol) {
    if (D.realization != Realization::quantum)
        throw AbstractRealization("sic_candidate: needs a quantum-realization polytope");
    const int n = D.n;
    const Eigen::MatrixXcd origin = Eigen::MatrixXcd::Identity(n, n) / static_cast<double>(n);
    const double scale = std::sqrt(n + 1.0);

    std::vector<Eigen::MatrixXcd> plus, minus;
    for (const auto& pf : D.points) {
        const Eigen::MatrixXcd dir = (pf.op.matrix() - origin) / scale;
        plus.push_back(origin + dir);
        minus.push_back(origin - dir);
    }

    SicReport rep;
    rep.n = n;
    rep.point_face = sic_orientation(plus, n, tol);
    rep.facet = sic_orientation(minus, n, tol);
    rep.best_orientation = rep.point_face.min_eig >= rep.facet.min_eig
                               ? SicOrientation::point_face
                               : SicOrientation::facet;
    rep.is_sic = rep.point_face.is_sic || rep.facet.is_sic;
    return rep;
}

PositivityReport positivity_report(const Polytope& poly, double tol) {
    PositivityReport rep;
    rep.worst = 1e300;
    for (const auto& simplex : poly.corners) {
        std::vector<double> row;
        for (const auto& P : simplex) {
            const double m = P.min_eigenvalue();
            row.push_back(m);
            rep.worst = std::min(rep.worst, m);
        }
        rep.min_eigs.push_back(std::move(row));
    }
    rep.is_density_set = rep.worst >= -tol;
    return rep;
}

namespace {

struct SweepState {
    std::vector<int> pencil_perm;
    std::vector<std::vector<int>> line_perms;
};

// odometer step: advance the line permutations with the last pencil fastest,
// then the pencil permutation; returns false on full wrap-around
bool advance(SweepState& s) {
    for (int i = static_cast<int>(s.line_perms.size()) - 1; i >= 0; --i) {
        if (std::next_permutation(s.line_perms[static_cast<std::size_t>(i)].begin(),
                                  s.line_perms[static_cast<std::size_t>(i)].end()))
            return true;
        // wrapped back to identity, carry on to the previous pencil
    }
    return std::next_permutation(s.pencil_perm.begin(), s.pencil_perm.end());
}

double selection_min_eig(const Polytope& poly, const std::vector<std::vector<int>>& pos,
                         const SweepState& s, double& best_orient_min,
                         SicOrientation& best_orient) {
    const int n = poly.n;
    const Eigen::MatrixXcd origin = Eigen::MatrixXcd::Identity(n, n) / static_cast<double>(n);
    const double scale = std::sqrt(n + 1.0);

    double min_plus = 1e300, min_minus = 1e300;
    for (int alpha = 0; alpha < n * n; ++alpha) {
        Eigen::MatrixXcd A = -Eigen::MatrixXcd::Identity(n, n);
        for (int I = 0; I <= n; ++I) {
            const int raw =
                pos[static_cast<std::size_t>(s.pencil_perm[static_cast<std::size_t>(I)])]
                   [static_cast<std::size_t>(alpha)];
            const int corner =
                s.line_perms[static_cast<std::size_t>(I)][static_cast<std::size_t>(raw)];
            A += poly.corner(I, corner).matrix();
        }
        const Eigen::MatrixXcd dir = (A - origin) / scale;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> sp(origin + dir,
                                                           Eigen::EigenvaluesOnly);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> sm(origin - dir,
                                                           Eigen::EigenvaluesOnly);
        min_plus = std::min(min_plus, sp.eigenvalues()(0));
        min_minus = std::min(min_minus, sm.eigenvalues()(0));
    }
    if (min_plus >= min_minus) {
        best_orient_min = min_plus;
        best_orient = SicOrientation::point_face;
    } else {
        best_orient_min = min_minus;
        best_orient = SicOrientation::facet;
    }
    return std::max(min_plus, min_minus);
}

AffinePlane relabeled_plane(const AffinePlane& plane, const SweepState& s) {
    AffinePlane out = plane;
    const int n = plane.n;
    for (int I = 0; I < static_cast<int>(plane.pencils.size()); ++I) {
        const auto& src =
            plane.pencils[static_cast<std::size_t>(s.pencil_perm[static_cast<std::size_t>(I)])];
        const auto& perm = s.line_perms[static_cast<std::size_t>(I)];
        // position j of the new pencil must hold the line whose relabeled
        // index is j, i.e. the inverse permutation applied to the source
        std::vector<int> dst(static_cast<std::size_t>(n));
        for (int raw = 0; raw < n; ++raw)
            dst[static_cast<std::size_t>(perm[static_cast<std::size_t>(raw)])] =
                src[static_cast<std::size_t>(raw)];
        out.pencils[static_cast<std::size_t>(I)] = std::move(dst);
    }
    return out;
}

}  // namespace

SicSweepResult sic_selection_sweep(const Polytope& poly, const AffinePlane& plane,
                                   long long max_selections, std::uint64_t seed, double tol) {
    if (poly.realization != Realization::quantum)
        throw AbstractRealization("sic_selection_sweep: needs a quantum realization");
    if (plane.n != poly.n)
        throw PlaneOrderMismatch("sic_selection_sweep: plane order mismatch");
    if (!verify_axioms(plane).all_pass())
        throw InvalidPlane("sic_selection_sweep: plane fails the axioms");

    const int n = poly.n;
    std::vector<std::vector<int>> pos;
    for (int pi = 0; pi <= n; ++pi) pos.push_back(pencil_coordinates(plane, pi));

    // size of the full relabeling space, saturating
    long double space = 1;
    for (int i = 2; i <= n + 1; ++i) space *= i;
    long double fact_n = 1;
    for (int i = 2; i <= n; ++i) fact_n *= i;
    for (int i = 0; i <= n; ++i) space *= fact_n;
    const bool exhaustive = space <= static_cast<long double>(max_selections);
    const long long odometer_budget =
        exhaustive ? max_selections : std::max<long long>(1, max_selections / 2);

    SicSweepResult res;
    res.exhaustive = exhaustive;
    res.best_min_eig = -1e300;

    SweepState state;
    state.pencil_perm.resize(static_cast<std::size_t>(n) + 1);
    std::iota(state.pencil_perm.begin(), state.pencil_perm.end(), 0);
    std::vector<int> identity(static_cast<std::size_t>(n));
    std::iota(identity.begin(), identity.end(), 0);
    state.line_perms.assign(static_cast<std::size_t>(n) + 1, identity);

    auto test_selection = [&](const SweepState& s) -> bool {
        ++res.selections_tested;
        double orient_min = 0;
        SicOrientation orient = SicOrientation::point_face;
        const double best = selection_min_eig(poly, pos, s, orient_min, orient);
        if (best > res.best_min_eig) {
            res.best_min_eig = best;
            res.pencil_perm = s.pencil_perm;
            res.line_perms = s.line_perms;
        }
        if (best >= -tol) {
            res.found = true;
            res.pencil_perm = s.pencil_perm;
            res.line_perms = s.line_perms;
            const auto D = inscribe_dsimplex(poly, relabeled_plane(plane, s));
            res.report = sic_candidate(D, tol);
            return true;
        }
        return false;
    };

    bool more = true;
    for (long long step = 0; step < odometer_budget && more; ++step) {
        if (test_selection(state)) return res;
        more = advance(state);
    }
    if (more && !exhaustive) {
        std::mt19937_64 rng(seed);
        auto shuffle = [&rng](std::vector<int>& v) {
            for (std::size_t i = v.size(); i > 1; --i)
                std::swap(v[i - 1], v[static_cast<std::size_t>(rng() % i)]);
        };
        while (res.selections_tested < max_selections) {
            SweepState s = state;
            std::iota(s.pencil_perm.begin(), s.pencil_perm.end(), 0);
            shuffle(s.pencil_perm);
            for (auto& lp : s.line_perms) {
                std::iota(lp.begin(), lp.end(), 0);
                shuffle(lp);
            }
            if (test_selection(s)) return res;
        }
    }
    return res;
}

}  // namespace mubgeo
