#pragma once

#include <memory>
#include <vector>

#include "mubgeo/errors.hpp"
#include "mubgeo/hspace.hpp"
#include "mubgeo/polytope.hpp"

namespace mubgeo {

/// Discrete Wigner function on the affine plane: one real quasi-probability
/// per plane point, tied to the D-simplex that defines it.
struct WignerTable {
    int n = 0;
    std::vector<double> values;  // indexed by plane point
    std::shared_ptr<const DSimplex> simplex;

    double at_point(int alpha) const { return values[static_cast<std::size_t>(alpha)]; }
    /// Grid view in the (pencil-0 line, pencil-1 line) coordinates.
    std::vector<std::vector<double>> grid() const;

    double total() const;
};

/// W_alpha = (1/n) Tr(A_alpha rho); the total over all points is Tr rho.
WignerTable wigner_from_state(const HermitianOp& rho, std::shared_ptr<const DSimplex> simplex);

/// Exact linear inverse via the Gram identity Tr A_a A_b = n delta_ab:
/// rho = sum_a W_a A_a.
HermitianOp state_from_wigner(const WignerTable& table);

/// Line sums p_omega grouped by pencil; within each pencil they sum to the
/// trace of the state. p_omega equals Tr P_omega rho for the corner the line
/// is mapped to.
struct LineProbabilities {
    std::vector<std::vector<double>> per_pencil;  // [pencil][line position]
    double min_value = 0;
};

LineProbabilities line_probabilities(const WignerTable& table);

}  // namespace mubgeo
