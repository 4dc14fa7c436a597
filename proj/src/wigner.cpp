#include "mubgeo/wigner.hpp"

#include <algorithm>
#include <numeric>

namespace mubgeo {

std::vector<std::vector<double>> WignerTable::grid() const {
    if (!simplex) throw MissingPlane("WignerTable::grid: no simplex attached");
    std::vector<std::vector<double>> g(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), 0));
    for (int alpha = 0; alpha < n * n; ++alpha) {
        const auto [i, j] = simplex->grid_coord[static_cast<std::size_t>(alpha)];
        g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            values[static_cast<std::size_t>(alpha)];
    }
    return g;
}

double WignerTable::total() const {
    return std::accumulate(values.begin(), values.end(), 0.0);
}

WignerTable wigner_from_state(const HermitianOp& rho,
                              std::shared_ptr<const DSimplex> simplex) {
    if (!simplex) throw MissingPlane("wigner_from_state: no simplex given");
    if (rho.dim() != simplex->n)
        throw DimensionMismatch("wigner_from_state: state dimension " +
                                std::to_string(rho.dim()) + " vs plane order " +
                                std::to_string(simplex->n));
    const int n = simplex->n;
    WignerTable table;
    table.n = n;
    table.simplex = std::move(simplex);
    table.values.reserve(static_cast<std::size_t>(n) * n);
    for (int alpha = 0; alpha < n * n; ++alpha) {
        const double w =
            (table.simplex->op(alpha).matrix().cwiseProduct(rho.matrix().transpose()))
                .sum()
                .real() /
            n;
        table.values.push_back(w);
    }
    return table;
}

HermitianOp state_from_wigner(const WignerTable& table) {
    if (!table.simplex) throw MissingPlane("state_from_wigner: no simplex attached");
    const int n = table.n;
    if (static_cast<int>(table.values.size()) != n * n)
        throw DimensionMismatch("state_from_wigner: expected " + std::to_string(n * n) +
                                " values");
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
    for (int alpha = 0; alpha < n * n; ++alpha)
        rho += table.values[static_cast<std::size_t>(alpha)] *
               table.simplex->op(alpha).matrix();
    return HermitianOp(std::move(rho));
}

LineProbabilities line_probabilities(const WignerTable& table) {
    if (!table.simplex) throw MissingPlane("line_probabilities: no plane attached");
    const auto& plane = table.simplex->plane;
    LineProbabilities out;
    out.min_value = 1e300;
    for (const auto& pencil : plane.pencils) {
        std::vector<double> probs;
        for (int li : pencil) {
            double p = 0;
            for (int alpha : plane.lines[static_cast<std::size_t>(li)])
                p += table.values[static_cast<std::size_t>(alpha)];
            out.min_value = std::min(out.min_value, p);
            probs.push_back(p);
        }
        out.per_pencil.push_back(std::move(probs));
    }
    return out;
}

}  // namespace mubgeo
