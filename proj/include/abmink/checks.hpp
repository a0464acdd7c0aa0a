#pragma once

// Numerical cross checks shared by `abmink check`, the scenario runner and
// the acceptance suite.

#include <cstdint>
#include <vector>

#include "abmink/scenarios.hpp"

namespace abmink::checks {

/// 5 x 5 x 5 grid over n in [1.0, 1.6], sigma in [1e7, 1e8] S/m (log spaced)
/// and omega across the visible band, all inside the good-conductor regime.
std::vector<scenarios::MirrorConfig> mirror_grid(double E0 = 1.0e3);

/// Largest pairwise disagreement of the three mirror routes over `grid`.
double mirror_max_disagreement(const std::vector<scenarios::MirrorConfig>& grid, double quadrature_tol);

struct ConvergenceResult {
    double residual_coarse;  // |residual| at step h
    double residual_fine;    // |residual| at step h/2
    double ratio;            // coarse / fine, 4 for second-order convergence
    double scale;            // w k, the natural residual scale
};

/// Divergence of the Minkowski tensor for a plane wave in index n, sampled
/// at a generic spacetime point with h = step_fraction * wavelength.
ConvergenceResult divergence_convergence(double n, double omega, double step_fraction = 1.0 / 20.0);

struct LedgerResult {
    double ledger_error;  // g_A + g_mech vs g_M
    double ladder_error;  // g_M vs n^2 g_A and g_A vs S / c^2
};

/// Random nonmagnetic field points; errors are max |a_i - b_i| / max_i |b_i|.
LedgerResult momentum_ledger(int count, std::uint64_t seed = 20260101);

/// |time average| / peak of the Abraham term of a plane wave sampled over
/// `periods` optical periods.
double abraham_term_average_ratio(double n, double omega, int periods, int samples_per_period = 64);

/// Max relative error of D = eps E and B = mu H after the moving-medium
/// constitutive relation is evaluated in the rest frame.
double rest_frame_reduction_error(double n, double mu_r);

}  // namespace abmink::checks
