#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "netsync/integrate.hpp"
#include "netsync/linalg.hpp"
#include "netsync/models.hpp"

namespace netsync {

/// Wrap an angle into (-pi, pi].
double wrap_phase(double x);

/// Continuous (unwrapped) phase series for one node. Phase models read the
/// state component directly; planar models take atan2 around the node's
/// post-transient mean point, then unwrap. Errors when a planar node barely
/// moves (near a fixed point the angle is meaningless).
Vec phase_of(const Trajectory& traj, int node);

/// Wrapped phase differences phi_i - phi_j for the requested node pairs;
/// row k = sample k, one column per pair, every entry in (-pi, pi].
Matrix phase_differences(const Trajectory& traj,
                         const std::vector<std::pair<int, int>>& pairs);

enum class SyncClass { Unsynchronized, RemoteSync, CompleteSync };

struct SyncVerdict {
    SyncClass classification;
    double peripheral_residual; // max wrapped pairwise gap among peripherals
    double hub_residual;        // max wrapped hub-to-peripheral gap
    std::optional<double> convergence_time;
    double tolerance;
};

/// Classify hub/peripheral synchronization from phases. Residuals are taken
/// over the final 25% of the post-transient window; convergence_time scans
/// the whole trajectory for the first moment the relevant pair set drops
/// below tolerance for good. The post-transient window must hold at least
/// five oscillation periods of the hub, otherwise the verdict would be a
/// snapshot and an error is thrown instead.
SyncVerdict detect_sync(const Trajectory& traj, int hub = 0, double tolerance = 1e-2);

/// Max pairwise Euclidean distance between the listed nodes' sub-states,
/// one value per sample.
Vec sync_error(const Trajectory& traj, const std::vector<int>& nodes);

struct EquilibriumResult {
    Vec x_star;         // raw converged value (can sit at 2*pi, not 0)
    Vec x_star_mod_2pi; // same point folded into [0, 2*pi)
    double residual;    // |rhs| at x_star
    std::vector<std::complex<double>> jacobian_eigenvalues;
    bool locally_stable; // all eigenvalue real parts < 0
    int iterations;
};

/// Damped Newton on the reduced Kuramoto vector field (step halving until
/// the residual decreases, at most 20 halvings per step, at most 100 steps).
EquilibriumResult find_equilibrium(const KuramotoStarParams& p, const Vec& guess);

} // namespace netsync
