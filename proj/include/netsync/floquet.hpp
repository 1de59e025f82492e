#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "netsync/integrate.hpp"
#include "netsync/linalg.hpp"
#include "netsync/models.hpp"

namespace netsync {

using VariationalFn = std::function<Matrix(const Vec&)>;

/// State-transition matrix over one period, computed by co-integrating
/// d(Phi)/dt = J(x(t)) Phi alongside the base trajectory with the same
/// fixed-step RK4 (a trailing partial step covers a period that is not a
/// multiple of dt). trace_integral is the trapezoid quadrature of
/// tr J(x(t)) over the same grid: by Liouville's formula det(matrix) should
/// equal exp(trace_integral), which the tests use as a consistency oracle.
struct MonodromyMatrix {
    Matrix matrix;
    double period;
    Vec anchor;
    double trace_integral;
};

MonodromyMatrix monodromy(const VariationalFn& variational, const Vec& anchor, double period,
                          const SystemSpec& spec, const IntegratorConfig& cfg);

/// A multiplier counts as the trivial (Goldstone) one when it lies within
/// this distance of +1.
inline constexpr double kTrivialTolerance = 0.05;

struct FloquetResult {
    std::vector<std::complex<double>> multipliers; // modulus descending
    int trivial_index;                             // -1 when nothing is near +1
    double max_nontrivial_modulus;
    bool stable; // every nontrivial modulus < 1
    double trivial_tolerance = kTrivialTolerance;
};

FloquetResult floquet_multipliers(const MonodromyMatrix& m);

struct MsfPoint {
    double gamma;
    double max_modulus; // +inf when diverged
    double msf;         // ln(max_modulus) / period; +inf when diverged
    bool diverged;
};

struct MsfCurve {
    std::vector<MsfPoint> points; // gamma ascending, endpoints included
    double period;                // isolated-cell cycle period
    Vec anchor;

    double gamma_min() const { return points.front().gamma; }
    double gamma_max() const { return points.back().gamma; }
    /// Linear interpolation of the msf between grid points (equivalently,
    /// linear in ln modulus). Throws InvalidArgument outside the swept range;
    /// +inf when either bracketing point diverged.
    double msf_at(double gamma) const;
    bool diverged_near(double gamma) const;
};

/// Settle the isolated cell (from the origin) onto its limit cycle, then for
/// each gamma on the grid compute the transverse-block monodromy and its
/// dominant modulus. Blow-up at a grid point marks it diverged and the sweep
/// continues.
MsfCurve msf_sweep(const FhnParams& p, double gamma_min, double gamma_max, int steps,
                   const IntegratorConfig& cfg);

enum class NetworkVerdict { Stable, Marginal, Unstable };

struct NetworkModeAssessment {
    double eigenvalue; // Laplacian eigenvalue feeding this transverse mode
    double gamma;      // phi * eigenvalue
    double msf;
    double max_modulus;
    bool diverged;
    bool stable;   // msf < 0 and not diverged
    bool marginal; // zero mode (extra graph component, or phi == 0)
};

struct NetworkMsfReport {
    std::vector<NetworkModeAssessment> modes; // one per eigenvalue after the first
    double phi;
    NetworkVerdict verdict;
    bool stable; // verdict == Stable
};

/// Read the synchronization verdict for a coupled network off the MSF curve:
/// one assessment per Laplacian eigenvalue beyond the first (the first zero
/// is the motion along the synchronous manifold). Extra zero eigenvalues --
/// disconnected graphs -- and phi = 0 yield marginal modes, never stable
/// ones. Throws InvalidArgument when some phi*lambda falls outside the swept
/// range.
NetworkMsfReport evaluate_network_msf(const MsfCurve& curve, Vec laplacian_eigenvalues,
                                      double phi);

} // namespace netsync
