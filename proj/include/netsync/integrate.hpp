#pragma once

#include <cstddef>

#include "netsync/linalg.hpp"
#include "netsync/models.hpp"

namespace netsync {

struct IntegratorConfig {
    double dt = 1e-3;
    double t_end = 400.0;
    double transient = 200.0;       // settling time discarded by analysis windows
    double blow_up_threshold = 1e6; // abort when any |component| exceeds this
    void validate() const;
};

/// Uniformly sampled solution. Keeps the spec and config it was produced
/// with, so downstream analysis knows the model layout and the transient cut.
struct Trajectory {
    Vec times;
    Matrix states; // row k = state at times[k]
    SystemSpec spec;
    IntegratorConfig config;

    std::size_t samples() const { return times.size(); }
    std::size_t dim() const { return states.cols(); }
    /// Index of the first sample at or past config.transient.
    std::size_t first_post_transient_index() const;
    Vec state_at(std::size_t k) const;
    /// Linear interpolation between bracketing samples.
    Vec state_at_time(double t) const;
};

/// One classical RK4 step of size h.
template <class F>
Vec rk4_step(F&& f, const Vec& y, double h) {
    const std::size_t n = y.size();
    Vec k1 = f(y);
    Vec tmp(n);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    Vec k2 = f(tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    Vec k3 = f(tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
    Vec k4 = f(tmp);
    Vec out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

/// Fixed-step RK4 over [0, t_end], sampling every dt. Throws BlowUpError the
/// moment any component leaves [-threshold, threshold] or goes non-finite.
Trajectory integrate(const SystemSpec& spec, const Vec& x0, const IntegratorConfig& cfg);

struct PeriodEstimate {
    double period;             // mean spacing of upward level crossings
    double spacing_stddev;     // population stddev of those spacings
    int n_crossings;
    double level;
    double last_crossing_time; // anchor time for phase-fixed restarts
};

/// Period from upward crossings of `level` in one state component, using
/// post-transient samples only, crossing times refined by linear
/// interpolation. Throws NoPeriodError with fewer than three crossings or
/// when spacings wander by more than 5% of their mean.
PeriodEstimate estimate_period(const Trajectory& traj, int component, double level);

/// Same, with the level defaulting to the component's post-transient mean.
PeriodEstimate estimate_period(const Trajectory& traj, int component = 0);

struct LimitCycle {
    Vec anchor; // state on the cycle (at the last detected crossing)
    double period;
    double level;
    double spacing_stddev;
    int n_crossings;
};

/// Integrate through the transient, detect the period, and hand back a
/// phase-fixed point on the limit cycle for variational runs.
LimitCycle settle_to_limit_cycle(const SystemSpec& spec, const Vec& x0,
                                 const IntegratorConfig& cfg, int component = 0);

} // namespace netsync
