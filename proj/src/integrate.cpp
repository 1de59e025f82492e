#include "netsync/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "netsync/errors.hpp"

namespace netsync {

void IntegratorConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("integrator: dt must be positive");
    if (!(t_end >= dt) || !std::isfinite(t_end))
        throw InvalidArgument("integrator: t_end must be at least one step");
    if (!(transient >= 0.0) || transient >= t_end)
        throw InvalidArgument("integrator: transient must lie in [0, t_end)");
    if (!(blow_up_threshold > 0.0))
        throw InvalidArgument("integrator: blow-up threshold must be positive");
}

std::size_t Trajectory::first_post_transient_index() const {
    const auto it = std::lower_bound(times.begin(), times.end(), config.transient);
    return static_cast<std::size_t>(it - times.begin());
}

Vec Trajectory::state_at(std::size_t k) const {
    Vec out(dim());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = states(k, j);
    return out;
}

Vec Trajectory::state_at_time(double t) const {
    if (times.empty()) throw InvalidArgument("state_at_time: empty trajectory");
    if (t <= times.front()) return state_at(0);
    if (t >= times.back()) return state_at(samples() - 1);
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    const std::size_t hi = static_cast<std::size_t>(it - times.begin());
    const std::size_t lo = hi - 1;
    const double f = (t - times[lo]) / (times[hi] - times[lo]);
    Vec out(dim());
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = (1.0 - f) * states(lo, j) + f * states(hi, j);
    return out;
}

namespace {

void check_in_bounds(const Vec& y, double threshold, double t) {
    for (double x : y)
        if (!std::isfinite(x) || std::abs(x) > threshold)
            throw BlowUpError("integration blew up at t = " + std::to_string(t), t);
}

} // namespace

Trajectory integrate(const SystemSpec& spec, const Vec& x0, const IntegratorConfig& cfg) {
    cfg.validate();
    spec.validate();
    if (static_cast<int>(x0.size()) != spec.state_dim())
        throw InvalidArgument("integrate: initial state length does not match the model");
    check_in_bounds(x0, cfg.blow_up_threshold, 0.0);

    const auto n_steps = static_cast<std::size_t>(std::floor(cfg.t_end / cfg.dt + 1e-9));
    Trajectory traj;
    traj.spec = spec;
    traj.config = cfg;
    traj.times.resize(n_steps + 1);
    traj.states = Matrix(n_steps + 1, x0.size());

    auto f = [&spec](const Vec& y) { return system_rhs(spec, y); };
    Vec y = x0;
    for (std::size_t j = 0; j < y.size(); ++j) traj.states(0, j) = y[j];
    traj.times[0] = 0.0;
    for (std::size_t k = 1; k <= n_steps; ++k) {
        y = rk4_step(f, y, cfg.dt);
        const double t = static_cast<double>(k) * cfg.dt;
        check_in_bounds(y, cfg.blow_up_threshold, t);
        traj.times[k] = t;
        for (std::size_t j = 0; j < y.size(); ++j) traj.states(k, j) = y[j];
    }
    return traj;
}

PeriodEstimate estimate_period(const Trajectory& traj, int component, double level) {
    if (component < 0 || static_cast<std::size_t>(component) >= traj.dim())
        throw InvalidArgument("estimate_period: component out of range");

    const std::size_t start = traj.first_post_transient_index();
    std::vector<double> crossings;
    for (std::size_t k = start; k + 1 < traj.samples(); ++k) {
        const double a = traj.states(k, component);
        const double b = traj.states(k + 1, component);
        if (a < level && b >= level) {
            const double f = (level - a) / (b - a);
            crossings.push_back(traj.times[k] + f * (traj.times[k + 1] - traj.times[k]));
        }
    }
    if (crossings.size() < 3)
        throw NoPeriodError("estimate_period: fewer than three upward level crossings after the transient");

    std::vector<double> spacings(crossings.size() - 1);
    for (std::size_t i = 0; i + 1 < crossings.size(); ++i)
        spacings[i] = crossings[i + 1] - crossings[i];
    double mean = 0.0;
    for (double s : spacings) mean += s;
    mean /= static_cast<double>(spacings.size());
    double var = 0.0;
    for (double s : spacings) var += (s - mean) * (s - mean);
    var /= static_cast<double>(spacings.size());
    const double stddev = std::sqrt(var);
    if (stddev > 0.05 * mean)
        throw NoPeriodError("estimate_period: crossing spacings are irregular (no clean period)");

    return {mean, stddev, static_cast<int>(crossings.size()), level, crossings.back()};
}

PeriodEstimate estimate_period(const Trajectory& traj, int component) {
    if (component < 0 || static_cast<std::size_t>(component) >= traj.dim())
        throw InvalidArgument("estimate_period: component out of range");
    const std::size_t start = traj.first_post_transient_index();
    if (start >= traj.samples())
        throw NoPeriodError("estimate_period: no samples after the transient");
    double mean = 0.0;
    for (std::size_t k = start; k < traj.samples(); ++k) mean += traj.states(k, component);
    mean /= static_cast<double>(traj.samples() - start);
    return estimate_period(traj, component, mean);
}

LimitCycle settle_to_limit_cycle(const SystemSpec& spec, const Vec& x0,
                                 const IntegratorConfig& cfg, int component) {
    const Trajectory traj = integrate(spec, x0, cfg);
    const PeriodEstimate est = estimate_period(traj, component);
    return {traj.state_at_time(est.last_crossing_time), est.period, est.level,
            est.spacing_stddev, est.n_crossings};
}

} // namespace netsync
