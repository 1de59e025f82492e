#include "netsync/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "netsync/eigensolve.hpp"
#include "netsync/errors.hpp"

namespace netsync {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_phase_model(ModelKind m) {
    return m == ModelKind::KuramotoStar || m == ModelKind::KuramotoReduced;
}

} // namespace

double wrap_phase(double x) {
    double r = std::remainder(x, kTwoPi); // [-pi, pi]
    if (r <= -std::numbers::pi) r += kTwoPi;
    return r;
}

Vec phase_of(const Trajectory& traj, int node) {
    if (node < 0 || node >= traj.spec.node_count())
        throw InvalidArgument("phase_of: node out of range");
    const std::size_t n = traj.samples();
    if (n == 0) throw InvalidArgument("phase_of: empty trajectory");

    if (is_phase_model(traj.spec.model)) {
        Vec out(n);
        for (std::size_t k = 0; k < n; ++k) out[k] = traj.states(k, node);
        return out;
    }

    // planar node: angle around the post-transient mean point
    const int iv = 2 * node, iw = 2 * node + 1;
    const std::size_t start = traj.first_post_transient_index();
    if (start >= n) throw InvalidArgument("phase_of: no post-transient samples");
    double vm = 0.0, wm = 0.0;
    for (std::size_t k = start; k < n; ++k) {
        vm += traj.states(k, iv);
        wm += traj.states(k, iw);
    }
    const double count = static_cast<double>(n - start);
    vm /= count;
    wm /= count;

    double max_radius = 0.0;
    for (std::size_t k = start; k < n; ++k)
        max_radius = std::max(
            max_radius, std::hypot(traj.states(k, iv) - vm, traj.states(k, iw) - wm));
    if (max_radius < 1e-6)
        throw InvalidArgument("phase_of: node " + std::to_string(node) +
                              " sits at a fixed point; its phase is undefined");

    Vec out(n);
    double prev_raw = std::atan2(traj.states(0, iw) - wm, traj.states(0, iv) - vm);
    out[0] = prev_raw;
    for (std::size_t k = 1; k < n; ++k) {
        const double raw = std::atan2(traj.states(k, iw) - wm, traj.states(k, iv) - vm);
        out[k] = out[k - 1] + wrap_phase(raw - prev_raw);
        prev_raw = raw;
    }
    return out;
}

Matrix phase_differences(const Trajectory& traj,
                         const std::vector<std::pair<int, int>>& pairs) {
    if (pairs.empty()) throw InvalidArgument("phase_differences: no pairs given");
    const int nodes = traj.spec.node_count();
    std::vector<Vec> phases(nodes);
    auto phase_for = [&](int node) -> const Vec& {
        if (node < 0 || node >= nodes)
            throw InvalidArgument("phase_differences: node out of range");
        if (phases[node].empty()) phases[node] = phase_of(traj, node);
        return phases[node];
    };
    Matrix out(traj.samples(), pairs.size());
    for (std::size_t c = 0; c < pairs.size(); ++c) {
        const Vec& pi = phase_for(pairs[c].first);
        const Vec& pj = phase_for(pairs[c].second);
        for (std::size_t k = 0; k < traj.samples(); ++k)
            out(k, c) = wrap_phase(pi[k] - pj[k]);
    }
    return out;
}

namespace {

// Rough hub oscillation period: phase slope for phase models, level
// crossings of the v component for planar ones.
double hub_period(const Trajectory& traj, int hub, const Vec& hub_phase) {
    if (is_phase_model(traj.spec.model)) {
        const std::size_t start = traj.first_post_transient_index();
        const double dphi = hub_phase.back() - hub_phase[start];
        const double dt = traj.times.back() - traj.times[start];
        const double rate = std::abs(dphi / dt);
        if (rate < 1e-12) return std::numeric_limits<double>::infinity();
        return kTwoPi / rate;
    }
    return estimate_period(traj, 2 * hub).period;
}

} // namespace

SyncVerdict detect_sync(const Trajectory& traj, int hub, double tolerance) {
    const int nodes = traj.spec.node_count();
    if (hub < 0 || hub >= nodes) throw InvalidArgument("detect_sync: hub index out of range");
    if (nodes < 2) throw InvalidArgument("detect_sync: need at least two nodes");
    if (!(tolerance > 0.0)) throw InvalidArgument("detect_sync: tolerance must be positive");

    std::vector<Vec> phases(nodes);
    for (int i = 0; i < nodes; ++i) phases[i] = phase_of(traj, i);

    const std::size_t start = traj.first_post_transient_index();
    const double window = traj.times.back() - traj.config.transient;
    const double period = hub_period(traj, hub, phases[hub]);
    if (window < 5.0 * period)
        throw InvalidArgument(
            "detect_sync: post-transient window holds fewer than five oscillation periods");

    std::vector<int> peripherals;
    for (int i = 0; i < nodes; ++i)
        if (i != hub) peripherals.push_back(i);

    // residual series over the whole trajectory; verdict from the tail
    const std::size_t n = traj.samples();
    Vec peri_res(n, 0.0), hub_res(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double pr = 0.0;
        for (std::size_t a = 0; a < peripherals.size(); ++a)
            for (std::size_t b = a + 1; b < peripherals.size(); ++b)
                pr = std::max(pr, std::abs(wrap_phase(phases[peripherals[a]][k] -
                                                      phases[peripherals[b]][k])));
        double hr = 0.0;
        for (int p : peripherals)
            hr = std::max(hr, std::abs(wrap_phase(phases[hub][k] - phases[p][k])));
        peri_res[k] = pr;
        hub_res[k] = hr;
    }

    const double assess_from = traj.config.transient + 0.75 * window;
    SyncVerdict v{};
    v.tolerance = tolerance;
    v.peripheral_residual = 0.0;
    v.hub_residual = 0.0;
    for (std::size_t k = start; k < n; ++k) {
        if (traj.times[k] < assess_from) continue;
        v.peripheral_residual = std::max(v.peripheral_residual, peri_res[k]);
        v.hub_residual = std::max(v.hub_residual, hub_res[k]);
    }

    if (v.peripheral_residual <= tolerance && v.hub_residual <= tolerance)
        v.classification = SyncClass::CompleteSync;
    else if (v.peripheral_residual <= tolerance)
        v.classification = SyncClass::RemoteSync;
    else
        v.classification = SyncClass::Unsynchronized;

    if (v.classification != SyncClass::Unsynchronized) {
        // first sample from which the synced pair set stays inside tolerance
        const bool include_hub = v.classification == SyncClass::CompleteSync;
        std::size_t first_ok = n;
        for (std::size_t k = n; k-- > 0;) {
            double r = peri_res[k];
            if (include_hub) r = std::max(r, hub_res[k]);
            if (r <= tolerance)
                first_ok = k;
            else
                break;
        }
        if (first_ok < n) v.convergence_time = traj.times[first_ok];
    }
    return v;
}

Vec sync_error(const Trajectory& traj, const std::vector<int>& nodes) {
    if (nodes.size() < 2) throw InvalidArgument("sync_error: need at least two nodes");
    const int total = traj.spec.node_count();
    for (int n : nodes)
        if (n < 0 || n >= total) throw InvalidArgument("sync_error: node out of range");
    const int dim = traj.spec.node_dim();

    Vec out(traj.samples(), 0.0);
    for (std::size_t k = 0; k < traj.samples(); ++k) {
        double worst = 0.0;
        for (std::size_t a = 0; a < nodes.size(); ++a)
            for (std::size_t b = a + 1; b < nodes.size(); ++b) {
                double d2 = 0.0;
                for (int c = 0; c < dim; ++c) {
                    const double diff = traj.states(k, dim * nodes[a] + c) -
                                        traj.states(k, dim * nodes[b] + c);
                    d2 += diff * diff;
                }
                worst = std::max(worst, std::sqrt(d2));
            }
        out[k] = worst;
    }
    return out;
}

EquilibriumResult find_equilibrium(const KuramotoStarParams& p, const Vec& guess) {
    p.validate();
    if (static_cast<int>(guess.size()) != p.n_peripheral())
        throw InvalidArgument("find_equilibrium: guess length must match n_peripheral");

    const auto format_iterate = [](const Vec& x) {
        std::ostringstream os;
        os << "(";
        for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
        os << ")";
        return os.str();
    };

    Vec x = guess;
    Vec f = kuramoto_reduced_rhs(x, p);
    double fnorm = norm2(f);
    int iterations = 0;
    constexpr double tol = 1e-12;
    while (fnorm > tol) {
        if (iterations >= 100)
            throw ConvergenceError("find_equilibrium: no convergence within 100 iterations");
        ++iterations;
        const Matrix j = kuramoto_reduced_jacobian(x, p);
        Vec dx;
        try {
            Vec rhs(f.size());
            for (std::size_t i = 0; i < f.size(); ++i) rhs[i] = -f[i];
            dx = lu_solve(j, rhs);
        } catch (const ConvergenceError&) {
            throw ConvergenceError("find_equilibrium: singular Jacobian at iterate " +
                                   format_iterate(x));
        }
        double s = 1.0;
        bool accepted = false;
        for (int h = 0; h <= 20; ++h) {
            Vec trial(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] + s * dx[i];
            Vec ftrial = kuramoto_reduced_rhs(trial, p);
            const double tnorm = norm2(ftrial);
            if (tnorm < fnorm) {
                x = std::move(trial);
                f = std::move(ftrial);
                fnorm = tnorm;
                accepted = true;
                break;
            }
            s *= 0.5;
        }
        if (!accepted)
            throw ConvergenceError(
                "find_equilibrium: residual would not decrease after 20 step halvings at " +
                format_iterate(x));
    }

    EquilibriumResult r;
    r.x_star = x;
    r.x_star_mod_2pi.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double m = std::fmod(x[i], kTwoPi);
        if (m < 0.0) m += kTwoPi;
        r.x_star_mod_2pi[i] = m;
    }
    r.residual = fnorm;
    r.jacobian_eigenvalues = general_eigenvalues(kuramoto_reduced_jacobian(x, p));
    r.locally_stable = true;
    for (const auto& ev : r.jacobian_eigenvalues)
        if (ev.real() >= 0.0) r.locally_stable = false;
    r.iterations = iterations;
    return r;
}

} // namespace netsync
