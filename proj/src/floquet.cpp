#include "netsync/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "netsync/eigensolve.hpp"
#include "netsync/errors.hpp"

namespace netsync {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct CoState {
    Vec x;      // base state
    Matrix phi; // variational flow
};

void check_costate(const CoState& z, double threshold, double t) {
    for (double v : z.x)
        if (!std::isfinite(v) || std::abs(v) > threshold)
            throw BlowUpError("variational run blew up (state) at t = " + std::to_string(t), t);
    for (double v : z.phi.data())
        if (!std::isfinite(v) || std::abs(v) > threshold)
            throw BlowUpError("variational run blew up (flow) at t = " + std::to_string(t), t);
}

} // namespace

MonodromyMatrix monodromy(const VariationalFn& variational, const Vec& anchor, double period,
                          const SystemSpec& spec, const IntegratorConfig& cfg) {
    cfg.validate();
    if (!(period > 0.0) || !std::isfinite(period))
        throw InvalidArgument("monodromy: period must be positive");
    if (anchor.empty()) throw InvalidArgument("monodromy: empty anchor state");

    const Matrix j0 = variational(anchor);
    if (!j0.square()) throw InvalidArgument("monodromy: variational matrix must be square");
    const std::size_t m = j0.rows();

    CoState z{anchor, Matrix::identity(m)};
    auto f = [&](const CoState& s) {
        CoState ds;
        ds.x = system_rhs(spec, s.x);
        ds.phi = variational(s.x) * s.phi;
        return ds;
    };
    auto step = [&](CoState s, double h) {
        // RK4 on the combined (state, flow) system
        CoState k1 = f(s);
        CoState t1{s.x, s.phi};
        for (std::size_t i = 0; i < s.x.size(); ++i) t1.x[i] = s.x[i] + 0.5 * h * k1.x[i];
        for (std::size_t i = 0; i < s.phi.data().size(); ++i)
            t1.phi.data()[i] = s.phi.data()[i] + 0.5 * h * k1.phi.data()[i];
        CoState k2 = f(t1);
        for (std::size_t i = 0; i < s.x.size(); ++i) t1.x[i] = s.x[i] + 0.5 * h * k2.x[i];
        for (std::size_t i = 0; i < s.phi.data().size(); ++i)
            t1.phi.data()[i] = s.phi.data()[i] + 0.5 * h * k2.phi.data()[i];
        CoState k3 = f(t1);
        for (std::size_t i = 0; i < s.x.size(); ++i) t1.x[i] = s.x[i] + h * k3.x[i];
        for (std::size_t i = 0; i < s.phi.data().size(); ++i)
            t1.phi.data()[i] = s.phi.data()[i] + h * k3.phi.data()[i];
        CoState k4 = f(t1);
        for (std::size_t i = 0; i < s.x.size(); ++i)
            s.x[i] += h / 6.0 * (k1.x[i] + 2.0 * k2.x[i] + 2.0 * k3.x[i] + k4.x[i]);
        for (std::size_t i = 0; i < s.phi.data().size(); ++i)
            s.phi.data()[i] += h / 6.0 * (k1.phi.data()[i] + 2.0 * k2.phi.data()[i] +
                                          2.0 * k3.phi.data()[i] + k4.phi.data()[i]);
        return s;
    };

    const auto n_full = static_cast<std::size_t>(std::floor(period / cfg.dt));
    const double remainder = period - static_cast<double>(n_full) * cfg.dt;

    double trace_integral = 0.0;
    double tr_prev = variational(z.x).trace();
    double t = 0.0;
    for (std::size_t k = 0; k < n_full; ++k) {
        z = step(z, cfg.dt);
        t += cfg.dt;
        check_costate(z, cfg.blow_up_threshold, t);
        const double tr = variational(z.x).trace();
        trace_integral += 0.5 * cfg.dt * (tr_prev + tr);
        tr_prev = tr;
    }
    if (remainder > 1e-12 * period) {
        z = step(z, remainder);
        t += remainder;
        check_costate(z, cfg.blow_up_threshold, t);
        const double tr = variational(z.x).trace();
        trace_integral += 0.5 * remainder * (tr_prev + tr);
    }

    return {std::move(z.phi), period, anchor, trace_integral};
}

FloquetResult floquet_multipliers(const MonodromyMatrix& m) {
    FloquetResult r;
    r.multipliers = general_eigenvalues(m.matrix); // modulus descending
    r.trivial_index = -1;
    double best = kTrivialTolerance;
    for (std::size_t i = 0; i < r.multipliers.size(); ++i) {
        const double dist = std::abs(r.multipliers[i] - std::complex<double>(1.0, 0.0));
        if (dist <= best) {
            best = dist;
            r.trivial_index = static_cast<int>(i);
        }
    }
    r.max_nontrivial_modulus = 0.0;
    for (std::size_t i = 0; i < r.multipliers.size(); ++i) {
        if (static_cast<int>(i) == r.trivial_index) continue;
        r.max_nontrivial_modulus = std::max(r.max_nontrivial_modulus, std::abs(r.multipliers[i]));
    }
    r.stable = r.max_nontrivial_modulus < 1.0;
    return r;
}

double MsfCurve::msf_at(double gamma) const {
    if (points.empty()) throw InvalidArgument("msf_at: empty curve");
    const double lo = gamma_min(), hi = gamma_max();
    const double slack = 1e-12 * std::max(1.0, std::abs(hi - lo));
    if (gamma < lo - slack || gamma > hi + slack)
        throw InvalidArgument("msf_at: gamma " + std::to_string(gamma) +
                              " outside swept range [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "]");
    const double g = std::clamp(gamma, lo, hi);
    auto it = std::lower_bound(points.begin(), points.end(), g,
                               [](const MsfPoint& p, double x) { return p.gamma < x; });
    if (it != points.end() && it->gamma == g) return it->msf;
    const std::size_t hi_idx = static_cast<std::size_t>(it - points.begin());
    const std::size_t lo_idx = hi_idx - 1;
    const MsfPoint& a = points[lo_idx];
    const MsfPoint& b = points[hi_idx];
    if (a.diverged || b.diverged) return kInf;
    const double f = (g - a.gamma) / (b.gamma - a.gamma);
    return (1.0 - f) * a.msf + f * b.msf;
}

bool MsfCurve::diverged_near(double gamma) const {
    const double g = std::clamp(gamma, gamma_min(), gamma_max());
    auto it = std::lower_bound(points.begin(), points.end(), g,
                               [](const MsfPoint& p, double x) { return p.gamma < x; });
    if (it != points.end() && it->gamma == g) return it->diverged;
    const std::size_t hi_idx = static_cast<std::size_t>(it - points.begin());
    return points[hi_idx].diverged || points[hi_idx - 1].diverged;
}

MsfCurve msf_sweep(const FhnParams& p, double gamma_min, double gamma_max, int steps,
                   const IntegratorConfig& cfg) {
    if (steps < 2) throw InvalidArgument("msf_sweep: need at least two grid points");
    if (!(gamma_min < gamma_max)) throw InvalidArgument("msf_sweep: need gamma_min < gamma_max");

    SystemSpec cell;
    cell.model = ModelKind::FhnSingle;
    cell.fhn = p;
    const LimitCycle cycle = settle_to_limit_cycle(cell, {0.0, 0.0}, cfg);

    MsfCurve curve;
    curve.period = cycle.period;
    curve.anchor = cycle.anchor;
    curve.points.reserve(steps);
    for (int i = 0; i < steps; ++i) {
        const double gamma =
            gamma_min + (gamma_max - gamma_min) * static_cast<double>(i) / (steps - 1);
        MsfPoint pt{gamma, kInf, kInf, true};
        try {
            const MonodromyMatrix m = monodromy(
                [&p, gamma](const Vec& s) { return msf_block(s, p, gamma); }, cycle.anchor,
                cycle.period, cell, cfg);
            double max_mod = 0.0;
            for (const auto& mu : general_eigenvalues(m.matrix))
                max_mod = std::max(max_mod, std::abs(mu));
            pt = {gamma, max_mod, std::log(max_mod) / cycle.period, false};
        } catch (const BlowUpError&) {
            // recorded as a diverged grid point; the sweep carries on
        }
        curve.points.push_back(pt);
    }
    return curve;
}

NetworkMsfReport evaluate_network_msf(const MsfCurve& curve, Vec laplacian_eigenvalues,
                                      double phi) {
    if (laplacian_eigenvalues.empty())
        throw InvalidArgument("evaluate_network_msf: empty spectrum");
    std::sort(laplacian_eigenvalues.begin(), laplacian_eigenvalues.end());

    constexpr double zero_eig_tol = 1e-8;
    NetworkMsfReport report;
    report.phi = phi;
    bool any_bad = false, any_marginal = false;
    for (std::size_t k = 1; k < laplacian_eigenvalues.size(); ++k) {
        const double lam = laplacian_eigenvalues[k];
        const double gamma = phi * lam;
        NetworkModeAssessment mode{lam, gamma, 0.0, 1.0, false, false, false};
        if (std::abs(lam) <= zero_eig_tol || std::abs(gamma) <= 1e-12) {
            // extra zero mode: nothing pulls this direction back to the
            // synchronous manifold, so it can never count as stable
            mode.marginal = true;
            any_marginal = true;
        } else {
            mode.msf = curve.msf_at(gamma);
            mode.diverged = curve.diverged_near(gamma);
            mode.max_modulus = mode.diverged ? std::numeric_limits<double>::infinity()
                                             : std::exp(mode.msf * curve.period);
            mode.stable = !mode.diverged && mode.msf < 0.0;
            if (!mode.stable) any_bad = true;
        }
        report.modes.push_back(mode);
    }
    report.verdict = any_bad          ? NetworkVerdict::Unstable
                     : any_marginal   ? NetworkVerdict::Marginal
                                      : NetworkVerdict::Stable;
    report.stable = report.verdict == NetworkVerdict::Stable;
    return report;
}

} // namespace netsync
