// Acceptance gate: the end-to-end claims this library is supposed to uphold,
// one [PASS]/[FAIL] line each, with every tolerance pinned right here. Run it
// directly or via ctest; exit status is 0 only when every criterion holds.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "netsync/analysis.hpp"
#include "netsync/eigensolve.hpp"
#include "netsync/floquet.hpp"
#include "netsync/graph.hpp"
#include "netsync/integrate.hpp"
#include "netsync/models.hpp"
#include "netsync/rng.hpp"
#include "support/oracles.hpp"

using namespace netsync;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// pinned tolerances, one per criterion clause
constexpr double kJacobianEigTol = 1e-9;        // 1: eigenvalues of the closed-form matrix
constexpr double kSpectrumRefTol = 0.05;        // 2: five-node spectrum vs reference values
constexpr double kSpectrumOracleTol = 1e-8;     // 2: five-node spectrum vs char-poly roots
constexpr double kTrivialWindow = 0.05;         // 3: distance of the trivial multiplier from +1
constexpr double kMsfZeroTol = 5e-3;            // 4: msf(0) should vanish
constexpr double kMsfNegativeGamma = -0.05;     // 4: gammas below this must be unstable
constexpr double kModulusAtGamma = 0.24;        // 4: reference modulus at gamma = 0.506
constexpr double kModulusAtGammaTol = 0.10;     // 4: half-width of that reference band
constexpr double kSyncTol = 1e-2;               // 5: phase-difference sync tolerance
constexpr double kSyncErrorFinal = 1e-3;        // 6: final pairwise state error
constexpr double kEigInsideSlack = 1e-9;        // 7: disc-membership slack
constexpr double kFreqRelTol = 0.05;            // 8: oscillator frequency vs omega0/(2 pi)
constexpr double kAmpRelTol = 0.10;             // 8: amplitude vs energy-balance prediction
constexpr double kRk4OrderFloor = 3.8;          // 9: measured convergence order
constexpr double kLiouvilleTol = 1e-4;          // 9: |det Phi - exp(int tr J)| relative
constexpr double kFdJacobianTol = 1e-5;         // 9: analytic vs central-difference Jacobian
constexpr double kAnnihilationTol = 1e-14;      // 9: coupling terms on the diagonal manifold

int g_failures = 0;

void report(int idx, bool ok, const std::string& what, const std::string& detail) {
    std::printf("[%s] criterion %d: %s — %s\n", ok ? "PASS" : "FAIL", idx, what.c_str(),
                detail.c_str());
    if (!ok) ++g_failures;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

KuramotoStarParams unit_star(int n) {
    KuramotoStarParams p;
    p.incoming.assign(n, 1.0);
    p.outgoing.assign(n, 1.0);
    return p;
}

Graph five_node_graph() {
    return build_from_edges(5, {{0, 1}, {0, 3}, {1, 2}, {1, 4}, {3, 4}});
}

Vec jittered_state(int dim, std::uint64_t seed, double jitter) {
    std::mt19937_64 rng(seed);
    Vec x(dim, 0.0);
    for (double& v : x) v = uniform_in(rng, -jitter, jitter);
    return x;
}

double liouville_rel_error(const MonodromyMatrix& m) {
    const double det = lu_determinant(m.matrix);
    const double expected = std::exp(m.trace_integral);
    return std::abs(det - expected) / std::abs(expected);
}

double max_fd_gap(const std::function<Vec(const Vec&)>& f,
                  const std::function<Matrix(const Vec&)>& jac, int dim, std::uint64_t seed,
                  double lo, double hi) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        Vec x(dim);
        for (double& v : x) v = uniform_in(rng, lo, hi);
        const Matrix diff = jac(x) - oracle::fd_jacobian(f, x);
        worst = std::max(worst, max_abs(diff));
    }
    return worst;
}

} // namespace

// 1: the reduced star model linearized at the synchronized equilibrium.
static void criterion_1() {
    const Vec x(3, kTwoPi);
    const Matrix j = kuramoto_reduced_jacobian(x, unit_star(3));
    const double expected[3][3] = {{-2, -1, -1}, {-1, -2, -1}, {-1, -1, -2}};
    bool entries_exact = true;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            if (j(r, c) != expected[r][c]) entries_exact = false;

    const SymmetricEigen eig = jacobi_eigensolve(j);
    const double want[3] = {-4.0, -1.0, -1.0};
    double worst = 0.0;
    for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(eig.eigenvalues[k] - want[k]));

    report(1, entries_exact && worst <= kJacobianEigTol,
           "reduced-model Jacobian at the locked state matches the closed form",
           entries_exact ? "entries exact, eigenvalue gap " + fmt(worst) + " (tol " +
                               fmt(kJacobianEigTol) + ")"
                         : "matrix entries differ from the closed form");
}

// 2: five-node benchmark graph spectrum, against both the quoted reference
// values and an independent characteristic-polynomial root finder.
static void criterion_2() {
    const Graph g = five_node_graph();
    const SpectralDecomposition s = eigendecompose(laplacian(g));
    const double reference[5] = {0.0, 0.8, 2.0, 2.6, 4.4};
    double worst_ref = 0.0;
    for (int k = 0; k < 5; ++k)
        worst_ref = std::max(worst_ref, std::abs(s.eigenvalues[k] - reference[k]));

    const std::vector<double> coeffs = oracle::charpoly(laplacian(g).matrix);
    const std::vector<double> roots = oracle::bisect_roots(coeffs, -0.5, 6.0);
    double worst_oracle = 1e300;
    if (roots.size() == 5) {
        worst_oracle = 0.0;
        for (int k = 0; k < 5; ++k)
            worst_oracle = std::max(worst_oracle, std::abs(s.eigenvalues[k] - roots[k]));
    }

    const bool ref_ok = worst_ref <= kSpectrumRefTol;
    const bool oracle_ok = worst_oracle <= kSpectrumOracleTol;
    report(2, ref_ok && oracle_ok, "five-node Laplacian spectrum",
           "worst gap vs reference " + fmt(worst_ref) + " (tol " + fmt(kSpectrumRefTol) +
               "), vs char-poly roots " + fmt(worst_oracle) + " (tol " +
               fmt(kSpectrumOracleTol) + ")");
}

// 3: star of relaxation oscillators at coupling 0.115 — one multiplier rides
// at +1, the rest sit strictly inside the unit circle.
static MonodromyMatrix criterion_3() {
    SystemSpec spec;
    spec.model = ModelKind::FhnStar;
    spec.star.incoming = {0.115, 0.115};
    spec.star.outgoing = {0.115, 0.115};
    IntegratorConfig cfg; // dt 1e-3, 400 s, transient 200
    const LimitCycle cycle = settle_to_limit_cycle(spec, Vec(6, 0.0), cfg);
    const MonodromyMatrix m = monodromy(
        [&](const Vec& x) { return fhn_star_variational(x, spec.fhn, spec.star); }, cycle.anchor,
        cycle.period, spec, cfg);
    const FloquetResult r = floquet_multipliers(m);

    int near_one = 0;
    double max_other = 0.0;
    for (const auto& mu : r.multipliers)
        if (std::abs(mu - std::complex<double>(1.0, 0.0)) <= kTrivialWindow)
            ++near_one;
        else
            max_other = std::max(max_other, std::abs(mu));

    report(3, near_one == 1 && max_other < 1.0,
           "star limit cycle has exactly one trivial multiplier and is stable",
           fmt(near_one) + " multiplier(s) within " + fmt(kTrivialWindow) +
               " of +1, largest other modulus " + fmt(max_other));
    return m;
}

// 4: master stability curve of the identity-coupled cell.
static MonodromyMatrix criterion_4() {
    FhnParams p;
    IntegratorConfig cfg;
    const MsfCurve curve = msf_sweep(p, -4.0, 4.0, 81, cfg);

    double msf_at_zero = 1e300;
    bool positives_stable = true;
    bool negatives_unstable = true;
    for (const auto& pt : curve.points) {
        if (pt.gamma == 0.0) msf_at_zero = pt.msf;
        if (pt.gamma > 0.0 && (pt.diverged || pt.msf >= 0.0)) positives_stable = false;
        if (pt.gamma < kMsfNegativeGamma && !pt.diverged && pt.max_modulus <= 1.0)
            negatives_unstable = false;
    }

    SystemSpec spec;
    spec.model = ModelKind::FhnSingle;
    const double gamma_probe = 0.506;
    const MonodromyMatrix block =
        monodromy([&](const Vec& x) { return msf_block(x, p, gamma_probe); }, curve.anchor,
                  curve.period, spec, cfg);
    double probe_modulus = 0.0;
    for (const auto& ev : general_eigenvalues(block.matrix))
        probe_modulus = std::max(probe_modulus, std::abs(ev));

    const bool zero_ok = std::abs(msf_at_zero) <= kMsfZeroTol;
    const bool probe_ok = std::abs(probe_modulus - kModulusAtGamma) <= kModulusAtGammaTol;
    report(4, zero_ok && positives_stable && negatives_unstable && probe_ok,
           "master stability curve shape and probe point",
           "msf(0) = " + fmt(msf_at_zero) + " (tol " + fmt(kMsfZeroTol) + "); gamma > 0 all stable: " +
               (positives_stable ? "yes" : "no") + "; gamma < " + fmt(kMsfNegativeGamma) +
               " all unstable: " + (negatives_unstable ? "yes" : "no") + "; modulus at gamma = " +
               fmt(gamma_probe) + " is " + fmt(probe_modulus) + " (want " + fmt(kModulusAtGamma) +
               " ± " + fmt(kModulusAtGammaTol) + ")");
    return block;
}

// 5: seeded phase-jittered star pulls into complete synchronization.
static void criterion_5() {
    SystemSpec spec;
    spec.model = ModelKind::KuramotoStar;
    spec.kuramoto = unit_star(3);
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 60.0;
    cfg.transient = 20.0;
    const Vec x0 = jittered_state(4, 1, std::numbers::pi / 4.0);
    const Trajectory traj = integrate(spec, x0, cfg);
    const SyncVerdict v = detect_sync(traj, 0, kSyncTol);

    const Matrix diffs = phase_differences(
        traj, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    double final_gap = 0.0;
    for (std::size_t c = 0; c < diffs.cols(); ++c)
        final_gap = std::max(final_gap, std::abs(diffs(diffs.rows() - 1, c)));

    const bool ok = v.classification == SyncClass::CompleteSync &&
                    v.convergence_time.has_value() && final_gap <= kSyncTol;
    report(5, ok, "jittered identical star reaches complete synchronization",
           "classification " +
               std::string(v.classification == SyncClass::CompleteSync ? "complete_sync"
                           : v.classification == SyncClass::RemoteSync ? "remote_sync"
                                                                       : "unsynchronized") +
               ", residuals " + fmt(v.peripheral_residual) + "/" + fmt(v.hub_residual) +
               ", final pairwise gap " + fmt(final_gap) + " (tol " + fmt(kSyncTol) + ")" +
               (v.convergence_time ? ", locked at t = " + fmt(*v.convergence_time) : ""));
}

// 6: five-node relaxation-oscillator network at coupling 0.115 synchronizes
// across every pair, adjacent or not.
static void criterion_6() {
    SystemSpec spec;
    spec.model = ModelKind::FhnNetwork;
    spec.graph = five_node_graph();
    spec.coupling = 0.115;
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 300.0;
    cfg.transient = 200.0;
    const Trajectory traj = integrate(spec, jittered_state(10, 2, 1.0), cfg);
    const Vec err = sync_error(traj, {0, 1, 2, 3, 4});
    const double final_err = err.back();
    report(6, final_err < kSyncErrorFinal, "five-node network pairwise state error dies out",
           "final max pairwise distance " + fmt(final_err) + " (tol " + fmt(kSyncErrorFinal) +
               ")");
}

// 7: disc bound certifies the locked star equilibrium, and the discs really
// do contain the spectrum.
static void criterion_7() {
    const Matrix j = kuramoto_reduced_jacobian(Vec(3, kTwoPi), unit_star(3));
    const auto discs = gershgorin_discs(j, GershgorinAxis::Row);
    const bool bound = discs_bound_left_half_plane(discs);

    bool all_inside = true;
    for (const auto& ev : general_eigenvalues(j)) {
        bool inside = false;
        for (const auto& d : discs)
            if (std::abs(ev - d.center) <= d.radius + kEigInsideSlack) inside = true;
        all_inside = all_inside && inside;
    }

    double worst_edge = -1e300;
    for (const auto& d : discs) worst_edge = std::max(worst_edge, d.center.real() + d.radius);
    report(7, bound && all_inside, "Gershgorin discs certify the locked state",
           "max Re(center) + radius = " + fmt(worst_edge) + ", eigenvalues inside the union: " +
               (all_inside ? "yes" : "no"));
}

// 8: bridge oscillator frequency and saturation amplitude.
static void criterion_8() {
    SystemSpec spec;
    spec.model = ModelKind::WienBridge;
    spec.wien.omega0 = 1000.0;
    spec.wien.g0 = 3.2;
    spec.wien.k_nl = 1.0;
    IntegratorConfig cfg;
    cfg.dt = 1e-6;
    cfg.t_end = 0.3;
    cfg.transient = 0.2;
    const Trajectory traj = integrate(spec, {0.1, 0.0}, cfg);
    const PeriodEstimate est = estimate_period(traj, 0);
    const double freq = 1.0 / est.period;
    const double f0 = wien_natural_frequency(spec.wien);

    double lo = 1e300, hi = -1e300;
    for (std::size_t k = traj.first_post_transient_index(); k < traj.samples(); ++k) {
        lo = std::min(lo, traj.states(k, 0));
        hi = std::max(hi, traj.states(k, 0));
    }
    const double amplitude = 0.5 * (hi - lo);
    const double a0 = wien_predicted_amplitude(spec.wien);

    const bool freq_ok = std::abs(freq - f0) <= kFreqRelTol * f0;
    const bool amp_ok = std::abs(amplitude - a0) <= kAmpRelTol * a0;
    report(8, freq_ok && amp_ok, "bridge oscillator frequency and amplitude",
           "frequency " + fmt(freq) + " Hz vs " + fmt(f0) + " (rel tol " + fmt(kFreqRelTol) +
               "), amplitude " + fmt(amplitude) + " vs " + fmt(a0) + " (rel tol " +
               fmt(kAmpRelTol) + ")");
}

// 9: the numerical substrate — integrator order, Liouville consistency of
// every monodromy above, analytic Jacobians vs finite differences, and exact
// cancellation of diffusive coupling on the synchronous manifold.
static void criterion_9(const std::vector<MonodromyMatrix>& monodromies) {
    // (a) RK4 order on a pure harmonic run
    SystemSpec harm;
    harm.model = ModelKind::WienBridge;
    harm.wien.omega0 = 2.0;
    harm.wien.g0 = 3.0;
    harm.wien.k_nl = 0.0;
    const auto final_error = [&](double dt) {
        IntegratorConfig c;
        c.dt = dt;
        c.t_end = 5.0;
        c.transient = 0.0;
        const Trajectory t = integrate(harm, {1.0, 0.0}, c);
        return std::abs(t.states(t.samples() - 1, 0) - std::cos(2.0 * t.times.back()));
    };
    const double order = std::log2(final_error(0.02) / final_error(0.01));
    const bool order_ok = order >= kRk4OrderFloor;

    // (b) determinant vs trace integral for every monodromy this gate computed
    double worst_liouville = 0.0;
    for (const auto& m : monodromies)
        worst_liouville = std::max(worst_liouville, liouville_rel_error(m));
    // plus the isolated cell itself
    {
        SystemSpec cell;
        cell.model = ModelKind::FhnSingle;
        IntegratorConfig cfg;
        const LimitCycle cyc = settle_to_limit_cycle(cell, {0.0, 0.0}, cfg);
        const MonodromyMatrix m =
            monodromy([&](const Vec& x) { return fhn_jacobian(x, cell.fhn); }, cyc.anchor,
                      cyc.period, cell, cfg);
        worst_liouville = std::max(worst_liouville, liouville_rel_error(m));
    }
    const bool liouville_ok = worst_liouville <= kLiouvilleTol;

    // (c) analytic Jacobians against central differences, 50 random states each
    KuramotoStarParams kp;
    kp.omega_hub = 1.3;
    kp.omega_peripheral = 0.9;
    kp.incoming = {1.2, 0.7, 0.9};
    kp.outgoing = {0.8, 1.1, 0.6};
    FhnParams fp;
    StarCoupling sc;
    sc.incoming = {0.115, 0.2};
    sc.outgoing = {0.115, 0.05};
    const Graph g5 = five_node_graph();
    WienParams wp;
    wp.omega0 = 10.0;
    wp.g0 = 3.2;
    wp.k_nl = 1.0;
    const double gamma = 0.4;

    double worst_fd = 0.0;
    worst_fd = std::max(worst_fd, max_fd_gap([&](const Vec& x) { return kuramoto_reduced_rhs(x, kp); },
                                             [&](const Vec& x) { return kuramoto_reduced_jacobian(x, kp); },
                                             3, 101, -3.0, 3.0));
    worst_fd = std::max(worst_fd, max_fd_gap([&](const Vec& x) { return fhn_rhs(x, fp); },
                                             [&](const Vec& x) { return fhn_jacobian(x, fp); },
                                             2, 102, -2.0, 2.0));
    worst_fd = std::max(worst_fd, max_fd_gap([&](const Vec& x) { return fhn_star_rhs(x, fp, sc); },
                                             [&](const Vec& x) { return fhn_star_variational(x, fp, sc); },
                                             6, 103, -2.0, 2.0));
    worst_fd = std::max(worst_fd,
                        max_fd_gap([&](const Vec& x) { return fhn_network_rhs(x, fp, g5, 0.115); },
                                   [&](const Vec& x) { return fhn_network_variational(x, fp, g5, 0.115); },
                                   10, 104, -2.0, 2.0));
    worst_fd = std::max(worst_fd, max_fd_gap(
                                      [&](const Vec& x) {
                                          Vec f = fhn_rhs(x, fp);
                                          for (std::size_t i = 0; i < f.size(); ++i)
                                              f[i] -= gamma * x[i];
                                          return f;
                                      },
                                      [&](const Vec& x) { return msf_block(x, fp, gamma); }, 2,
                                      105, -2.0, 2.0));
    worst_fd = std::max(worst_fd, max_fd_gap([&](const Vec& x) { return wien_rhs(x, wp); },
                                             [&](const Vec& x) { return wien_jacobian(x, wp); },
                                             2, 106, -2.0, 2.0));
    const bool fd_ok = worst_fd <= kFdJacobianTol;

    // (d) coupling annihilates exactly on the synchronous manifold
    const Vec cell_state = {1.3, -0.4};
    const Vec cell_rhs = fhn_rhs(cell_state, fp);
    Vec star_state(6), net_state(10);
    for (int n = 0; n < 3; ++n) {
        star_state[2 * n] = cell_state[0];
        star_state[2 * n + 1] = cell_state[1];
    }
    for (int n = 0; n < 5; ++n) {
        net_state[2 * n] = cell_state[0];
        net_state[2 * n + 1] = cell_state[1];
    }
    const Vec star_rhs = fhn_star_rhs(star_state, fp, sc);
    const Vec net_rhs = fhn_network_rhs(net_state, fp, g5, 0.115);
    double worst_annihilation = 0.0;
    for (int n = 0; n < 3; ++n)
        for (int c = 0; c < 2; ++c)
            worst_annihilation =
                std::max(worst_annihilation, std::abs(star_rhs[2 * n + c] - cell_rhs[c]));
    for (int n = 0; n < 5; ++n)
        for (int c = 0; c < 2; ++c)
            worst_annihilation =
                std::max(worst_annihilation, std::abs(net_rhs[2 * n + c] - cell_rhs[c]));
    const bool annihilation_ok = worst_annihilation <= kAnnihilationTol;

    report(9, order_ok && liouville_ok && fd_ok && annihilation_ok,
           "numerical substrate properties",
           "RK4 order " + fmt(order) + " (floor " + fmt(kRk4OrderFloor) + "), worst Liouville " +
               fmt(worst_liouville) + " (tol " + fmt(kLiouvilleTol) + "), worst FD gap " +
               fmt(worst_fd) + " (tol " + fmt(kFdJacobianTol) + "), coupling residue " +
               fmt(worst_annihilation) + " (tol " + fmt(kAnnihilationTol) + ")");
}

int main() {
    std::vector<MonodromyMatrix> monodromies;
    criterion_1();
    criterion_2();
    monodromies.push_back(criterion_3());
    monodromies.push_back(criterion_4());
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9(monodromies);
    std::printf("%d/9 criteria passed\n", 9 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
