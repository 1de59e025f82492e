#include "netsync/models.hpp"

#include <cmath>
#include <numbers>

#include "netsync/errors.hpp"

namespace netsync {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw InvalidArgument(msg);
}

bool all_finite(const Vec& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

} // namespace

void KuramotoStarParams::validate() const {
    require(!incoming.empty(), "kuramoto: need at least one peripheral");
    require(incoming.size() == outgoing.size(),
            "kuramoto: incoming/outgoing coupling lists must have equal length");
    require(std::isfinite(omega_hub) && std::isfinite(omega_peripheral) && all_finite(incoming) &&
                all_finite(outgoing),
            "kuramoto: parameters must be finite");
}

void FhnParams::validate() const {
    require(std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && std::isfinite(d) &&
                std::isfinite(drive),
            "fhn: parameters must be finite");
    require(d >= 0.0, "fhn: recovery rate d must be nonnegative");
}

void WienParams::validate() const {
    require(std::isfinite(omega0) && std::isfinite(g0) && std::isfinite(k_nl),
            "wien: parameters must be finite");
    require(omega0 > 0.0, "wien: omega0 must be positive");
    require(k_nl >= 0.0, "wien: k_nl must be nonnegative");
}

WienParams WienParams::from_device(double resistance, double capacitance,
                                   double saturation_current, double feedback_resistance,
                                   double ideality, double thermal_voltage, double g0) {
    require(resistance > 0.0 && capacitance > 0.0, "wien: RC values must be positive");
    require(ideality > 0.0 && thermal_voltage > 0.0, "wien: diode parameters must be positive");
    WienParams p;
    p.omega0 = 1.0 / (resistance * capacitance);
    const double nvt = ideality * thermal_voltage;
    p.k_nl = 8.0 * saturation_current * feedback_resistance / (9.0 * nvt * nvt * nvt);
    p.g0 = g0;
    p.validate();
    return p;
}

int SystemSpec::state_dim() const {
    switch (model) {
        case ModelKind::KuramotoStar: return kuramoto.n_peripheral() + 1;
        case ModelKind::KuramotoReduced: return kuramoto.n_peripheral();
        case ModelKind::FhnSingle: return 2;
        case ModelKind::FhnStar: return 6;
        case ModelKind::FhnNetwork: return 2 * graph.n_nodes;
        case ModelKind::WienBridge: return 2;
    }
    throw InvalidArgument("state_dim: unknown model");
}

int SystemSpec::node_count() const {
    switch (model) {
        case ModelKind::KuramotoStar: return kuramoto.n_peripheral() + 1;
        case ModelKind::KuramotoReduced: return kuramoto.n_peripheral();
        case ModelKind::FhnSingle: return 1;
        case ModelKind::FhnStar: return 3;
        case ModelKind::FhnNetwork: return graph.n_nodes;
        case ModelKind::WienBridge: return 1;
    }
    throw InvalidArgument("node_count: unknown model");
}

int SystemSpec::node_dim() const {
    switch (model) {
        case ModelKind::KuramotoStar:
        case ModelKind::KuramotoReduced: return 1;
        default: return 2;
    }
}

void SystemSpec::validate() const {
    switch (model) {
        case ModelKind::KuramotoStar:
        case ModelKind::KuramotoReduced: kuramoto.validate(); break;
        case ModelKind::FhnSingle: fhn.validate(); break;
        case ModelKind::FhnStar: fhn.validate(); break;
        case ModelKind::FhnNetwork:
            fhn.validate();
            require(graph.n_nodes >= 1, "fhn_network: graph must have nodes");
            require(std::isfinite(coupling), "fhn_network: coupling must be finite");
            break;
        case ModelKind::WienBridge: wien.validate(); break;
    }
}

Vec system_rhs(const SystemSpec& spec, const Vec& state) {
    switch (spec.model) {
        case ModelKind::KuramotoStar: return kuramoto_star_rhs(state, spec.kuramoto);
        case ModelKind::KuramotoReduced: return kuramoto_reduced_rhs(state, spec.kuramoto);
        case ModelKind::FhnSingle: return fhn_rhs(state, spec.fhn);
        case ModelKind::FhnStar: return fhn_star_rhs(state, spec.fhn, spec.star);
        case ModelKind::FhnNetwork:
            return fhn_network_rhs(state, spec.fhn, spec.graph, spec.coupling);
        case ModelKind::WienBridge: return wien_rhs(state, spec.wien);
    }
    throw InvalidArgument("system_rhs: unknown model");
}

Vec kuramoto_star_rhs(const Vec& theta, const KuramotoStarParams& p) {
    const int n = p.n_peripheral();
    require(static_cast<int>(theta.size()) == n + 1,
            "kuramoto_star_rhs: state length must be n_peripheral + 1");
    Vec dt(n + 1);
    double hub = p.omega_hub;
    for (int k = 0; k < n; ++k) hub += p.incoming[k] * std::sin(theta[k + 1] - theta[0]);
    dt[0] = hub;
    for (int k = 0; k < n; ++k)
        dt[k + 1] = p.omega_peripheral + p.outgoing[k] * std::sin(theta[0] - theta[k + 1]);
    return dt;
}

Vec kuramoto_reduced_rhs(const Vec& x, const KuramotoStarParams& p) {
    const int n = p.n_peripheral();
    require(static_cast<int>(x.size()) == n, "kuramoto_reduced_rhs: state length must be n_peripheral");
    double common = p.omega_hub - p.omega_peripheral;
    for (int j = 0; j < n; ++j) common -= p.incoming[j] * std::sin(x[j]);
    Vec dx(n);
    for (int k = 0; k < n; ++k) dx[k] = common - p.outgoing[k] * std::sin(x[k]);
    return dx;
}

Matrix kuramoto_reduced_jacobian(const Vec& x, const KuramotoStarParams& p) {
    const int n = p.n_peripheral();
    require(static_cast<int>(x.size()) == n,
            "kuramoto_reduced_jacobian: state length must be n_peripheral");
    Matrix j(n, n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            j(k, l) = -p.incoming[l] * std::cos(x[l]);
            if (k == l) j(k, l) -= p.outgoing[k] * std::cos(x[k]);
        }
    return j;
}

namespace {

inline double fhn_vdot(double v, double w, const FhnParams& p) {
    return p.c * (v - w - v * v * v / 3.0) + p.drive;
}
inline double fhn_wdot(double v, double w, const FhnParams& p) {
    return p.d * (p.a + p.b * v - w);
}

} // namespace

Vec fhn_rhs(const Vec& vw, const FhnParams& p) {
    require(vw.size() == 2, "fhn_rhs: state must be (v, w)");
    return {fhn_vdot(vw[0], vw[1], p), fhn_wdot(vw[0], vw[1], p)};
}

Matrix fhn_jacobian(const Vec& vw, const FhnParams& p) {
    require(vw.size() == 2, "fhn_jacobian: state must be (v, w)");
    Matrix j(2, 2);
    j(0, 0) = p.c * (1.0 - vw[0] * vw[0]);
    j(0, 1) = -p.c;
    j(1, 0) = p.d * p.b;
    j(1, 1) = -p.d;
    return j;
}

Vec fhn_star_rhs(const Vec& s, const FhnParams& p, const StarCoupling& k) {
    require(s.size() == 6, "fhn_star_rhs: state must be (vH, wH, v1, w1, v2, w2)");
    const double vH = s[0], wH = s[1];
    Vec ds(6);
    ds[0] = fhn_vdot(vH, wH, p) + k.incoming[0] * (s[2] - vH) + k.incoming[1] * (s[4] - vH);
    ds[1] = fhn_wdot(vH, wH, p) + k.incoming[0] * (s[3] - wH) + k.incoming[1] * (s[5] - wH);
    for (int i = 0; i < 2; ++i) {
        const double v = s[2 + 2 * i], w = s[3 + 2 * i];
        ds[2 + 2 * i] = fhn_vdot(v, w, p) + k.outgoing[i] * (vH - v);
        ds[3 + 2 * i] = fhn_wdot(v, w, p) + k.outgoing[i] * (wH - w);
    }
    return ds;
}

Matrix fhn_star_variational(const Vec& s, const FhnParams& p, const StarCoupling& k) {
    require(s.size() == 6, "fhn_star_variational: state must be (vH, wH, v1, w1, v2, w2)");
    const double p1 = k.incoming[0], p2 = k.incoming[1];
    Matrix m(6, 6);
    // hub rows: local Jacobian minus the total coupling drain
    m(0, 0) = p.c * (1.0 - s[0] * s[0]) - p1 - p2;
    m(0, 1) = -p.c;
    m(0, 2) = p1;
    m(0, 4) = p2;
    m(1, 0) = p.d * p.b;
    m(1, 1) = -p.d - p1 - p2;
    m(1, 3) = p1;
    m(1, 5) = p2;
    for (int i = 0; i < 2; ++i) {
        const double A = k.outgoing[i];
        const int r = 2 + 2 * i;
        m(r, 0) = A;
        m(r, r) = p.c * (1.0 - s[r] * s[r]) - A;
        m(r, r + 1) = -p.c;
        m(r + 1, 1) = A;
        m(r + 1, r) = p.d * p.b;
        m(r + 1, r + 1) = -p.d - A;
    }
    return m;
}

Vec fhn_network_rhs(const Vec& s, const FhnParams& p, const Graph& g, double phi) {
    const int n = g.n_nodes;
    require(static_cast<int>(s.size()) == 2 * n, "fhn_network_rhs: state length must be 2 n_nodes");
    Vec ds(2 * n);
    for (int i = 0; i < n; ++i) {
        ds[2 * i] = fhn_vdot(s[2 * i], s[2 * i + 1], p);
        ds[2 * i + 1] = fhn_wdot(s[2 * i], s[2 * i + 1], p);
    }
    for (const auto& [i, j] : g.edges) {
        for (int ch = 0; ch < 2; ++ch) {
            const double diff = s[2 * j + ch] - s[2 * i + ch];
            ds[2 * i + ch] += phi * diff;
            ds[2 * j + ch] -= phi * diff;
        }
    }
    return ds;
}

Matrix fhn_network_variational(const Vec& s, const FhnParams& p, const Graph& g, double phi) {
    const int n = g.n_nodes;
    require(static_cast<int>(s.size()) == 2 * n,
            "fhn_network_variational: state length must be 2 n_nodes");
    Matrix m(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        m(2 * i, 2 * i) = p.c * (1.0 - s[2 * i] * s[2 * i]);
        m(2 * i, 2 * i + 1) = -p.c;
        m(2 * i + 1, 2 * i) = p.d * p.b;
        m(2 * i + 1, 2 * i + 1) = -p.d;
    }
    for (const auto& [i, j] : g.edges)
        for (int ch = 0; ch < 2; ++ch) {
            m(2 * i + ch, 2 * j + ch) += phi;
            m(2 * i + ch, 2 * i + ch) -= phi;
            m(2 * j + ch, 2 * i + ch) += phi;
            m(2 * j + ch, 2 * j + ch) -= phi;
        }
    return m;
}

Matrix msf_block(const Vec& vw, const FhnParams& p, double gamma) {
    Matrix m = fhn_jacobian(vw, p);
    m(0, 0) -= gamma;
    m(1, 1) -= gamma;
    return m;
}

Vec wien_rhs(const Vec& vu, const WienParams& p) {
    require(vu.size() == 2, "wien_rhs: state must be (v, dv/dt)");
    const double v = vu[0], u = vu[1];
    const double damping = p.omega0 * ((3.0 - p.g0) + p.k_nl * v * v);
    return {u, -damping * u - p.omega0 * p.omega0 * v};
}

Matrix wien_jacobian(const Vec& vu, const WienParams& p) {
    require(vu.size() == 2, "wien_jacobian: state must be (v, dv/dt)");
    const double v = vu[0], u = vu[1];
    Matrix j(2, 2);
    j(0, 1) = 1.0;
    j(1, 0) = -p.omega0 * p.omega0 - 2.0 * p.omega0 * p.k_nl * v * u;
    j(1, 1) = -p.omega0 * ((3.0 - p.g0) + p.k_nl * v * v);
    return j;
}

double wien_predicted_amplitude(const WienParams& p) {
    require(p.g0 > 3.0, "wien_predicted_amplitude: needs g0 > 3 (self-starting regime)");
    require(p.k_nl > 0.0, "wien_predicted_amplitude: needs k_nl > 0");
    return 2.0 * std::sqrt((p.g0 - 3.0) / p.k_nl);
}

double wien_natural_frequency(const WienParams& p) {
    return p.omega0 / (2.0 * std::numbers::pi);
}

} // namespace netsync
