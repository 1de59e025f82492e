#pragma once

#include <array>

#include "netsync/graph.hpp"
#include "netsync/linalg.hpp"

namespace netsync {

enum class ModelKind {
    KuramotoStar,    // phases, hub node 0 plus n peripherals
    KuramotoReduced, // phase differences hub minus peripheral
    FhnSingle,       // one planar relaxation oscillator
    FhnStar,         // hub + 2 peripherals, identity coupling on both channels
    FhnNetwork,      // Laplacian-coupled planar oscillators on an arbitrary graph
    WienBridge,      // RC bridge oscillator with cubic-saturating gain
};

struct KuramotoStarParams {
    double omega_hub = 1.0;
    double omega_peripheral = 1.0;
    Vec incoming; // peripheral -> hub coupling strengths, one per peripheral
    Vec outgoing; // hub -> peripheral coupling strengths, one per peripheral

    int n_peripheral() const { return static_cast<int>(incoming.size()); }
    void validate() const;
};

struct FhnParams {
    double a = 3.0;
    double b = 2.0;
    double c = 1.0;
    double d = 0.2799991;
    double drive = 2.1; // constant external current
    void validate() const;
};

struct WienParams {
    double omega0 = 1000.0; // rad/s, = 1/(RC)
    double g0 = 3.2;        // small-signal amplifier gain
    double k_nl = 1.0;      // cubic saturation coefficient
    void validate() const;

    /// omega0 and k_nl from board-level device values:
    /// omega0 = 1/(RC), k_nl = 8 Is Rf2 / (9 (n VT)^3).
    static WienParams from_device(double resistance, double capacitance,
                                  double saturation_current, double feedback_resistance,
                                  double ideality, double thermal_voltage, double g0);
};

struct StarCoupling {
    std::array<double, 2> incoming{0.0, 0.0}; // peripheral k -> hub
    std::array<double, 2> outgoing{0.0, 0.0}; // hub -> peripheral k
};

/// Everything needed to evaluate one model's vector field. Plain members
/// rather than a variant: only the fields relevant to `model` are read.
struct SystemSpec {
    ModelKind model = ModelKind::FhnSingle;
    KuramotoStarParams kuramoto;
    FhnParams fhn;
    WienParams wien;
    StarCoupling star;   // FhnStar only
    Graph graph;         // FhnNetwork only
    double coupling = 0; // FhnNetwork: phi

    int state_dim() const;
    int node_count() const; // oscillators in the network sense
    int node_dim() const;   // state components per oscillator (1 or 2)
    void validate() const;
};

Vec system_rhs(const SystemSpec& spec, const Vec& state);

// Per-model vector fields and linearizations.

/// Full star: state = (theta_hub, theta_1..theta_n).
Vec kuramoto_star_rhs(const Vec& theta, const KuramotoStarParams& p);

/// Difference variables x_k = theta_hub - theta_k:
/// dx_k/dt = (w0 - w) - sum_j incoming_j sin(x_j) - outgoing_k sin(x_k).
Vec kuramoto_reduced_rhs(const Vec& x, const KuramotoStarParams& p);
Matrix kuramoto_reduced_jacobian(const Vec& x, const KuramotoStarParams& p);

/// state = (v, w).
Vec fhn_rhs(const Vec& vw, const FhnParams& p);
Matrix fhn_jacobian(const Vec& vw, const FhnParams& p);

/// state = (v_H, w_H, v_1, w_1, v_2, w_2); both channels diffusively coupled.
Vec fhn_star_rhs(const Vec& s, const FhnParams& p, const StarCoupling& k);
Matrix fhn_star_variational(const Vec& s, const FhnParams& p, const StarCoupling& k);

/// state = (v_0, w_0, v_1, w_1, ...); coupling term is -phi (L state)
/// applied to both channels.
Vec fhn_network_rhs(const Vec& s, const FhnParams& p, const Graph& g, double phi);
Matrix fhn_network_variational(const Vec& s, const FhnParams& p, const Graph& g, double phi);

/// Transverse-mode block: isolated-cell Jacobian shifted by -gamma on the
/// diagonal (identity inner coupling).
Matrix msf_block(const Vec& vw, const FhnParams& p, double gamma);

/// state = (v, u = dv/dt):
/// du/dt = -omega0 ((3 - g0) + k_nl v^2) u - omega0^2 v.
Vec wien_rhs(const Vec& vu, const WienParams& p);
Matrix wien_jacobian(const Vec& vu, const WienParams& p);

/// Energy-balance steady amplitude 2 sqrt((g0 - 3)/k_nl); requires g0 > 3.
double wien_predicted_amplitude(const WienParams& p);
/// Small-signal oscillation frequency omega0 / (2 pi), in Hz.
double wien_natural_frequency(const WienParams& p);

} // namespace netsync
