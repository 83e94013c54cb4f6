#pragma once

// Quantitative attractor characterization: Lyapunov spectrum via the tangent
// flow with periodic reorthonormalization, dominant crossing frequency, and
// the qualitative classifier used by parameter sweeps.

#include <span>
#include <string>

#include "chua/model.hpp"
#include "chua/sim.hpp"

namespace chua {

struct LyapunovResult {
    std::array<double, 3> exponents{};  ///< sorted descending, per unit time
    bool converged = false;
    double t_used = 0.0;          ///< averaging window length
    double trace_average = 0.0;   ///< time average of trace(J) over the same window
    // Estimate over the second half of the window only. The classifier reads
    // this one: it sheds slow transients (e.g. the crawl away from a freshly
    // destabilized equilibrium) that bias the full-window average.
    std::array<double, 3> late_exponents{};
    bool late_valid = false;
};

/// Benettin-style spectrum: the state is integrated jointly with an
/// orthonormal tangent frame evolved by the Jacobian, reorthonormalized
/// every time unit; exponents are averaged log stretch factors after the
/// transient. Divergence propagates as DivergedError; a run that fails the
/// self-consistency checks comes back with converged = false.
LyapunovResult lyapunov_spectrum(const State& s0, const ChuaParams& p,
                                 const IntegratorSettings& cfg);

enum class AttractorType { FixedPoint, Periodic, Chaotic, Diverged, Undecided };

struct AttractorClass {
    AttractorType type = AttractorType::Undecided;
    int period = 0;  ///< crossings per period per direction when Periodic

    bool operator==(const AttractorClass&) const = default;
    [[nodiscard]] std::string to_string() const;
};

struct ClassifierThresholds {
    double chaos_lyap = 0.01;        ///< Chaotic when lambda_1 exceeds this
    double periodic_lyap = 0.005;    ///< Periodic requires lambda_1 at or below this
    double cluster_radius = 1e-3;    ///< crossing x-value clustering radius
    double fixed_point_eps = 1e-6;   ///< proximity to an equilibrium
};

/// Label one run. Divergence wins; then proximity of the final state to an
/// equilibrium; then the Lyapunov thresholds with crossing-value clustering.
/// The dead zone between periodic_lyap and chaos_lyap maps to Undecided.
AttractorClass classify_attractor(const PoincareResult& run, const LyapunovResult& lyap,
                                  const ChuaParams& p, const ClassifierThresholds& th = {});

/// 2*pi over the mean same-direction crossing interval. Requires at least
/// four crossings in one direction.
double dominant_frequency(std::span<const PoincareCrossing> crossings);

struct PointDiagnostics {
    PoincareResult poincare;
    LyapunovResult lyapunov;
    AttractorClass label;
};

/// Sweep workhorse: one extended integration produces section crossings and
/// the Lyapunov spectrum together, then classifies. Divergence is folded
/// into the label instead of escaping as an exception.
PointDiagnostics analyze_point(const State& s0, const ChuaParams& p,
                               const IntegratorSettings& cfg, std::size_t max_crossings,
                               const ClassifierThresholds& th = {});

}  // namespace chua
