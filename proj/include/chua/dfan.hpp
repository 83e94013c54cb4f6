#pragma once

// Describing-function and Nyquist machinery for the hyperbolic Chua circuit:
// the passive-filter frequency response G(jw), the amplitude-dependent gain
// N(X) of the nonlinearity, the real-axis interception points p2/p3 with
// their frequencies w2/w3, limit-cycle prediction, and the qualitative
// region classifier over (g0+I0).

#include <complex>
#include <string>
#include <vector>

#include "chua/model.hpp"

namespace chua {

struct InterceptionSet {
    // Index 0 is the w = +-infinity endpoint (sentinel, never used in
    // arithmetic), index 1 is w = 0, indices 2 and 3 are the interior
    // real-axis crossings.
    std::array<double, 4> omega{};
    std::array<double, 4> p{};
    std::array<bool, 4> exists{};

    [[nodiscard]] double inv_p2() const { return 1.0 / p[2]; }
    [[nodiscard]] double inv_p3() const { return 1.0 / p[3]; }
};

/// G(jw) for G(s) = -alpha*(s^2+s+beta)/(s^3+2*gamma*s^2+beta*s+alpha*beta).
/// Throws std::domain_error if jw hits a pole (marginal parameter sets only).
std::complex<double> transfer_function(double omega, const ChuaParams& p);

/// Closed-form interception frequencies/points. p2/p3 entries exist iff
/// gamma^2 >= beta; at equality the pair degenerates to a double point.
InterceptionSet interception_points(const ChuaParams& p);

/// Describing function of the nonlinearity, summed as the power series
///   N(X) = -g0 - I0 * [1 + sum_j prod_i((2i+1)/(2i+2)) X^(2j)/(2j+1)!]
/// to relative term 1e-16 (hard cap 200 terms). Requires X >= 0; throws
/// DivergedError once the series would overflow (X > 700).
double describing_function(double X, const ChuaParams& p);

/// Same gain through the closed form N(X) = -g0 - I0*2*I1(X)/X (modified
/// Bessel function). Kept as an independent route for cross-checks.
double describing_function_bessel(double X, const ChuaParams& p);

/// Geometric locus -1/N(X). Throws std::domain_error at a root of N (the
/// locus discontinuity that appears when (g0+I0)*I0 < 0).
double locus_inverse(double X, const ChuaParams& p);

struct PredictedCycle {
    double amplitude;  ///< oscillation amplitude X > 0
    double omega;      ///< w2 or w3
    bool stable;
    int point_index;   ///< 2 or 3: which interception point the cycle sits on
};

/// Harmonic-balance limit cycles: amplitudes where the locus -1/N(X) passes
/// through p2 or p3, with stability decided by whether the locus exits into
/// the stable side as X grows through the root. Requires gamma^2 > beta.
std::vector<PredictedCycle> predicted_limit_cycles(const ChuaParams& p);

enum class Behavior : unsigned {
    Origin = 1u << 0,
    EquilibriaPm = 1u << 1,
    CycleOmega2ToChaos = 1u << 2,
    CycleOmega3 = 1u << 3,
    Unstable = 1u << 4,
};

struct RegionLabel {
    enum class Kind { Labels, Boundary, OutOfRange };
    Kind kind = Kind::Labels;
    unsigned behaviors = 0;  ///< Behavior bitmask; non-empty when kind == Labels

    [[nodiscard]] bool has(Behavior b) const { return (behaviors & static_cast<unsigned>(b)) != 0; }
    [[nodiscard]] std::string to_string() const;

    bool operator==(const RegionLabel&) const = default;

    static RegionLabel labels(unsigned mask) { return RegionLabel{Kind::Labels, mask}; }
    static RegionLabel boundary() { return RegionLabel{Kind::Boundary, 0}; }
    static RegionLabel out_of_range() { return RegionLabel{Kind::OutOfRange, 0}; }
};

/// Qualitative dynamics over (g0+I0), split by the sign regime (g0+I0)*I0,
/// with interval boundaries at -1, 1/p2, 1/p3 and 0. Exact boundary hits
/// return the Boundary marker; parameters outside alpha < beta < gamma^2
/// return OutOfRange rather than extrapolating.
RegionLabel classify_region(const ChuaParams& p);

}  // namespace chua
