#pragma once

// Bridge between physical circuit values and the dimensionless model:
// Shockley diode characteristic, breakpoint voltage B = m*eta*v_T, scale
// factors, and predicted laboratory frequencies for w2/w3.

#include <optional>

#include "chua/model.hpp"

namespace chua {

struct DiodeSpec {
    double i_s;          ///< reverse current, amperes (> 0)
    double eta;          ///< emission coefficient (>= 1)
    int m = 1;           ///< series-connected junctions
    int l = 1;           ///< parallel branches
    double v_T = 0.026;  ///< thermal voltage, volts

    void validate() const;
};

struct CircuitSpec {
    double R;    ///< ohms
    double C1;   ///< farads
    double C2;   ///< farads
    double L;    ///< henries
    double g_p;  ///< parallel conductance, siemens (negative for a NIC)
    // Gain of the active converter wrapped around the diode pair; 1 for a
    // passive pair, negative when the NIC inverts the sinh branch. The
    // source's printed NIC ratio is ambiguous (R2/R1 vs R1/R2), so the gain
    // is an explicit input instead of a derived quantity.
    double kappa = 1.0;
    DiodeSpec diode;

    void validate() const;
};

struct DimensionlessMap {
    ChuaParams params;
    double B;    ///< breakpoint voltage, volts: x = v1/B, y = v2/B
    double tau;  ///< time scale R*C2, seconds: z = R*i_L/B
};

/// Shockley current l*i_s*(exp(v_d/(m*eta*v_T)) - 1) for the series/parallel
/// junction stack. Exponent overflow raises DivergedError.
double shockley_current(double v_d, const DiodeSpec& d);

/// alpha = C2/C1, beta = R^2*C2/L, g0 = R*g_p, I0 = 2*kappa*R*l*i_s/B,
/// B = m*eta*v_T, tau = R*C2.
DimensionlessMap dimensionless_from_circuit(const CircuitSpec& c);

struct PredictedFrequencies {
    std::optional<double> f2;  ///< hertz; absent when w2 does not exist
    std::optional<double> f3;
};

/// f_i = w_i / (2*pi*tau) from the interception frequencies.
PredictedFrequencies predicted_frequencies_hz(const ChuaParams& p, double tau);

}  // namespace chua
