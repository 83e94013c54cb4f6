#include "chua/circuitmap.hpp"

#include <cmath>

#include "chua/dfan.hpp"

namespace chua {

void DiodeSpec::validate() const {
    if (!(i_s > 0.0)) throw std::invalid_argument("DiodeSpec: i_s must be positive");
    if (!(eta >= 1.0)) throw std::invalid_argument("DiodeSpec: eta must be >= 1");
    if (m < 1 || l < 1) throw std::invalid_argument("DiodeSpec: m and l must be >= 1");
    if (!(v_T > 0.0)) throw std::invalid_argument("DiodeSpec: v_T must be positive");
}

void CircuitSpec::validate() const {
    if (!(R > 0.0) || !(C1 > 0.0) || !(C2 > 0.0) || !(L > 0.0))
        throw std::invalid_argument("CircuitSpec: R, C1, C2, L must be positive");
    diode.validate();
}

double shockley_current(double v_d, const DiodeSpec& d) {
    if (!std::isfinite(v_d)) throw std::invalid_argument("shockley_current: v_d must be finite");
    d.validate();
    const double arg = v_d / (d.m * d.eta * d.v_T);
    if (arg > kSinhOverflowLimit)
        throw DivergedError("shockley_current: exponent overflow");
    return d.l * d.i_s * std::expm1(arg);
}

DimensionlessMap dimensionless_from_circuit(const CircuitSpec& c) {
    c.validate();
    const double B = c.diode.m * c.diode.eta * c.diode.v_T;
    const double alpha = c.C2 / c.C1;
    const double beta = c.R * c.R * c.C2 / c.L;
    const double g0 = c.R * c.g_p;
    const double I0 = 2.0 * c.kappa * c.R * c.diode.l * c.diode.i_s / B;
    return DimensionlessMap{ChuaParams(alpha, beta, g0, I0), B, c.R * c.C2};
}

PredictedFrequencies predicted_frequencies_hz(const ChuaParams& p, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("predicted_frequencies_hz: tau must be positive");
    const InterceptionSet ic = interception_points(p);
    PredictedFrequencies f;
    if (ic.exists[2]) f.f2 = ic.omega[2] / (2.0 * M_PI * tau);
    if (ic.exists[3]) f.f3 = ic.omega[3] / (2.0 * M_PI * tau);
    return f;
}

}  // namespace chua
