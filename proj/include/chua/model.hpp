#pragma once

// Dimensionless Chua circuit with exponential-hyperbolic diode characteristic.
//
// State equations (time scaled by tau = R*C2, voltages by the breakpoint B):
//
//     x' = alpha * (-x + y - w(x))
//     y' = x - y + z
//     z' = -beta * y
//
// where w(x) = g0*x + I0*sinh(x) is the dimensionless current drawn by the
// Chua diode (parallel conductance g0 plus an antiparallel diode pair).
// The signed source characteristic u(x) = -w(x), the current the active
// element injects into the C1 node, is exposed as nonlinearity_u.

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace chua {

/// Thrown when sinh/cosh would overflow double range; distinguishes model
/// blow-up from silent arithmetic infinities.
struct DivergedError : std::runtime_error {
    explicit DivergedError(const std::string& what) : std::runtime_error(what) {}
};

/// Argument magnitude beyond which sinh/cosh are treated as overflow.
inline constexpr double kSinhOverflowLimit = 700.0;

/// Once |x| passes this bound with I0 != 0, the diode current dwarfs every
/// linear term and the trajectory cannot return; integrators treat it as
/// divergence. Catching the runaway here matters because the sinh stiffness
/// kills the adaptive step long before the norm-based radius would trigger.
inline constexpr double kRunawayX = 40.0;

/// A step-size underflow with |x| beyond this is the sinh runaway seen from
/// the controller's side (the local rate alpha*|I0|*cosh(x) outruns double
/// time resolution); reported as divergence, not stiffness.
inline constexpr double kStiffEscapeX = 20.0;

struct ChuaParams {
    double alpha;  ///< C2/C1, > 0
    double beta;   ///< R^2*C2/L, > 0
    double g0;     ///< R*g_p (may be negative for NIC-realized conductance)
    double I0;     ///< 2*kappa*R*l*i_s/B, current scale of the sinh term

    ChuaParams(double alpha_, double beta_, double g0_, double I0_)
        : alpha(alpha_), beta(beta_), g0(g0_), I0(I0_) {
        if (!(alpha > 0.0) || !(beta > 0.0))
            throw std::invalid_argument("ChuaParams: alpha and beta must be positive");
    }

    /// gamma = (1+alpha)/2, always derived so it cannot drift out of sync.
    [[nodiscard]] double gamma() const { return 0.5 * (1.0 + alpha); }

    /// Parameter range alpha < beta < gamma^2 where the interesting dynamics
    /// (and the region classifier) live. Queried, never enforced.
    [[nodiscard]] bool in_main_range() const {
        const double g = gamma();
        return alpha < beta && beta < g * g;
    }
};

struct State {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    State() = default;
    State(double x_, double y_, double z_);

    [[nodiscard]] double norm() const;
    [[nodiscard]] State negated() const { return State(-x, -y, -z); }
};

using Mat3 = std::array<std::array<double, 3>, 3>;

/// Diode-pair current w(x) = g0*x + I0*sinh(x). Throws DivergedError when
/// |x| > kSinhOverflowLimit.
double diode_current(double x, const ChuaParams& p);

/// Slope w'(x) = g0 + I0*cosh(x); same overflow guard.
double diode_slope(double x, const ChuaParams& p);

/// Source-form characteristic u(x) = -[g0*x + I0*sinh(x)]; odd in x.
double nonlinearity_u(double x, const ChuaParams& p);

/// Right-hand side of the state equations.
State vector_field(const State& s, const ChuaParams& p);

/// Analytic Jacobian of vector_field. Rows 2 and 3 are constant; only the
/// (1,1) entry depends on the state.
Mat3 jacobian(const State& s, const ChuaParams& p);

/// trace(jacobian) = alpha*(-1 - w'(x)) - 1, used by the Lyapunov sum rule.
double jacobian_trace(const State& s, const ChuaParams& p);

/// All equilibria: the origin always, plus the symmetric pair
/// +-(x*, 0, -x*) when sinh(x)/x = -(1+g0)/I0 has a positive root
/// (i.e. -(1+g0)/I0 > 1). Roots located by bisection on [1e-8, 50] to
/// 1e-12 in x followed by one Newton polish.
std::vector<State> equilibria(const ChuaParams& p);

struct EigenResult {
    std::array<std::complex<double>, 3> values;  ///< sorted by real part, descending
    bool stable;                                 ///< all real parts < 0
};

/// Eigenvalues of the Jacobian at an equilibrium point. The input must
/// satisfy |vector_field| < 1e-9 or std::invalid_argument is thrown.
EigenResult equilibrium_eigenvalues(const State& s, const ChuaParams& p);

/// Roots of s^3 + b s^2 + c s + d (real coefficients), Newton-polished.
std::array<std::complex<double>, 3> solve_cubic(double b, double c, double d);

}  // namespace chua
