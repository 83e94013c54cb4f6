#pragma once

// Numerical integration of the Chua system and Poincare sectioning at y = 0
// with bidirectional crossing detection.

#include <cstddef>
#include <vector>

#include "chua/model.hpp"
#include "chua/rk.hpp"

namespace chua {

enum class Method { Rk4Fixed, Rk45Adaptive };

struct IntegratorSettings {
    Method method = Method::Rk45Adaptive;
    double step = 1e-3;       ///< fixed-step size (Rk4Fixed)
    double rel_tol = 1e-9;    ///< adaptive relative tolerance
    double abs_tol = 1e-12;   ///< adaptive absolute tolerance
    double t_transient = 500.0;
    double t_sample = 500.0;
    double divergence_radius = 1e6;

    void validate() const;
    [[nodiscard]] StepControl control() const;
};

enum class SimStatus { Completed, Diverged, Stiff };

struct Trajectory {
    std::vector<double> times;   ///< strictly increasing
    std::vector<State> states;
};

struct IntegrationResult {
    Trajectory trajectory;  ///< recorded over [t_transient, t_transient + t_sample]
    SimStatus status = SimStatus::Completed;
    double escape_time = 0.0;  ///< meaningful when status != Completed
    State final_state;
};

/// Integrate from s0 over [0, t_transient + t_sample], recording only after
/// the transient. A state norm above divergence_radius (or sinh overflow)
/// ends the run with status Diverged and the escape time; adaptive step
/// underflow ends it with Stiff and the last state.
IntegrationResult integrate(const State& s0, const ChuaParams& p, const IntegratorSettings& cfg);

enum class CrossingDirection { NegToPos, PosToNeg };

struct PoincareCrossing {
    double t;
    State state;  ///< y component set to zero by construction
    CrossingDirection direction;
};

struct PoincareResult {
    std::vector<PoincareCrossing> crossings;
    SimStatus status = SimStatus::Completed;
    double escape_time = 0.0;
    State final_state;
    bool truncated = false;  ///< fewer crossings than requested within the time budget
};

/// Post-transient crossings of the y = 0 section in both directions. Each
/// sign change is refined on the cubic dense output by bisection to 1e-12
/// in time and |y| < 1e-10.
PoincareResult poincare_crossings(const State& s0, const ChuaParams& p,
                                  const IntegratorSettings& cfg, std::size_t max_crossings);

const char* to_string(SimStatus s);
const char* to_string(CrossingDirection d);

}  // namespace chua
