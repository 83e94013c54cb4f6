#include "chua/sim.hpp"

#include <cmath>

namespace chua {

void IntegratorSettings::validate() const {
    if (method == Method::Rk4Fixed && !(step > 0.0))
        throw std::invalid_argument("IntegratorSettings: step must be positive");
    if (method == Method::Rk45Adaptive) {
        if (!(rel_tol > 0.0) || rel_tol > 1e-2 || !(abs_tol > 0.0) || abs_tol > 1e-2)
            throw std::invalid_argument("IntegratorSettings: tolerances must lie in (0, 1e-2]");
    }
    if (t_transient < 0.0 || t_sample < 0.0)
        throw std::invalid_argument("IntegratorSettings: negative time spans");
    if (!(divergence_radius > 0.0))
        throw std::invalid_argument("IntegratorSettings: divergence_radius must be positive");
}

StepControl IntegratorSettings::control() const {
    StepControl ctl;
    ctl.adaptive = method == Method::Rk45Adaptive;
    ctl.step = step;
    ctl.rel_tol = rel_tol;
    ctl.abs_tol = abs_tol;
    return ctl;
}

namespace {

using Vec3 = std::array<double, 3>;

double norm3(const Vec3& y) { return std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]); }

bool blown_up(const Vec3& y, const ChuaParams& p, double radius) {
    return norm3(y) > radius || (p.I0 != 0.0 && std::abs(y[0]) > kRunawayX);
}

State to_state(const Vec3& y) { return State(y[0], y[1], y[2]); }

struct RhsChua {
    const ChuaParams& p;
    void operator()(double, const Vec3& y, Vec3& dy) const {
        dy[0] = p.alpha * (-y[0] + y[1] - diode_current(y[0], p));
        dy[1] = y[0] - y[1] + y[2];
        dy[2] = -p.beta * y[1];
    }
};

// Refine a sign change of component `comp` inside a dense step by bisection
// on the Hermite interpolant: down to 1e-12 in time and |value| < 1e-10.
double refine_crossing(const DenseStep<3>& ds, std::size_t comp) {
    double lo = 0.0, hi = 1.0;
    double vlo = ds.y0[comp];
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double vm = ds.eval(comp, mid);
        if ((vm < 0.0) == (vlo < 0.0)) {
            lo = mid;
            vlo = vm;
        } else {
            hi = mid;
        }
        if ((hi - lo) * ds.h < 1e-12 && std::abs(ds.eval(comp, 0.5 * (lo + hi))) < 1e-10) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

IntegrationResult integrate(const State& s0, const ChuaParams& p, const IntegratorSettings& cfg) {
    cfg.validate();
    IntegrationResult res;
    Vec3 y{s0.x, s0.y, s0.z};
    const StepControl ctl = cfg.control();
    const double t_end = cfg.t_transient + cfg.t_sample;
    double t_reached = 0.0;
    bool diverged = false;
    double diverge_t = 0.0;

    auto on_step = [&](const DenseStep<3>& ds) {
        if (blown_up(ds.y1, p, cfg.divergence_radius)) {
            diverged = true;
            diverge_t = ds.t1();
            return StepAction::Stop;
        }
        if (ds.t1() >= cfg.t_transient) {
            if (res.trajectory.times.empty() && ds.t0 >= cfg.t_transient) {
                res.trajectory.times.push_back(ds.t0);
                res.trajectory.states.push_back(to_state(ds.y0));
            }
            res.trajectory.times.push_back(ds.t1());
            res.trajectory.states.push_back(to_state(ds.y1));
        }
        return StepAction::Continue;
    };

    try {
        const StepperStatus st = drive<3>(RhsChua{p}, y, 0.0, t_end, ctl, on_step, t_reached);
        if (st == StepperStatus::MinStep) {
            if (std::abs(y[0]) > kStiffEscapeX) {
                diverged = true;
                diverge_t = t_reached;
            } else {
                res.status = SimStatus::Stiff;
                res.escape_time = t_reached;
            }
        }
    } catch (const DivergedError&) {
        diverged = true;
        diverge_t = t_reached;
    }
    if (diverged) {
        res.status = SimStatus::Diverged;
        res.escape_time = diverge_t;
    }
    res.final_state = State(std::isfinite(y[0]) ? y[0] : 0.0, std::isfinite(y[1]) ? y[1] : 0.0,
                            std::isfinite(y[2]) ? y[2] : 0.0);
    return res;
}

PoincareResult poincare_crossings(const State& s0, const ChuaParams& p,
                                  const IntegratorSettings& cfg, std::size_t max_crossings) {
    cfg.validate();
    PoincareResult res;
    Vec3 y{s0.x, s0.y, s0.z};
    const StepControl ctl = cfg.control();
    const double t_end = cfg.t_transient + cfg.t_sample;
    double t_reached = 0.0;
    bool diverged = false;
    double diverge_t = 0.0;

    auto on_step = [&](const DenseStep<3>& ds) {
        if (blown_up(ds.y1, p, cfg.divergence_radius)) {
            diverged = true;
            diverge_t = ds.t1();
            return StepAction::Stop;
        }
        if (ds.t1() < cfg.t_transient) return StepAction::Continue;
        if ((ds.y0[1] < 0.0) != (ds.y1[1] < 0.0) && ds.y0[1] != 0.0) {
            const double s = refine_crossing(ds, 1);
            const double tc = ds.t0 + s * ds.h;
            if (tc >= cfg.t_transient) {
                PoincareCrossing c;
                c.t = tc;
                c.state = State(ds.eval(0, s), 0.0, ds.eval(2, s));
                c.direction = ds.y0[1] < 0.0 ? CrossingDirection::NegToPos : CrossingDirection::PosToNeg;
                res.crossings.push_back(c);
                if (res.crossings.size() >= max_crossings) return StepAction::Stop;
            }
        }
        return StepAction::Continue;
    };

    try {
        const StepperStatus st = drive<3>(RhsChua{p}, y, 0.0, t_end, ctl, on_step, t_reached);
        if (st == StepperStatus::MinStep) {
            if (std::abs(y[0]) > kStiffEscapeX) {
                diverged = true;
                diverge_t = t_reached;
            } else {
                res.status = SimStatus::Stiff;
                res.escape_time = t_reached;
            }
        }
    } catch (const DivergedError&) {
        diverged = true;
        diverge_t = t_reached;
    }
    if (diverged) {
        res.status = SimStatus::Diverged;
        res.escape_time = diverge_t;
    }
    // Partial list: the time budget (or a divergence) ended the run before
    // the requested number of crossings was found.
    res.truncated = res.crossings.size() < max_crossings;
    res.final_state = State(std::isfinite(y[0]) ? y[0] : 0.0, std::isfinite(y[1]) ? y[1] : 0.0,
                            std::isfinite(y[2]) ? y[2] : 0.0);
    return res;
}

const char* to_string(SimStatus s) {
    switch (s) {
        case SimStatus::Completed: return "completed";
        case SimStatus::Diverged: return "diverged";
        case SimStatus::Stiff: return "stiff";
    }
    return "?";
}

const char* to_string(CrossingDirection d) {
    return d == CrossingDirection::NegToPos ? "neg-to-pos" : "pos-to-neg";
}

}  // namespace chua
