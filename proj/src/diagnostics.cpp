#include "chua/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace chua {

namespace {

using Vec3 = std::array<double, 3>;
using Vec12 = std::array<double, 12>;

constexpr double kQrInterval = 1.0;   // nominal reorthonormalization spacing
constexpr double kWarmupTime = 5.0;   // frame alignment before accumulating
// Early reorthonormalization once a tangent column contracts this far,
// keeping log stretch factors representable on strongly dissipative orbits.
constexpr double kQrNormFloor = 1e-120;
// The Gram-Schmidt residual of the most contracted column shrinks roughly
// like exp(-integral of the local rate spread); past ~exp(-30) it drowns in
// cancellation noise, so a pass is forced before the budget is spent.
constexpr double kQrSpreadBudget = 20.0;

struct RhsChua3 {
    const ChuaParams& p;
    void operator()(double, const Vec3& y, Vec3& dy) const {
        dy[0] = p.alpha * (-y[0] + y[1] - diode_current(y[0], p));
        dy[1] = y[0] - y[1] + y[2];
        dy[2] = -p.beta * y[1];
    }
};

// State plus three tangent vectors evolved by the Jacobian.
struct RhsTangent {
    const ChuaParams& p;
    void operator()(double, const Vec12& y, Vec12& dy) const {
        const double x = y[0];
        if (std::abs(x) > kSinhOverflowLimit)
            throw DivergedError("tangent flow: sinh overflow");
        const double sh = std::sinh(x), ch = std::cosh(x);
        const double w = p.g0 * x + p.I0 * sh;
        const double a11 = p.alpha * (-1.0 - (p.g0 + p.I0 * ch));
        dy[0] = p.alpha * (-y[0] + y[1] - w);
        dy[1] = y[0] - y[1] + y[2];
        dy[2] = -p.beta * y[1];
        for (int v = 0; v < 3; ++v) {
            const double* t = y.data() + 3 + 3 * v;
            double* dt = dy.data() + 3 + 3 * v;
            dt[0] = a11 * t[0] + p.alpha * t[1];
            dt[1] = t[0] - t[1] + t[2];
            dt[2] = -p.beta * t[1];
        }
    }
};

double trace_at(double x, const ChuaParams& p) {
    return p.alpha * (-1.0 - (p.g0 + p.I0 * std::cosh(x))) - 1.0;
}

bool blown_up(double x, double y, double z, const ChuaParams& p, double radius) {
    return std::sqrt(x * x + y * y + z * z) > radius ||
           (p.I0 != 0.0 && std::abs(x) > kRunawayX);
}

// Norm that survives components far below sqrt(DBL_MIN).
double scaled_norm3(const double* v) {
    const double amax = std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
    if (amax == 0.0) return 0.0;
    const double a = v[0] / amax, b = v[1] / amax, c = v[2] / amax;
    return amax * std::sqrt(a * a + b * b + c * c);
}

// Modified Gram-Schmidt over the three tangent columns; returns the three
// diagonal norms (stretch factors since the previous pass).
std::array<double, 3> reorthonormalize(Vec12& y) {
    std::array<double, 3> r{};
    for (int v = 0; v < 3; ++v) {
        double* tv = y.data() + 3 + 3 * v;
        for (int u = 0; u < v; ++u) {
            const double* tu = y.data() + 3 + 3 * u;
            const double dot = tv[0] * tu[0] + tv[1] * tu[1] + tv[2] * tu[2];
            for (int i = 0; i < 3; ++i) tv[i] -= dot * tu[i];
        }
        const double n = scaled_norm3(tv);
        r[v] = n;
        if (n > 0.0)
            for (int i = 0; i < 3; ++i) tv[i] /= n;
        else
            tv[v] = 1.0;  // degenerate frame, reseed the lost direction
    }
    return r;
}

struct ExtendedOutcome {
    PoincareResult poincare;
    LyapunovResult lyap;
};

ExtendedOutcome run_extended(const State& s0, const ChuaParams& p, const IntegratorSettings& cfg,
                             std::size_t max_crossings, bool want_crossings) {
    cfg.validate();
    ExtendedOutcome out;
    const StepControl ctl = cfg.control();

    bool diverged = false;
    double diverge_t = 0.0;
    double t_reached = 0.0;

    // Transient on the plain flow.
    Vec3 y3{s0.x, s0.y, s0.z};
    auto guard3 = [&](const DenseStep<3>& ds) {
        if (blown_up(ds.y1[0], ds.y1[1], ds.y1[2], p, cfg.divergence_radius)) {
            diverged = true;
            diverge_t = ds.t1();
            return StepAction::Stop;
        }
        return StepAction::Continue;
    };
    try {
        if (drive<3>(RhsChua3{p}, y3, 0.0, cfg.t_transient, ctl, guard3, t_reached) ==
            StepperStatus::MinStep) {
            if (std::abs(y3[0]) > kStiffEscapeX) {
                diverged = true;
                diverge_t = t_reached;
            } else {
                out.poincare.status = SimStatus::Stiff;
            }
        }
    } catch (const DivergedError&) {
        diverged = true;
        diverge_t = t_reached;
    }
    if (diverged || out.poincare.status == SimStatus::Stiff) {
        if (diverged) {
            out.poincare.status = SimStatus::Diverged;
            out.poincare.escape_time = diverge_t;
        } else {
            out.poincare.escape_time = t_reached;
        }
        for (auto& c : y3)
            if (!std::isfinite(c)) c = 0.0;
        out.poincare.final_state = State(y3[0], y3[1], y3[2]);
        out.poincare.truncated = true;
        return out;
    }

    // Extended flow: warmup aligns the frame, then stretch factors accumulate.
    Vec12 y{};
    y[0] = y3[0];
    y[1] = y3[1];
    y[2] = y3[2];
    y[3] = y[7] = y[11] = 1.0;

    std::array<double, 3> log_sum{};
    std::array<double, 3> log_half{};
    double acc_half = 0.0;
    bool have_half = false;
    double acc_time = 0.0;
    double trace_integral = 0.0;
    double t = cfg.t_transient;
    double last_qr = t;
    double spread_acc = 0.0;
    const double warmup_end = cfg.t_transient + kWarmupTime;
    const double t_acc_end = warmup_end + cfg.t_sample;
    bool stiff = false;

    auto on_step = [&](const DenseStep<12>& ds) {
        if (blown_up(ds.y1[0], ds.y1[1], ds.y1[2], p, cfg.divergence_radius)) {
            diverged = true;
            diverge_t = ds.t1();
            return StepAction::Stop;
        }
        const bool accumulating = ds.t0 >= warmup_end;
        const double tr0 = trace_at(ds.y0[0], p);
        const double tr1 = trace_at(ds.y1[0], p);
        if (accumulating) trace_integral += 0.5 * ds.h * (tr0 + tr1);
        spread_acc += ds.h * (std::abs(0.5 * (tr0 + tr1)) + 3.0);
        if (want_crossings && accumulating && (ds.y0[1] < 0.0) != (ds.y1[1] < 0.0) &&
            ds.y0[1] != 0.0) {
            double lo = 0.0, hi = 1.0, vlo = ds.y0[1];
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double vm = ds.eval(1, mid);
                if ((vm < 0.0) == (vlo < 0.0)) {
                    lo = mid;
                    vlo = vm;
                } else {
                    hi = mid;
                }
                if ((hi - lo) * ds.h < 1e-12 && std::abs(ds.eval(1, 0.5 * (lo + hi))) < 1e-10)
                    break;
            }
            const double s = 0.5 * (lo + hi);
            PoincareCrossing c;
            c.t = ds.t0 + s * ds.h;
            c.state = State(ds.eval(0, s), 0.0, ds.eval(2, s));
            c.direction =
                ds.y0[1] < 0.0 ? CrossingDirection::NegToPos : CrossingDirection::PosToNeg;
            if (out.poincare.crossings.size() < max_crossings) out.poincare.crossings.push_back(c);
        }
        // Request an early orthonormalization before the frame degenerates,
        // either by outright column underflow or by angle collapse once the
        // accumulated rate spread eats the precision budget.
        if (spread_acc > kQrSpreadBudget) return StepAction::Stop;
        for (int v = 0; v < 3; ++v) {
            const double* tv = ds.y1.data() + 3 + 3 * v;
            if (std::max({std::abs(tv[0]), std::abs(tv[1]), std::abs(tv[2])}) < kQrNormFloor)
                return StepAction::Stop;
        }
        return StepAction::Continue;
    };

    try {
        while (t < t_acc_end && !diverged && !stiff) {
            const double target = std::min(last_qr + kQrInterval, t_acc_end);
            const StepperStatus st = drive<12>(RhsTangent{p}, y, t, target, ctl, on_step, t_reached);
            if (st == StepperStatus::MinStep) {
                if (std::abs(y[0]) > kStiffEscapeX) {
                    diverged = true;
                    diverge_t = t_reached;
                } else {
                    stiff = true;
                    out.poincare.status = SimStatus::Stiff;
                    out.poincare.escape_time = t_reached;
                }
            }
            if (diverged || stiff) break;
            const double elapsed = t_reached - last_qr;
            t = t_reached;
            if (elapsed > 0.0) {
                const auto r = reorthonormalize(y);
                last_qr = t;
                spread_acc = 0.0;
                if (t > warmup_end) {
                    for (int i = 0; i < 3; ++i) log_sum[i] += std::log(r[i]);
                    acc_time += elapsed;
                    if (!have_half && acc_time >= 0.5 * cfg.t_sample) {
                        log_half = log_sum;
                        acc_half = acc_time;
                        have_half = true;
                    }
                }
            }
        }
    } catch (const DivergedError&) {
        diverged = true;
        diverge_t = t_reached;
    }

    if (diverged) {
        out.poincare.status = SimStatus::Diverged;
        out.poincare.escape_time = diverge_t;
    }
    for (int i = 0; i < 3; ++i)
        if (!std::isfinite(y[i])) y[i] = 0.0;
    out.poincare.final_state = State(y[0], y[1], y[2]);
    out.poincare.truncated = out.poincare.crossings.size() < max_crossings;

    LyapunovResult& ly = out.lyap;
    ly.t_used = acc_time;
    if (acc_time > 0.0) {
        for (int i = 0; i < 3; ++i) ly.exponents[i] = log_sum[i] / acc_time;
        std::sort(ly.exponents.begin(), ly.exponents.end(), std::greater<>());
        ly.trace_average = trace_integral / acc_time;

        bool drift_ok = have_half && acc_time > acc_half;
        if (drift_ok) {
            std::array<double, 3> half_exponents{};
            for (int i = 0; i < 3; ++i) {
                half_exponents[i] = log_half[i] / acc_half;
                ly.late_exponents[i] = (log_sum[i] - log_half[i]) / (acc_time - acc_half);
            }
            ly.late_valid = true;
            std::sort(ly.late_exponents.begin(), ly.late_exponents.end(), std::greater<>());
            std::sort(half_exponents.begin(), half_exponents.end(), std::greater<>());
            for (int i = 0; i < 3; ++i)
                if (std::abs(half_exponents[i] - ly.exponents[i]) >
                    0.02 * std::max(1.0, std::abs(ly.exponents[i])))
                    drift_ok = false;
        }
        double min_abs = 1e300;
        for (double e : ly.exponents) min_abs = std::min(min_abs, std::abs(e));
        bool near_equilibrium = false;
        for (const State& eq : equilibria(p)) {
            const double dx = out.poincare.final_state.x - eq.x;
            const double dy2 = out.poincare.final_state.y - eq.y;
            const double dz = out.poincare.final_state.z - eq.z;
            if (std::sqrt(dx * dx + dy2 * dy2 + dz * dz) < 1e-6) near_equilibrium = true;
        }
        ly.converged = !diverged && out.poincare.status != SimStatus::Stiff && drift_ok &&
                       (near_equilibrium || min_abs < 0.01);
    }
    return out;
}

}  // namespace

LyapunovResult lyapunov_spectrum(const State& s0, const ChuaParams& p,
                                 const IntegratorSettings& cfg) {
    const ExtendedOutcome out = run_extended(s0, p, cfg, 0, false);
    if (out.poincare.status == SimStatus::Diverged)
        throw DivergedError("lyapunov_spectrum: trajectory diverged at t = " +
                            std::to_string(out.poincare.escape_time));
    return out.lyap;
}

std::string AttractorClass::to_string() const {
    switch (type) {
        case AttractorType::FixedPoint: return "fixed-point";
        case AttractorType::Periodic: return "periodic-" + std::to_string(period);
        case AttractorType::Chaotic: return "chaotic";
        case AttractorType::Diverged: return "diverged";
        case AttractorType::Undecided: return "undecided";
    }
    return "?";
}

namespace {

int cluster_count(std::vector<double>& values, double radius) {
    if (values.empty()) return 0;
    std::sort(values.begin(), values.end());
    int clusters = 1;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] - values[i - 1] > radius) ++clusters;
    return clusters;
}

// A settled orbit revisits the same section values; a slowly decaying or
// escaping spiral drifts. Compare per-direction means of the first and
// second halves of the crossing sequence (time ordered).
bool crossings_drift(const std::vector<PoincareCrossing>& crossings, double radius) {
    for (CrossingDirection d : {CrossingDirection::NegToPos, CrossingDirection::PosToNeg}) {
        std::vector<double> xs;
        for (const auto& c : crossings)
            if (c.direction == d) xs.push_back(c.state.x);
        if (xs.size() < 4) continue;
        const std::size_t half = xs.size() / 2;
        double a = 0.0, b = 0.0;
        for (std::size_t i = 0; i < half; ++i) a += xs[i];
        for (std::size_t i = half; i < xs.size(); ++i) b += xs[i];
        a /= static_cast<double>(half);
        b /= static_cast<double>(xs.size() - half);
        if (std::abs(a - b) > 10.0 * radius) return true;
    }
    return false;
}

}  // namespace

AttractorClass classify_attractor(const PoincareResult& run, const LyapunovResult& lyap,
                                  const ChuaParams& p, const ClassifierThresholds& th) {
    if (run.status == SimStatus::Diverged) return {AttractorType::Diverged, 0};

    for (const State& eq : equilibria(p)) {
        const double dx = run.final_state.x - eq.x;
        const double dy = run.final_state.y - eq.y;
        const double dz = run.final_state.z - eq.z;
        if (std::sqrt(dx * dx + dy * dy + dz * dz) < th.fixed_point_eps)
            return {AttractorType::FixedPoint, 0};
    }

    const double l1 = lyap.late_valid ? lyap.late_exponents[0] : lyap.exponents[0];
    if (l1 > th.chaos_lyap) return {AttractorType::Chaotic, 0};
    if (l1 <= th.periodic_lyap && run.crossings.size() >= 2 &&
        !crossings_drift(run.crossings, th.cluster_radius)) {
        std::vector<double> pos, neg;
        for (const auto& c : run.crossings)
            (c.direction == CrossingDirection::NegToPos ? pos : neg).push_back(c.state.x);
        const int np = cluster_count(pos, th.cluster_radius);
        const int nn = cluster_count(neg, th.cluster_radius);
        const int n = std::max(np, nn);
        if (n >= 1) return {AttractorType::Periodic, n};
    }
    return {AttractorType::Undecided, 0};
}

double dominant_frequency(std::span<const PoincareCrossing> crossings) {
    std::vector<double> pos, neg;
    for (const auto& c : crossings)
        (c.direction == CrossingDirection::NegToPos ? pos : neg).push_back(c.t);
    const std::vector<double>& ts = pos.size() >= neg.size() ? pos : neg;
    if (ts.size() < 4)
        throw std::invalid_argument("dominant_frequency: need at least 4 same-direction crossings");
    const double span_t = ts.back() - ts.front();
    return 2.0 * M_PI * static_cast<double>(ts.size() - 1) / span_t;
}

PointDiagnostics analyze_point(const State& s0, const ChuaParams& p, const IntegratorSettings& cfg,
                               std::size_t max_crossings, const ClassifierThresholds& th) {
    PointDiagnostics d;
    ExtendedOutcome out = run_extended(s0, p, cfg, max_crossings, true);
    d.poincare = std::move(out.poincare);
    d.lyapunov = out.lyap;
    d.label = classify_attractor(d.poincare, d.lyapunov, p, th);
    return d;
}

}  // namespace chua
