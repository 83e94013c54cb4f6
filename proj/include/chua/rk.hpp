#pragma once

// Fixed-size explicit Runge-Utta drivers: classic RK4 with a constant step
// and adaptive Dormand-Prince 5(4) with FSAL. Every accepted step hands the
// caller a DenseStep carrying endpoint values and derivatives, enough for
// cubic Hermite interpolation inside the step (crossing refinement).

#include <array>
#include <cmath>
#include <cstddef>

namespace chua {

template <std::size_t N>
struct DenseStep {
    double t0 = 0.0;
    double h = 0.0;
    std::array<double, N> y0{}, f0{}, y1{}, f1{};

    [[nodiscard]] double t1() const { return t0 + h; }

    /// Cubic Hermite value of component i at fraction s in [0, 1].
    [[nodiscard]] double eval(std::size_t i, double s) const {
        const double s2 = s * s, s3 = s2 * s;
        const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        const double h10 = s3 - 2.0 * s2 + s;
        const double h01 = -2.0 * s3 + 3.0 * s2;
        const double h11 = s3 - s2;
        return h00 * y0[i] + h * h10 * f0[i] + h01 * y1[i] + h * h11 * f1[i];
    }

    [[nodiscard]] std::array<double, N> eval_all(double s) const {
        std::array<double, N> out;
        for (std::size_t i = 0; i < N; ++i) out[i] = eval(i, s);
        return out;
    }
};

enum class StepperStatus { Ok, MinStep };

/// What the per-step callback tells the driver to do next.
enum class StepAction { Continue, Stop };

struct StepControl {
    bool adaptive = true;
    double step = 1e-3;      // fixed-mode step
    double rel_tol = 1e-9;   // adaptive mode
    double abs_tol = 1e-12;
    double max_step = 0.1;
};

namespace detail {

template <std::size_t N, class RHS>
StepperStatus drive_rk4(RHS&& rhs, std::array<double, N>& y, double t0, double t1,
                        double h_fixed, auto&& on_step, double& t_out) {
    std::array<double, N> k1, k2, k3, k4, tmp, y1, f1;
    double t = t0;
    t_out = t;
    rhs(t, y, k1);
    while (t < t1) {
        const double h = std::min(h_fixed, t1 - t);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        rhs(t + 0.5 * h, tmp, k2);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        rhs(t + 0.5 * h, tmp, k3);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * k3[i];
        rhs(t + h, tmp, k4);
        for (std::size_t i = 0; i < N; ++i)
            y1[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        rhs(t + h, y1, f1);

        DenseStep<N> ds;
        ds.t0 = t;
        ds.h = h;
        ds.y0 = y;
        ds.f0 = k1;
        ds.y1 = y1;
        ds.f1 = f1;

        y = y1;
        k1 = f1;
        t += h;
        t_out = t;
        if (on_step(ds) == StepAction::Stop) break;
    }
    t_out = t;
    return StepperStatus::Ok;
}

template <std::size_t N, class RHS>
StepperStatus drive_dp45(RHS&& rhs, std::array<double, N>& y, double t0, double t1,
                         const StepControl& ctl, auto&& on_step, double& t_out) {
    // Dormand-Prince coefficients.
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                     b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    std::array<double, N> k1, k2, k3, k4, k5, k6, k7, tmp, y1;
    double t = t0;
    t_out = t;
    double h = std::min(ctl.max_step, 1e-3);
    rhs(t, y, k1);

    while (t < t1) {
        h = std::min(h, t1 - t);
        if (h < 1e-14 * std::max(1.0, std::abs(t))) {
            t_out = t;
            return StepperStatus::MinStep;
        }

        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * a21 * k1[i];
        rhs(t + h / 5.0, tmp, k2);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + 3.0 * h / 10.0, tmp, k3);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + 4.0 * h / 5.0, tmp, k4);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + 8.0 * h / 9.0, tmp, k5);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        rhs(t + h, tmp, k6);
        for (std::size_t i = 0; i < N; ++i)
            y1[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        rhs(t + h, y1, k7);  // FSAL

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                   e6 * k6[i] + e7 * k7[i]);
            const double sc = ctl.abs_tol + ctl.rel_tol * std::max(std::abs(y[i]), std::abs(y1[i]));
            err += (ei / sc) * (ei / sc);
        }
        err = std::sqrt(err / static_cast<double>(N));

        if (err <= 1.0) {
            DenseStep<N> ds;
            ds.t0 = t;
            ds.h = h;
            ds.y0 = y;
            ds.f0 = k1;
            ds.y1 = y1;
            ds.f1 = k7;

            y = y1;
            k1 = k7;
            t += h;
            t_out = t;

            const double grow = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
            h = std::min(ctl.max_step, h * std::min(5.0, std::max(0.2, grow)));
            if (on_step(ds) == StepAction::Stop) break;
        } else {
            h *= std::min(1.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
        }
    }
    t_out = t;
    return StepperStatus::Ok;
}

}  // namespace detail

/// Integrate y' = rhs(t, y) from t0 to t1, invoking on_step after every
/// accepted step. Returns MinStep if the adaptive controller underflows.
template <std::size_t N, class RHS, class OnStep>
StepperStatus drive(RHS&& rhs, std::array<double, N>& y, double t0, double t1,
                    const StepControl& ctl, OnStep&& on_step, double& t_out) {
    if (t1 <= t0) {
        t_out = t0;
        return StepperStatus::Ok;
    }
    if (ctl.adaptive)
        return detail::drive_dp45<N>(rhs, y, t0, t1, ctl, on_step, t_out);
    return detail::drive_rk4<N>(rhs, y, t0, t1, ctl.step, on_step, t_out);
}

}  // namespace chua
