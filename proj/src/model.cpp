#include "chua/model.hpp"

#include <algorithm>
#include <cmath>

namespace chua {

State::State(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
        throw std::invalid_argument("State: components must be finite");
}

double State::norm() const { return std::sqrt(x * x + y * y + z * z); }

namespace {

void check_sinh_range(double x) {
    if (std::abs(x) > kSinhOverflowLimit)
        throw DivergedError("sinh/cosh overflow at |x| = " + std::to_string(std::abs(x)));
}

// Equilibrium condition for x != 0 reduces to sinh(x)/x = rho with
// rho = -(1+g0)/I0. sinh(x)/x is even and strictly increasing on x > 0,
// so a positive root exists iff rho > 1 and is unique.
double sinhc(double x) { return x == 0.0 ? 1.0 : std::sinh(x) / x; }

}  // namespace

double diode_current(double x, const ChuaParams& p) {
    check_sinh_range(x);
    return p.g0 * x + p.I0 * std::sinh(x);
}

double diode_slope(double x, const ChuaParams& p) {
    check_sinh_range(x);
    return p.g0 + p.I0 * std::cosh(x);
}

double nonlinearity_u(double x, const ChuaParams& p) { return -diode_current(x, p); }

State vector_field(const State& s, const ChuaParams& p) {
    const double w = diode_current(s.x, p);
    return State(p.alpha * (-s.x + s.y - w), s.x - s.y + s.z, -p.beta * s.y);
}

Mat3 jacobian(const State& s, const ChuaParams& p) {
    const double a11 = p.alpha * (-1.0 - diode_slope(s.x, p));
    return Mat3{{{a11, p.alpha, 0.0}, {1.0, -1.0, 1.0}, {0.0, -p.beta, 0.0}}};
}

double jacobian_trace(const State& s, const ChuaParams& p) {
    return p.alpha * (-1.0 - diode_slope(s.x, p)) - 1.0;
}

std::vector<State> equilibria(const ChuaParams& p) {
    std::vector<State> out;
    out.emplace_back(0.0, 0.0, 0.0);
    if (p.I0 == 0.0) {
        // Linear conductance only: x*(1+g0) = 0, nonzero roots are possible
        // only in the degenerate case g0 = -1 (a whole line; not reported).
        return out;
    }
    const double rho = -(1.0 + p.g0) / p.I0;
    if (!(rho > 1.0)) return out;

    double lo = 1e-8, hi = 50.0;
    if (sinhc(hi) < rho) return out;  // root beyond the supported bracket

    // Bisection on the monotone sinh(x)/x to 1e-12, then one Newton polish
    // on f(x) = (1+g0)*x + I0*sinh(x).
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (sinhc(mid) < rho ? lo : hi) = mid;
    }
    double root = 0.5 * (lo + hi);
    const double f = (1.0 + p.g0) * root + p.I0 * std::sinh(root);
    const double df = (1.0 + p.g0) + p.I0 * std::cosh(root);
    if (df != 0.0) root -= f / df;

    out.emplace_back(root, 0.0, -root);
    out.emplace_back(-root, 0.0, root);
    return out;
}

std::array<std::complex<double>, 3> solve_cubic(double b, double c, double d) {
    using C = std::complex<double>;
    std::array<C, 3> roots;

    // Depressed form t^3 + At + B with s = t - b/3.
    const double shift = b / 3.0;
    const double A = c - b * b / 3.0;
    const double B = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    const double disc = -4.0 * A * A * A - 27.0 * B * B;

    if (disc >= 0.0 && A < 0.0) {
        // Three real roots (trigonometric form).
        const double m = 2.0 * std::sqrt(-A / 3.0);
        double arg = 3.0 * B / (A * m);
        arg = std::clamp(arg, -1.0, 1.0);
        const double theta = std::acos(arg);
        for (int k = 0; k < 3; ++k)
            roots[k] = C(m * std::cos((theta - 2.0 * M_PI * k) / 3.0) - shift, 0.0);
    } else {
        // One real root (Cardano), then deflate to a quadratic.
        const double half_B = B / 2.0;
        const double sq = std::sqrt(std::max(half_B * half_B + A * A * A / 27.0, 0.0));
        const double u3 = -half_B + (half_B >= 0.0 ? -sq : sq);
        const double u = std::cbrt(u3);
        const double t0 = (u == 0.0) ? 0.0 : u - A / (3.0 * u);
        const double r0 = t0 - shift;
        // s^3+bs^2+cs+d = (s - r0)(s^2 + ps + q)
        const double pq = b + r0;
        const double q = -d / (r0 == 0.0 ? 1.0 : r0);
        const double disc2 = pq * pq - 4.0 * q;
        roots[0] = C(r0, 0.0);
        if (disc2 >= 0.0) {
            const double rs = std::sqrt(disc2);
            roots[1] = C((-pq + rs) / 2.0, 0.0);
            roots[2] = C((-pq - rs) / 2.0, 0.0);
        } else {
            const double rs = std::sqrt(-disc2);
            roots[1] = C(-pq / 2.0, rs / 2.0);
            roots[2] = C(-pq / 2.0, -rs / 2.0);
        }
    }

    // Newton polish; two steps reach machine precision from these seeds.
    auto poly = [&](C s) { return ((s + b) * s + c) * s + d; };
    auto dpoly = [&](C s) { return (3.0 * s + 2.0 * b) * s + c; };
    for (auto& r : roots)
        for (int it = 0; it < 2; ++it) {
            const C dp = dpoly(r);
            if (std::abs(dp) == 0.0) break;
            r -= poly(r) / dp;
        }

    // Re-pair conjugates disturbed by polishing.
    for (auto& r : roots)
        if (std::abs(r.imag()) < 1e-12 * std::max(1.0, std::abs(r.real()))) r = C(r.real(), 0.0);

    std::sort(roots.begin(), roots.end(), [](const C& a2, const C& b2) {
        if (a2.real() != b2.real()) return a2.real() > b2.real();
        return a2.imag() > b2.imag();
    });
    return roots;
}

EigenResult equilibrium_eigenvalues(const State& s, const ChuaParams& p) {
    const State f = vector_field(s, p);
    if (f.norm() >= 1e-9)
        throw std::invalid_argument("equilibrium_eigenvalues: state is not an equilibrium");

    // det(sI - J) = (s - a11)(s^2 + s + beta) - alpha*s
    const double a11 = p.alpha * (-1.0 - diode_slope(s.x, p));
    const double b = 1.0 - a11;
    const double c = p.beta - a11 - p.alpha;
    const double d = -a11 * p.beta;

    EigenResult res;
    res.values = solve_cubic(b, c, d);
    res.stable = true;
    for (const auto& v : res.values)
        if (!(v.real() < 0.0)) res.stable = false;
    return res;
}

}  // namespace chua
