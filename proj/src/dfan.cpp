#include "chua/dfan.hpp"

#include <cmath>
#include <limits>

namespace chua {

std::complex<double> transfer_function(double omega, const ChuaParams& p) {
    if (!std::isfinite(omega)) throw std::invalid_argument("transfer_function: omega must be finite");
    const double g = p.gamma();
    const double w2 = omega * omega;
    // s = jw:  numerator -alpha*((beta - w^2) + jw)
    //          denominator (alpha*beta - 2*gamma*w^2) + jw*(beta - w^2)
    const std::complex<double> num = -p.alpha * std::complex<double>(p.beta - w2, omega);
    const std::complex<double> den(p.alpha * p.beta - 2.0 * g * w2, omega * (p.beta - w2));
    if (den == std::complex<double>(0.0, 0.0))
        throw std::domain_error("transfer_function: pole on the imaginary axis");
    return num / den;
}

InterceptionSet interception_points(const ChuaParams& p) {
    InterceptionSet s;
    s.omega[0] = std::numeric_limits<double>::infinity();
    s.p[0] = 0.0;
    s.exists[0] = true;
    s.omega[1] = 0.0;
    s.p[1] = -1.0;
    s.exists[1] = true;

    const double g = p.gamma();
    const double disc = g * g - p.beta;
    if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        const double w2sq = p.beta - g - root;
        const double w3sq = p.beta - g + root;
        // Interior crossings need real frequencies as well; in the main
        // range alpha < beta < gamma^2 both squares are positive.
        if (w2sq >= 0.0) {
            s.omega[2] = std::sqrt(w2sq);
            s.p[2] = -p.alpha / (g + root);
            s.exists[2] = true;
        }
        if (w3sq >= 0.0) {
            s.omega[3] = std::sqrt(w3sq);
            s.p[3] = -p.alpha / (g - root);
            s.exists[3] = true;
        }
    }
    return s;
}

namespace {

// 1 + sum_j prod_i((2i+1)/(2i+2)) X^(2j)/(2j+1)! ; successive terms obey
// t_j = t_{j-1} * X^2 / (4 j (j+1)), which also equals 2*I1(X)/X.
double sinh_gain_series(double X) {
    const double x2 = X * X;
    double term = 1.0, sum = 1.0;
    for (int j = 1; j <= 200; ++j) {
        term *= x2 / (4.0 * j * (j + 1.0));
        sum += term;
        if (term < 1e-16 * sum) break;
    }
    return sum;
}

}  // namespace

double describing_function(double X, const ChuaParams& p) {
    if (!(X >= 0.0)) throw std::invalid_argument("describing_function: X must be >= 0");
    if (X > kSinhOverflowLimit)
        throw DivergedError("describing_function: series overflow at X = " + std::to_string(X));
    return -p.g0 - p.I0 * sinh_gain_series(X);
}

double describing_function_bessel(double X, const ChuaParams& p) {
    if (!(X >= 0.0)) throw std::invalid_argument("describing_function: X must be >= 0");
    if (X > kSinhOverflowLimit)
        throw DivergedError("describing_function: overflow at X = " + std::to_string(X));
    const double gain = X == 0.0 ? 1.0 : 2.0 * std::cyl_bessel_i(1.0, X) / X;
    return -p.g0 - p.I0 * gain;
}

double locus_inverse(double X, const ChuaParams& p) {
    const double n = describing_function(X, p);
    if (n == 0.0) throw std::domain_error("locus_inverse: discontinuity, N(X) = 0");
    return -1.0 / n;
}

namespace {

// Real-axis segments enclosed by the Nyquist curve for alpha < beta < gamma^2:
// (p3, p2) and (-1, 0). A locus point inside either segment sees growing
// amplitudes.
bool in_unstable_zone(double v, const InterceptionSet& ic) {
    return (v > ic.p[3] && v < ic.p[2]) || (v > -1.0 && v < 0.0);
}

// Unique root of N(X) = target on X > 0 (N is strictly monotone for
// I0 != 0). Returns a negative value when no root exists.
double solve_df_amplitude(double target, const ChuaParams& p) {
    if (p.I0 == 0.0) return -1.0;
    const double n0 = describing_function(0.0, p);
    if (n0 == target) return -1.0;  // root at X = 0 is the equilibrium itself
    const bool increasing = p.I0 < 0.0;
    if (increasing && !(target > n0)) return -1.0;
    if (!increasing && !(target < n0)) return -1.0;

    double lo = 0.0, hi = 1.0;
    while (hi <= kSinhOverflowLimit) {
        const double nh = describing_function(hi, p);
        if ((increasing && nh >= target) || (!increasing && nh <= target)) break;
        hi *= 2.0;
    }
    if (hi > kSinhOverflowLimit) return -1.0;

    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double nm = describing_function(mid, p);
        const bool below = increasing ? (nm < target) : (nm > target);
        (below ? lo : hi) = mid;
        if (hi - lo <= 1e-15 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<PredictedCycle> predicted_limit_cycles(const ChuaParams& p) {
    const double g = p.gamma();
    if (!(g * g > p.beta))
        throw std::invalid_argument("predicted_limit_cycles: requires gamma^2 > beta");
    const InterceptionSet ic = interception_points(p);

    std::vector<PredictedCycle> cycles;
    for (int i : {2, 3}) {
        if (!ic.exists[i]) continue;
        // Locus -1/N(X) passes through p_i  <=>  N(X) = -1/p_i.
        const double x = solve_df_amplitude(-1.0 / ic.p[i], p);
        if (!(x > 0.0)) continue;
        const double above = locus_inverse(x * (1.0 + 1e-6) + 1e-9, p);
        cycles.push_back({x, ic.omega[i], !in_unstable_zone(above, ic), i});
    }
    std::sort(cycles.begin(), cycles.end(),
              [](const PredictedCycle& a, const PredictedCycle& b) { return a.amplitude < b.amplitude; });
    return cycles;
}

std::string RegionLabel::to_string() const {
    if (kind == Kind::Boundary) return "boundary";
    if (kind == Kind::OutOfRange) return "out-of-range";
    std::string out;
    auto add = [&](Behavior b, const char* name) {
        if (has(b)) {
            if (!out.empty()) out += '+';
            out += name;
        }
    };
    add(Behavior::Origin, "origin");
    add(Behavior::EquilibriaPm, "equilibria-pm");
    add(Behavior::CycleOmega2ToChaos, "cycle-w2-chaos");
    add(Behavior::CycleOmega3, "cycle-w3");
    add(Behavior::Unstable, "unstable");
    return out;
}

RegionLabel classify_region(const ChuaParams& p) {
    if (!p.in_main_range()) return RegionLabel::out_of_range();
    const double g = p.gamma();
    if (!(g * g > p.beta)) return RegionLabel::out_of_range();

    const InterceptionSet ic = interception_points(p);
    const double sigma = p.g0 + p.I0;
    const double ip2 = ic.inv_p2();
    const double ip3 = ic.inv_p3();

    if (p.I0 == 0.0 || sigma == 0.0 || sigma == -1.0 || sigma == ip2 || sigma == ip3)
        return RegionLabel::boundary();

    constexpr auto O = static_cast<unsigned>(Behavior::Origin);
    constexpr auto E = static_cast<unsigned>(Behavior::EquilibriaPm);
    constexpr auto C2 = static_cast<unsigned>(Behavior::CycleOmega2ToChaos);
    constexpr auto C3 = static_cast<unsigned>(Behavior::CycleOmega3);
    constexpr auto U = static_cast<unsigned>(Behavior::Unstable);

    if (sigma * p.I0 > 0.0) {
        if (sigma < -1.0) return RegionLabel::labels(U);
        if (sigma < ip2) return RegionLabel::labels(O | U);
        if (sigma < ip3) return RegionLabel::labels(C2 | U);
        if (sigma < 0.0) return RegionLabel::labels(O | C2 | U);
        return RegionLabel::labels(O);
    }
    if (sigma < -1.0) return RegionLabel::labels(E | C3 | C2);
    if (sigma < ip2) return RegionLabel::labels(O | C3);
    if (sigma < ip3) return RegionLabel::labels(C3);
    if (sigma < 0.0) return RegionLabel::labels(O);
    return RegionLabel::labels(O | C2 | U);
}

}  // namespace chua
