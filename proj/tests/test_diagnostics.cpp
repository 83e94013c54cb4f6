#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "chua/diagnostics.hpp"

using namespace chua;

namespace {

IntegratorSettings budget(double transient, double sample) {
    IntegratorSettings cfg;
    cfg.t_transient = transient;
    cfg.t_sample = sample;
    return cfg;
}

}  // namespace

TEST_CASE("lyapunov: stable equilibrium matches the eigenvalue real parts") {
    const ChuaParams p(10, 13.3, -1.0053, 0.0003);  // g0+I0 = -1.005
    const auto eqs = equilibria(p);
    REQUIRE(eqs.size() == 3);
    const LyapunovResult ly =
        lyapunov_spectrum(State(eqs[1].x + 0.01, 0, eqs[1].z), p, budget(200, 300));

    for (double e : ly.exponents) CHECK(e < 0.0);
    CHECK(ly.converged);

    auto eig = equilibrium_eigenvalues(eqs[1], p);
    std::array<double, 3> re{eig.values[0].real(), eig.values[1].real(), eig.values[2].real()};
    std::sort(re.begin(), re.end(), std::greater<>());
    for (int i = 0; i < 3; ++i) CHECK(std::abs(ly.exponents[i] - re[i]) < 0.01);
}

TEST_CASE("lyapunov: stable w2 limit cycle has a zero leading exponent") {
    const ChuaParams p(10, 20, 0.0375, -0.7875);  // g0+I0 = -0.75
    const LyapunovResult ly = lyapunov_spectrum(State(0.01, 0, 0), p, budget(400, 400));
    CHECK(std::abs(ly.exponents[0]) < 0.01);
    CHECK(ly.exponents[1] < -0.01);
    CHECK(ly.exponents[2] < -0.01);
    CHECK(ly.converged);
}

TEST_CASE("lyapunov: double scroll is chaotic and reproducible across settings") {
    const ChuaParams p(10, 13.3, -1.0703, 0.0003);  // g0+I0 = -1.07
    const State ic(5.2, 0, -5.1);
    const LyapunovResult a = lyapunov_spectrum(ic, p, budget(400, 500));
    CHECK(a.exponents[0] > 0.02);
    CHECK(std::abs(a.exponents[1]) < 0.02);

    IntegratorSettings tighter = budget(400, 500);
    tighter.rel_tol = 1e-10;
    const LyapunovResult b = lyapunov_spectrum(ic, p, tighter);
    CHECK(std::abs(a.exponents[0] - b.exponents[0]) < 0.02);
}

TEST_CASE("lyapunov: sum rule ties the spectrum to the Jacobian trace") {
    // |sum(lambda) - <trace>| < 0.02 on an equilibrium, a cycle and the scroll.
    struct Case {
        ChuaParams p;
        State ic;
    };
    const Case cases[] = {
        {ChuaParams(10, 13.3, -1.0053, 0.0003), State(5.2, 0, -5.1)},
        {ChuaParams(10, 20, 0.0375, -0.7875), State(0.01, 0, 0)},
        {ChuaParams(10, 13.3, -1.0703, 0.0003), State(5.2, 0, -5.1)},
    };
    for (const Case& c : cases) {
        const LyapunovResult ly = lyapunov_spectrum(c.ic, c.p, budget(400, 400));
        const double sum = ly.exponents[0] + ly.exponents[1] + ly.exponents[2];
        CHECK(std::abs(sum - ly.trace_average) < 0.02);
    }
}

TEST_CASE("lyapunov: insensitive to the phase-point used on the same attractor") {
    const ChuaParams p(10, 20, 0.0375, -0.7875);
    const LyapunovResult a = lyapunov_spectrum(State(0.01, 0, 0), p, budget(400, 400));
    const LyapunovResult b = lyapunov_spectrum(State(0, -0.02, 0.01), p, budget(430, 400));
    for (int i = 0; i < 3; ++i)
        CHECK(std::abs(a.exponents[i] - b.exponents[i]) < 0.01 * std::max(1.0, std::abs(a.exponents[i])));
}

TEST_CASE("lyapunov: one exponent is the flow direction on non-fixed-point attractors") {
    for (const auto& [beta, g0, I0, icx] :
         {std::tuple{20.0, 0.0375, -0.7875, 0.01}, std::tuple{13.3, -1.0703, 0.0003, 5.2}}) {
        const ChuaParams p(10, beta, g0, I0);
        const LyapunovResult ly = lyapunov_spectrum(State(icx, 0, icx == 5.2 ? -5.1 : 0.0), p,
                                                    budget(400, 400));
        double min_abs = 1e300;
        for (double e : ly.exponents) min_abs = std::min(min_abs, std::abs(e));
        CHECK(min_abs < 0.01);
    }
}

TEST_CASE("lyapunov: divergence propagates") {
    const ChuaParams p(10, 20, 0.2875, -0.7875);  // unstable zone, g0+I0 = -0.5
    CHECK_THROWS_AS(lyapunov_spectrum(State(0.01, 0, 0), p, budget(400, 100)), DivergedError);
}

TEST_CASE("classify_attractor: the cascade route from cycle to chaos") {
    IntegratorSettings cfg = budget(500, 400);
    const double I0 = -0.7875;

    auto label = [&](double sigma) {
        const ChuaParams p(10, 20, sigma - I0, I0);
        return analyze_point(State(0.01, 0, 0), p, cfg, 3000).label;
    };

    CHECK(label(-0.75) == AttractorClass{AttractorType::Periodic, 1});
    CHECK(label(-0.687) == AttractorClass{AttractorType::Periodic, 2});  // doubled
    CHECK(label(-0.676).type == AttractorType::Chaotic);                 // merged scroll
    CHECK(label(-0.5).type == AttractorType::Diverged);                  // past the crisis
}

TEST_CASE("classify_attractor: fixed point by equilibrium proximity") {
    const ChuaParams p(10, 13.3, -0.0503, 0.0003);  // origin-only region
    const PointDiagnostics d = analyze_point(State(0.01, 0, 0), p, budget(300, 100), 100);
    CHECK(d.label == AttractorClass{AttractorType::FixedPoint, 0});
    CHECK(d.poincare.final_state.norm() < 1e-6);
}

TEST_CASE("classify_attractor: dead zone between thresholds is Undecided") {
    // Synthetic inputs exercise the rule directly.
    const ChuaParams p(10, 20, 0.0375, -0.7875);
    PoincareResult run;
    run.status = SimStatus::Completed;
    run.final_state = State(1.0, 0.5, 0.2);  // not an equilibrium
    run.crossings.resize(8);
    for (std::size_t i = 0; i < run.crossings.size(); ++i) {
        run.crossings[i].t = static_cast<double>(i);
        run.crossings[i].state = State(1.0 + 0.5 * ((i / 2) % 2), 0.0, 0.0);
        run.crossings[i].direction =
            i % 2 ? CrossingDirection::PosToNeg : CrossingDirection::NegToPos;
    }
    LyapunovResult ly;
    ly.exponents = {0.007, -0.1, -1.0};  // between periodic (0.005) and chaos (0.01)
    CHECK(classify_attractor(run, ly, p) == AttractorClass{AttractorType::Undecided, 0});

    ly.exponents = {0.02, 0.0, -1.0};
    CHECK(classify_attractor(run, ly, p).type == AttractorType::Chaotic);

    ly.exponents = {0.001, -0.1, -1.0};
    const AttractorClass c = classify_attractor(run, ly, p);
    CHECK(c.type == AttractorType::Periodic);
    CHECK(c.period == 2);  // two x-clusters per direction

    run.status = SimStatus::Diverged;
    CHECK(classify_attractor(run, ly, p).type == AttractorType::Diverged);
}

TEST_CASE("classify_attractor: periodic label stable under a tightened tolerance") {
    const ChuaParams p(10, 20, 0.1005, -0.7875);  // g0+I0 = -0.687, period-2
    IntegratorSettings cfg = budget(500, 400);
    const AttractorClass a = analyze_point(State(0.01, 0, 0), p, cfg, 3000).label;
    cfg.rel_tol = 1e-10;
    const AttractorClass b = analyze_point(State(0.01, 0, 0), p, cfg, 3000).label;
    CHECK(a == b);
    CHECK(a == AttractorClass{AttractorType::Periodic, 2});
}

TEST_CASE("dominant_frequency: synthetic spacing and the w2 cycle") {
    std::vector<PoincareCrossing> synth;
    for (int i = 0; i < 8; ++i)
        synth.push_back({0.5 * i, State(1, 0, 0), CrossingDirection::NegToPos});
    CHECK(dominant_frequency(synth) == doctest::Approx(2.0 * M_PI / 0.5).epsilon(1e-12));

    synth.resize(3);
    CHECK_THROWS_AS(dominant_frequency(synth), std::invalid_argument);

    const ChuaParams p(10, 20, 0.0375, -0.7875);
    const PointDiagnostics d = analyze_point(State(0.01, 0, 0), p, budget(400, 100), 1000);
    const double f = dominant_frequency(d.poincare.crossings);
    CHECK(std::abs(f - 3.3613149036178647) / 3.3613149036178647 < 0.05);
}

TEST_CASE("dominant_frequency: hidden w3 oscillation near its birth") {
    // Just past the Andronov-Hopf point the cycle frequency is w3 itself.
    const ChuaParams p(10, 13.3, -0.5003, 0.0003);  // g0+I0 = -0.5
    const PointDiagnostics d = analyze_point(State(0.01, 0, 0), p, budget(400, 100), 1000);
    REQUIRE(d.label.type == AttractorType::Periodic);
    const double f = dominant_frequency(d.poincare.crossings);
    CHECK(std::abs(f - 3.4521062802364271) / 3.4521062802364271 < 0.05);
}
