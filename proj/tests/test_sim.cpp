#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "chua/sim.hpp"

using namespace chua;

namespace {

IntegratorSettings quick(double transient, double sample) {
    IntegratorSettings cfg;
    cfg.t_transient = transient;
    cfg.t_sample = sample;
    return cfg;
}

std::vector<double> direction_times(const PoincareResult& r, CrossingDirection d) {
    std::vector<double> ts;
    for (const auto& c : r.crossings)
        if (c.direction == d) ts.push_back(c.t);
    return ts;
}

double mean_direction_x(const PoincareResult& r, CrossingDirection d) {
    double sum = 0.0;
    int n = 0;
    for (const auto& c : r.crossings)
        if (c.direction == d) {
            sum += c.state.x;
            ++n;
        }
    return sum / n;
}

}  // namespace

TEST_CASE("settings validation") {
    IntegratorSettings cfg;
    cfg.rel_tol = 0.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = IntegratorSettings{};
    cfg.t_transient = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = IntegratorSettings{};
    cfg.method = Method::Rk4Fixed;
    cfg.step = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("integrate: origin equilibrium stays put") {
    const ChuaParams p(10, 13.3, -1.005, 0.0003);
    const IntegrationResult r = integrate(State(0, 0, 0), p, quick(5, 5));
    CHECK(r.status == SimStatus::Completed);
    for (const State& s : r.trajectory.states) CHECK(s.norm() < 1e-12);
    CHECK(!r.trajectory.times.empty());
    for (std::size_t i = 1; i < r.trajectory.times.size(); ++i)
        CHECK(r.trajectory.times[i] > r.trajectory.times[i - 1]);
    CHECK(r.trajectory.times.front() >= 5.0 - 1e-12);
}

TEST_CASE("integrate: convergence to the +P1 equilibrium") {
    const ChuaParams p(10, 13.3, -1.0053, 0.0003);  // g0+I0 = -1.005
    const auto eqs = equilibria(p);
    REQUIRE(eqs.size() == 3);
    const IntegrationResult r = integrate(State(eqs[1].x + 0.05, 0.02, eqs[1].z), p, quick(200, 10));
    CHECK(r.status == SimStatus::Completed);
    const double d = std::hypot(r.final_state.x - eqs[1].x, r.final_state.y,
                                r.final_state.z - eqs[1].z);
    CHECK(d < 1e-6);
}

TEST_CASE("integrate: unstable regime escapes and reports Diverged") {
    const ChuaParams p(10, 20, 0.2875, -0.7875);  // g0+I0 = -0.5
    const IntegrationResult r = integrate(State(0.01, 0, 0), p, quick(400, 100));
    CHECK(r.status == SimStatus::Diverged);
    CHECK(r.escape_time > 0.0);
}

TEST_CASE("integrate: globally stable sign regime contracts to the origin") {
    const ChuaParams p(10, 20, 0.3, 0.2);  // (g0+I0)I0 > 0, g0+I0 > 0
    for (const State& ic : {State(1, 0, 0), State(-0.5, 0.5, 0.5), State(0.2, -0.9, 0.1),
                            State(0, 0.3, -0.8), State(0.7, 0.7, 0)}) {
        const IntegrationResult r = integrate(ic, p, quick(300, 5));
        CHECK(r.status == SimStatus::Completed);
        CHECK(r.final_state.norm() < 1e-6);
    }
}

TEST_CASE("poincare: no crossings on a trajectory resting at the origin") {
    const ChuaParams p(10, 13.3, -0.05, 0.0003);
    const PoincareResult r = poincare_crossings(State(0, 0, 0), p, quick(5, 20), 100);
    CHECK(r.crossings.empty());
    CHECK(r.truncated);  // fewer than requested within the budget
}

TEST_CASE("poincare: w2 limit cycle structure") {
    const ChuaParams p(10, 20, 0.0375, -0.7875);  // g0+I0 = -0.75
    const PoincareResult r = poincare_crossings(State(0.01, 0, 0), p, quick(400, 60), 1000);
    REQUIRE(r.crossings.size() >= 20);
    CHECK(r.status == SimStatus::Completed);

    // Directions alternate around the cycle.
    for (std::size_t i = 1; i < r.crossings.size(); ++i) {
        CHECK(r.crossings[i].t > r.crossings[i - 1].t);
        CHECK(r.crossings[i].direction != r.crossings[i - 1].direction);
        CHECK(r.crossings[i].state.y == 0.0);
    }

    // One x-value per direction (period-1), distinct between directions.
    for (CrossingDirection d : {CrossingDirection::NegToPos, CrossingDirection::PosToNeg}) {
        const double m = mean_direction_x(r, d);
        for (const auto& c : r.crossings)
            if (c.direction == d) CHECK(std::abs(c.state.x - m) < 1e-4);
    }
    CHECK(std::abs(mean_direction_x(r, CrossingDirection::NegToPos) -
                   mean_direction_x(r, CrossingDirection::PosToNeg)) > 0.1);

    // Same-direction spacing approximates the predicted w2 period within 5%.
    const auto ts = direction_times(r, CrossingDirection::NegToPos);
    REQUIRE(ts.size() >= 4);
    const double period = (ts.back() - ts.front()) / static_cast<double>(ts.size() - 1);
    CHECK(std::abs(period - 2.0 * M_PI / 3.3613149036178647) / (2.0 * M_PI / 3.3613149036178647) <
          0.05);
}

TEST_CASE("poincare: double scroll crossings span both signs") {
    const ChuaParams p(10, 13.3, -1.0703, 0.0003);  // g0+I0 = -1.07
    const PoincareResult r = poincare_crossings(State(5.2, 0, -5.1), p, quick(400, 200), 4000);
    REQUIRE(r.crossings.size() > 50);
    double xmin = 1e300, xmax = -1e300;
    for (const auto& c : r.crossings) {
        xmin = std::min(xmin, c.state.x);
        xmax = std::max(xmax, c.state.x);
    }
    CHECK(xmin < -3.0);
    CHECK(xmax > 3.0);
    // Sign-symmetric extent of the merged attractor.
    CHECK(std::abs(xmin + xmax) < 0.2 * xmax);
}

TEST_CASE("poincare: crossing x-values stable under step halving") {
    const ChuaParams p(10, 20, 0.0375, -0.7875);
    IntegratorSettings cfg = quick(300, 40);
    cfg.method = Method::Rk4Fixed;
    cfg.step = 1e-3;
    const PoincareResult a = poincare_crossings(State(0.01, 0, 0), p, cfg, 1000);
    cfg.step = 5e-4;
    const PoincareResult b = poincare_crossings(State(0.01, 0, 0), p, cfg, 1000);
    for (CrossingDirection d : {CrossingDirection::NegToPos, CrossingDirection::PosToNeg}) {
        const double ma = mean_direction_x(a, d);
        const double mb = mean_direction_x(b, d);
        CHECK(std::abs(ma - mb) < 1e-6);
    }
}

TEST_CASE("integrate: reflection equivariance over a short horizon") {
    const ChuaParams p(10, 13.3, -1.0703, 0.0003);
    IntegratorSettings cfg;
    cfg.method = Method::Rk4Fixed;
    cfg.step = 1e-3;
    cfg.t_transient = 0.0;
    cfg.t_sample = 10.0;
    const State s0(1.3, -0.4, 2.0);
    const IntegrationResult a = integrate(s0, p, cfg);
    const IntegrationResult b = integrate(s0.negated(), p, cfg);
    REQUIRE(a.trajectory.states.size() == b.trajectory.states.size());
    for (std::size_t i = 0; i < a.trajectory.states.size(); ++i) {
        CHECK(std::abs(a.trajectory.states[i].x + b.trajectory.states[i].x) < 1e-9);
        CHECK(std::abs(a.trajectory.states[i].y + b.trajectory.states[i].y) < 1e-9);
        CHECK(std::abs(a.trajectory.states[i].z + b.trajectory.states[i].z) < 1e-9);
    }
}

TEST_CASE("poincare: max_crossings caps the list without a truncation flag") {
    const ChuaParams p(10, 20, 0.0375, -0.7875);
    const PoincareResult r = poincare_crossings(State(0.01, 0, 0), p, quick(300, 100), 5);
    CHECK(r.crossings.size() == 5);
    CHECK_FALSE(r.truncated);
}
