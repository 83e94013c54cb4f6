#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

#include "chua/csvio.hpp"
#include "chua/sweep.hpp"

using namespace chua;

namespace {

IntegratorSettings fast_settings(double transient, double sample) {
    IntegratorSettings cfg;
    cfg.t_transient = transient;
    cfg.t_sample = sample;
    cfg.rel_tol = 1e-8;
    return cfg;
}

// Byte-stable serialization used for the determinism comparisons.
std::string serialize(const std::vector<BifurcationRecord>& recs) {
    std::string s;
    for (const auto& r : recs) {
        s += format_double(r.swept_value);
        s += '|';
        s += r.label.to_string();
        s += '|';
        s += std::to_string(r.branch);
        for (const auto& c : r.crossings) {
            s += ',';
            s += format_double(c.x);
            s += c.direction == CrossingDirection::NegToPos ? '+' : '-';
        }
        s += '\n';
    }
    return s;
}

std::string serialize(const ClassificationGrid& g) {
    std::string s;
    for (const auto& c : g.cells) {
        s += c.analytic.to_string();
        for (const auto& a : c.numeric) {
            s += ';';
            s += a.to_string();
        }
        s += c.failed ? "!\n" : "\n";
    }
    return s;
}

}  // namespace

TEST_CASE("linspace endpoints and spacing") {
    const auto v = linspace(-1.0, 1.0, 5);
    REQUIRE(v.size() == 5);
    CHECK(v.front() == -1.0);
    CHECK(v.back() == 1.0);
    CHECK(v[2] == 0.0);
}

TEST_CASE("with_swept / with_axis parameter plumbing") {
    const ChuaParams base(10, 20, 0.1, -0.5);
    CHECK(with_swept(base, SweptParam::G0, 0.7).g0 == 0.7);
    CHECK(with_swept(base, SweptParam::I0, 0.2).I0 == 0.2);
    CHECK(with_swept(base, SweptParam::Beta, 15.0).beta == 15.0);
    const ChuaParams c = with_axis(base, GridAxis::G0PlusI0, -0.75);
    CHECK(c.g0 + c.I0 == doctest::Approx(-0.75).epsilon(1e-15));
    CHECK(c.I0 == base.I0);
}

TEST_CASE("spec validation") {
    BifurcationSpec spec{ChuaParams(10, 20, 0, -0.7875)};
    spec.range = {1.0, -1.0};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    GridSpec gs{ChuaParams(10, 20, 0, -0.7875)};
    gs.x_range = {0.0, 1.0};
    gs.y_range = {1.0, 1.0};
    CHECK_THROWS_AS(gs.validate(), std::invalid_argument);
}

TEST_CASE("bifurcation diagram is bitwise deterministic across worker counts") {
    BifurcationSpec spec{ChuaParams(10.0, 20.0, 0.0, -0.7875)};
    spec.swept = SweptParam::G0;
    spec.range = {0.0375, 0.1375};  // sigma in [-0.75, -0.65]
    spec.n_points = 24;
    spec.directions = {SweepDirection::ForwardInherit, SweepDirection::BackwardInherit};
    spec.integrator = fast_settings(150, 100);
    spec.max_crossings = 400;

    const std::string serial = serialize(bifurcation_diagram_serial(spec));
    const std::string two = serialize(bifurcation_diagram(spec, 2));
    const std::string four = serialize(bifurcation_diagram(spec, 4));
    CHECK(serial == two);
    CHECK(serial == four);
    CHECK(serial.find("chaotic") != std::string::npos);
}

TEST_CASE("numeric map is bitwise deterministic across worker counts") {
    GridSpec gs{ChuaParams(10.0, 13.3, 0.0, 0.0003)};
    gs.x_axis = GridAxis::G0PlusI0;
    gs.x_range = {-0.12, -0.02};
    gs.x_points = 4;
    gs.y_axis = GridAxis::Beta;
    gs.y_range = {13.0, 14.0};
    gs.y_points = 2;
    gs.backend = MapBackend::Numeric;
    gs.integrator = fast_settings(150, 80);
    gs.max_crossings = 200;

    const std::string serial = serialize(parameter_plane_map_serial(gs));
    const std::string two = serialize(parameter_plane_map(gs, 2));
    const std::string four = serialize(parameter_plane_map(gs, 4));
    CHECK(serial == two);
    CHECK(serial == four);
}

TEST_CASE("forward and backward inheritance agree on the single-attractor region") {
    BifurcationSpec spec{ChuaParams(10.0, 13.3, 0.0, 0.0003)};
    spec.swept = SweptParam::G0;
    spec.range = {-0.0703, -0.0153};  // sigma in (1/p3, 0), clear of the slow Hopf tail
    spec.n_points = 10;
    spec.directions = {SweepDirection::ForwardInherit, SweepDirection::BackwardInherit};
    spec.integrator = fast_settings(400, 80);
    const auto recs = bifurcation_diagram(spec, 0);
    REQUIRE(recs.size() == 20);
    for (const auto& r : recs) CHECK(r.label == AttractorClass{AttractorType::FixedPoint, 0});
}

TEST_CASE("mirrored cold starts produce reflected crossing values") {
    BifurcationSpec spec{ChuaParams(10.0, 20.0, 0.0, -0.7875)};
    spec.swept = SweptParam::G0;
    spec.range = {0.0375, 0.05};  // symmetric w2 cycle regime
    spec.n_points = 2;
    spec.directions = {SweepDirection::ColdStart};
    spec.integrator = fast_settings(300, 60);
    spec.ic_cold = State(0.01, 0, 0);
    const auto a = bifurcation_diagram(spec, 0);
    spec.ic_cold = State(-0.01, 0, 0);
    const auto b = bifurcation_diagram(spec, 0);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        REQUIRE(!a[i].crossings.empty());
        // Mean same-direction crossing of run A matches the negated mean of
        // the opposite direction in run B.
        auto mean_of = [](const BifurcationRecord& r, CrossingDirection d) {
            double s = 0;
            int n = 0;
            for (const auto& c : r.crossings)
                if (c.direction == d) {
                    s += c.x;
                    ++n;
                }
            return s / n;
        };
        const double ma = mean_of(a[i], CrossingDirection::NegToPos);
        const double mb = mean_of(b[i], CrossingDirection::PosToNeg);
        CHECK(std::abs(ma + mb) < 1e-6);
    }
}

TEST_CASE("analytic map reproduces the band structure against classify_region") {
    GridSpec gs{ChuaParams(10.0, 20.0, 0.0, -0.7875)};
    gs.x_axis = GridAxis::G0PlusI0;
    gs.x_range = {-1.5, 0.5};
    gs.x_points = 21;
    gs.y_axis = GridAxis::Beta;
    gs.y_range = {12.0, 28.0};
    gs.y_points = 9;
    gs.backend = MapBackend::Analytic;
    const ClassificationGrid g = parameter_plane_map(gs, 0);
    REQUIRE(g.cells.size() == 21 * 9);
    const auto xs = linspace(-1.5, 0.5, 21);
    const auto ys = linspace(12.0, 28.0, 9);
    for (int iy = 0; iy < 9; ++iy)
        for (int ix = 0; ix < 21; ++ix) {
            const ChuaParams p =
                with_axis(with_axis(gs.p_base, GridAxis::Beta, ys[iy]), GridAxis::G0PlusI0, xs[ix]);
            CHECK(g.at(ix, iy).analytic == classify_region(p));
        }
}

TEST_CASE("numeric 1x1 grid at a globally stable point finds only the origin") {
    GridSpec gs{ChuaParams(10.0, 20.0, 0.3, 0.2)};  // (g0+I0)I0 > 0, g0+I0 = 0.5
    gs.x_axis = GridAxis::G0;
    gs.x_range = {0.3, 0.31};
    gs.x_points = 1;
    gs.y_axis = GridAxis::Beta;
    gs.y_range = {20.0, 21.0};
    gs.y_points = 1;
    gs.backend = MapBackend::Numeric;
    gs.integrator = fast_settings(200, 50);
    const ClassificationGrid g = parameter_plane_map(gs, 0);
    REQUIRE(g.cells.size() == 1);
    REQUIRE(g.cells[0].numeric.size() == 1);
    CHECK(g.cells[0].numeric[0] == AttractorClass{AttractorType::FixedPoint, 0});
}

TEST_CASE("numeric backend agrees with the analytic origin-only region") {
    // Cells strictly inside (1/p3, 0) at beta = 13.3, I0 > 0.
    GridSpec gs{ChuaParams(10.0, 13.3, 0.0, 0.0003)};
    gs.x_axis = GridAxis::G0PlusI0;
    gs.x_range = {-0.06, -0.02};
    gs.x_points = 5;
    gs.y_axis = GridAxis::Beta;
    gs.y_range = {13.0, 13.6};
    gs.y_points = 2;
    gs.backend = MapBackend::Numeric;
    gs.integrator = fast_settings(500, 100);
    const ClassificationGrid g = parameter_plane_map(gs, 0);
    int agree = 0;
    for (const auto& c : g.cells) {
        REQUIRE(!c.failed);
        bool only_origin = true;
        for (const auto& a : c.numeric)
            if (!(a == AttractorClass{AttractorType::FixedPoint, 0})) only_origin = false;
        if (only_origin) ++agree;
    }
    CHECK(agree == static_cast<int>(g.cells.size()));
}

TEST_CASE("per-point divergence is recorded and the sweep continues") {
    BifurcationSpec spec{ChuaParams(10.0, 20.0, 0.0, -0.7875)};
    spec.swept = SweptParam::G0;
    spec.range = {0.2875, 0.3875};  // sigma in [-0.5, -0.4]: unstable zone
    spec.n_points = 6;
    spec.directions = {SweepDirection::ColdStart};
    spec.integrator = fast_settings(600, 200);  // outlast chaotic-saddle transients
    const auto recs = bifurcation_diagram(spec, 0);
    REQUIRE(recs.size() == 6);
    for (const auto& r : recs) CHECK(r.label.type == AttractorType::Diverged);
}

TEST_CASE("equilibrium branches carry the pitchfork and stability flips") {
    BifurcationSpec spec{ChuaParams(10.0, 13.3, 0.0, 0.0003)};
    spec.swept = SweptParam::G0;
    spec.range = {-1.2003, -0.0003};
    spec.n_points = 121;
    const auto pts = equilibrium_branches(spec);

    // Origin exists everywhere; +-P1 appear only for g0 < -1 - I0.
    int with_pair = 0;
    for (const auto& q : pts)
        if (std::abs(q.x) > 1e-12) ++with_pair;
    CHECK(with_pair > 0);
    for (const auto& q : pts) {
        const double sigma = q.swept_value + 0.0003;
        if (std::abs(q.x) > 1e-12) CHECK(sigma < -1.0 + 1e-9);
        if (std::abs(q.x) < 1e-12) {
            // Origin stability pattern: stable on (-1, 1/p2) and (1/p3, inf).
            // Skip swept values that land exactly on a bifurcation locus.
            const double d_b = std::min({std::abs(sigma + 1.0),
                                         std::abs(sigma + 0.96170377700477805),
                                         std::abs(sigma + 0.13829622299522198)});
            if (d_b < 1e-9) continue;
            const bool inside_stable =
                (sigma > -1.0 && sigma < -0.96170377700477805) ||
                sigma > -0.13829622299522198;
            CHECK(q.stable == inside_stable);
        }
    }
}
