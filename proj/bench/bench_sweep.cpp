// Benchmark comparing the serial reference sweep kernels against the
// OpenMP-parallel versions on a numeric parameter-plane map and a
// cold-start bifurcation batch.
//
//   chua_bench [grid_edge] [sweep_points]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "chua/sweep.hpp"

using namespace chua;

namespace {

double seconds_of(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

GridSpec map_case(int edge) {
    GridSpec gs{ChuaParams(10.0, 13.3, 0.0, 0.0003)};
    gs.x_axis = GridAxis::G0PlusI0;
    gs.x_range = {-1.15, -0.95};
    gs.x_points = edge;
    gs.y_axis = GridAxis::Beta;
    gs.y_range = {13.0, 13.6};
    gs.y_points = edge;
    gs.backend = MapBackend::Numeric;
    gs.integrator.t_transient = 200.0;
    gs.integrator.t_sample = 150.0;
    gs.max_crossings = 400;
    return gs;
}

BifurcationSpec sweep_case(int points) {
    BifurcationSpec spec{ChuaParams(10.0, 20.0, 0.0, -0.7875)};
    spec.swept = SweptParam::G0;
    spec.range = {0.05, 0.12};  // inside the cascade window
    spec.n_points = points;
    spec.directions = {SweepDirection::ColdStart};
    spec.ic_cold = State(0.01, 0, 0);
    spec.integrator.t_transient = 250.0;
    spec.integrator.t_sample = 200.0;
    spec.max_crossings = 600;
    return spec;
}

}  // namespace

int main(int argc, char** argv) {
    const int edge = argc > 1 ? std::atoi(argv[1]) : 6;
    const int points = argc > 2 ? std::atoi(argv[2]) : 48;

#ifdef _OPENMP
    const int max_threads = omp_get_max_threads();
#else
    const int max_threads = 1;
    std::puts("built without OpenMP; parallel rows degenerate to the serial path");
#endif

    const GridSpec gs = map_case(edge);
    const BifurcationSpec bs = sweep_case(points);

    std::printf("numeric map %dx%d cells, cold sweep %d points, max threads %d\n\n", edge, edge,
                points, max_threads);
    std::printf("%-26s %10s %10s\n", "kernel", "time [s]", "speedup");

    const double map_serial = seconds_of([&] { parameter_plane_map_serial(gs); });
    std::printf("%-26s %10.3f %10s\n", "map serial reference", map_serial, "1.00x");
    for (int w = 2; w <= max_threads; w *= 2) {
        const double t = seconds_of([&] { parameter_plane_map(gs, w); });
        std::printf("map omp %-18d %10.3f %9.2fx\n", w, t, map_serial / t);
    }

    const double sweep_serial = seconds_of([&] { bifurcation_diagram_serial(bs); });
    std::printf("%-26s %10.3f %10s\n", "sweep serial reference", sweep_serial, "1.00x");
    for (int w = 2; w <= max_threads; w *= 2) {
        const double t = seconds_of([&] { bifurcation_diagram(bs, w); });
        std::printf("sweep omp %-16d %10.3f %9.2fx\n", w, t, sweep_serial / t);
    }
    return 0;
}
