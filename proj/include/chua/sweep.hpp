#pragma once

// Bifurcation diagrams with bidirectional continuation and 2-D parameter
// plane maps, analytic (describing-function classifier) or numeric
// (integrate -> crossings -> Lyapunov -> classify). The per-point work is
// embarrassingly parallel; work is partitioned by index and results land in
// index-ordered slots, so output is identical for any worker count. Serial
// reference implementations are kept alongside the OpenMP kernels.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chua/dfan.hpp"
#include "chua/diagnostics.hpp"

namespace chua {

enum class SweptParam { G0, I0, Alpha, Beta };

enum class SweepDirection { ForwardInherit, BackwardInherit, ColdStart };

struct BifurcationSpec {
    ChuaParams p_base;
    SweptParam swept = SweptParam::G0;
    std::array<double, 2> range{};  ///< [lo, hi], lo < hi
    int n_points = 2;
    std::vector<SweepDirection> directions{SweepDirection::ForwardInherit,
                                           SweepDirection::BackwardInherit};
    State ic_cold{0.01, 0.0, 0.0};
    IntegratorSettings integrator;
    std::size_t max_crossings = 512;
    ClassifierThresholds thresholds;

    void validate() const;
};

struct CrossingSample {
    double x;
    CrossingDirection direction;
};

struct BifurcationRecord {
    double swept_value = 0.0;
    std::vector<CrossingSample> crossings;
    AttractorClass label;
    int branch = 0;  ///< index into the directions list (continuation lineage)
};

std::vector<BifurcationRecord> bifurcation_diagram(const BifurcationSpec& spec, int n_workers = 0);
std::vector<BifurcationRecord> bifurcation_diagram_serial(const BifurcationSpec& spec);

/// Analytic equilibrium branches along the sweep (origin and +-P1 with
/// local stability), reported separately from the simulated records.
struct EquilibriumBranchPoint {
    double swept_value;
    double x;
    bool stable;
};
std::vector<EquilibriumBranchPoint> equilibrium_branches(const BifurcationSpec& spec);

enum class GridAxis { Alpha, Beta, G0, I0, G0PlusI0 };
enum class MapBackend { Analytic, Numeric };

struct GridSpec {
    ChuaParams p_base;
    GridAxis x_axis = GridAxis::G0PlusI0;
    std::array<double, 2> x_range{};
    int x_points = 2;
    GridAxis y_axis = GridAxis::Beta;
    std::array<double, 2> y_range{};
    int y_points = 2;
    MapBackend backend = MapBackend::Analytic;
    IntegratorSettings integrator;
    std::vector<State> ics;       ///< numeric probes; empty selects the default 4-IC set
    int random_ics = 0;           ///< extra per-cell probes drawn from the seeded box
    std::uint64_t seed = 0;
    std::size_t max_crossings = 256;
    ClassifierThresholds thresholds;

    void validate() const;
};

struct GridCell {
    RegionLabel analytic;                 ///< Analytic backend
    std::vector<AttractorClass> numeric;  ///< Numeric backend: full label set found
    bool failed = false;
};

struct ClassificationGrid {
    GridSpec spec;
    std::vector<GridCell> cells;  ///< row-major, index = iy * x_points + ix

    [[nodiscard]] const GridCell& at(int ix, int iy) const {
        return cells[static_cast<std::size_t>(iy) * spec.x_points + ix];
    }
};

ClassificationGrid parameter_plane_map(const GridSpec& spec, int n_workers = 0);
ClassificationGrid parameter_plane_map_serial(const GridSpec& spec);

/// Evenly spaced sweep/grid coordinates, endpoints included.
std::vector<double> linspace(double lo, double hi, int n);

ChuaParams with_swept(const ChuaParams& base, SweptParam which, double value);
ChuaParams with_axis(const ChuaParams& base, GridAxis axis, double value);

const char* to_string(SweptParam s);
const char* to_string(SweepDirection d);
const char* to_string(GridAxis a);
const char* to_string(MapBackend b);

}  // namespace chua
