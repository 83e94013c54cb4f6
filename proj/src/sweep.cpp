#include "chua/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace chua {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    return v;
}

ChuaParams with_swept(const ChuaParams& base, SweptParam which, double value) {
    ChuaParams p = base;
    switch (which) {
        case SweptParam::G0: p.g0 = value; break;
        case SweptParam::I0: p.I0 = value; break;
        case SweptParam::Alpha: return ChuaParams(value, base.beta, base.g0, base.I0);
        case SweptParam::Beta: return ChuaParams(base.alpha, value, base.g0, base.I0);
    }
    return p;
}

ChuaParams with_axis(const ChuaParams& base, GridAxis axis, double value) {
    switch (axis) {
        case GridAxis::Alpha: return ChuaParams(value, base.beta, base.g0, base.I0);
        case GridAxis::Beta: return ChuaParams(base.alpha, value, base.g0, base.I0);
        case GridAxis::G0: return ChuaParams(base.alpha, base.beta, value, base.I0);
        case GridAxis::I0: return ChuaParams(base.alpha, base.beta, base.g0, value);
        case GridAxis::G0PlusI0:
            // The composite axis holds I0 fixed and moves g0.
            return ChuaParams(base.alpha, base.beta, value - base.I0, base.I0);
    }
    return base;
}

void BifurcationSpec::validate() const {
    if (!(range[0] < range[1])) throw std::invalid_argument("BifurcationSpec: lo < hi required");
    if (n_points < 2) throw std::invalid_argument("BifurcationSpec: n_points >= 2 required");
    if (directions.empty()) throw std::invalid_argument("BifurcationSpec: no directions");
    integrator.validate();
}

void GridSpec::validate() const {
    if (!(x_range[0] < x_range[1]) || !(y_range[0] < y_range[1]))
        throw std::invalid_argument("GridSpec: ranges must satisfy lo < hi");
    if (x_points < 1 || y_points < 1) throw std::invalid_argument("GridSpec: empty grid");
    if (random_ics < 0) throw std::invalid_argument("GridSpec: random_ics < 0");
    integrator.validate();
}

namespace {

// Settle onto the local attractor without diagnostics; used by the serial
// continuation pass. Returns false on divergence.
bool settle(State& s, const ChuaParams& p, const IntegratorSettings& cfg) {
    IntegratorSettings quick = cfg;
    quick.t_sample = 0.0;
    const IntegrationResult r = integrate(s, p, quick);
    if (r.status != SimStatus::Completed) return false;
    s = r.final_state;
    return true;
}

State perturbed(const State& s) { return State(s.x + 1e-6, s.y, s.z); }

struct PointTask {
    double value;
    State ic;
    bool pre_diverged;
};

template <class Fn>
void for_each_index(int n, int n_workers, Fn&& fn) {
#ifdef _OPENMP
    if (n_workers != 1) {
        if (n_workers > 0) {
#pragma omp parallel for schedule(static) num_threads(n_workers)
            for (int i = 0; i < n; ++i) fn(i);
        } else {
#pragma omp parallel for schedule(static)
            for (int i = 0; i < n; ++i) fn(i);
        }
        return;
    }
#else
    (void)n_workers;
#endif
    for (int i = 0; i < n; ++i) fn(i);
}

std::vector<BifurcationRecord> run_bifurcation(const BifurcationSpec& spec, int n_workers) {
    spec.validate();
    const std::vector<double> values = linspace(spec.range[0], spec.range[1], spec.n_points);
    std::vector<BifurcationRecord> records;
    records.reserve(spec.directions.size() * values.size());

    IntegratorSettings diag_cfg = spec.integrator;
    diag_cfg.t_transient = 0.0;  // continuation already settled each point

    for (std::size_t d = 0; d < spec.directions.size(); ++d) {
        const SweepDirection dir = spec.directions[d];

        // Pass A (serial when inheriting): fix the initial condition of every
        // point. Inheritance hands the settled final state to the neighbor,
        // nudged by +1e-6 in x to avoid riding an unstable manifold.
        std::vector<PointTask> tasks(values.size());
        if (dir == SweepDirection::ColdStart) {
            for (std::size_t i = 0; i < values.size(); ++i)
                tasks[i] = {values[i], spec.ic_cold, false};
        } else {
            const bool forward = dir == SweepDirection::ForwardInherit;
            State carry = spec.ic_cold;
            bool carry_ok = true;
            for (std::size_t k = 0; k < values.size(); ++k) {
                const std::size_t i = forward ? k : values.size() - 1 - k;
                if (!carry_ok) {
                    carry = spec.ic_cold;  // reseed after a divergent point
                    carry_ok = true;
                }
                State start = carry;
                const ChuaParams p = with_swept(spec.p_base, spec.swept, values[i]);
                const bool ok = settle(start, p, spec.integrator);
                tasks[i] = {values[i], ok ? start : spec.ic_cold, !ok};
                if (ok) {
                    carry = perturbed(start);
                } else {
                    carry_ok = false;
                }
            }
        }

        // Pass B: per-point diagnostics, parallel across points.
        std::vector<BifurcationRecord> batch(values.size());
        for_each_index(static_cast<int>(values.size()), n_workers, [&](int i) {
            const PointTask& task = tasks[static_cast<std::size_t>(i)];
            BifurcationRecord rec;
            rec.swept_value = task.value;
            rec.branch = static_cast<int>(d);
            const ChuaParams p = with_swept(spec.p_base, spec.swept, task.value);
            if (task.pre_diverged) {
                rec.label = {AttractorType::Diverged, 0};
            } else {
                try {
                    const PointDiagnostics pd =
                        analyze_point(task.ic, p, diag_cfg, spec.max_crossings, spec.thresholds);
                    rec.label = pd.label;
                    rec.crossings.reserve(pd.poincare.crossings.size());
                    for (const auto& c : pd.poincare.crossings)
                        rec.crossings.push_back({c.state.x, c.direction});
                } catch (const std::exception&) {
                    rec.label = {AttractorType::Undecided, 0};
                }
            }
            batch[static_cast<std::size_t>(i)] = std::move(rec);
        });
        for (auto& rec : batch) records.push_back(std::move(rec));
    }
    return records;
}

std::vector<AttractorClass> unique_labels(std::vector<AttractorClass> labels) {
    std::sort(labels.begin(), labels.end(), [](const AttractorClass& a, const AttractorClass& b) {
        if (a.type != b.type) return static_cast<int>(a.type) < static_cast<int>(b.type);
        return a.period < b.period;
    });
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    return labels;
}

std::vector<State> cell_probes(const GridSpec& spec, const ChuaParams& p, std::size_t cell_index) {
    std::vector<State> probes = spec.ics;
    if (probes.empty()) {
        probes.emplace_back(0.01, 0.0, 0.0);
        probes.emplace_back(-0.01, 0.0, 0.0);
        const auto eqs = equilibria(p);
        if (eqs.size() > 1) {
            probes.emplace_back(eqs[1].x + 0.01, eqs[1].y, eqs[1].z);
            probes.emplace_back(eqs[2].x - 0.01, eqs[2].y, eqs[2].z);
        }
    }
    if (spec.random_ics > 0) {
        // Per-cell seeding keeps the grid reproducible for any worker count.
        std::mt19937_64 rng(spec.seed ^ (0x9e3779b97f4a7c15ULL * (cell_index + 1)));
        std::uniform_real_distribution<double> ux(-15.0, 15.0), uy(-3.0, 3.0), uz(-20.0, 20.0);
        for (int k = 0; k < spec.random_ics; ++k) probes.emplace_back(ux(rng), uy(rng), uz(rng));
    }
    return probes;
}

ClassificationGrid run_map(const GridSpec& spec, int n_workers) {
    spec.validate();
    ClassificationGrid grid{spec, {}};
    const std::vector<double> xs = linspace(spec.x_range[0], spec.x_range[1], spec.x_points);
    const std::vector<double> ys = linspace(spec.y_range[0], spec.y_range[1], spec.y_points);
    const int n = spec.x_points * spec.y_points;
    grid.cells.resize(static_cast<std::size_t>(n));

    IntegratorSettings cfg = spec.integrator;

    for_each_index(n, n_workers, [&](int idx) {
        GridCell& cell = grid.cells[static_cast<std::size_t>(idx)];
        const int ix = idx % spec.x_points;
        const int iy = idx / spec.x_points;
        try {
            const ChuaParams p =
                with_axis(with_axis(spec.p_base, spec.y_axis, ys[static_cast<std::size_t>(iy)]),
                          spec.x_axis, xs[static_cast<std::size_t>(ix)]);
            if (spec.backend == MapBackend::Analytic) {
                cell.analytic = classify_region(p);
            } else {
                std::vector<AttractorClass> found;
                for (const State& ic : cell_probes(spec, p, static_cast<std::size_t>(idx))) {
                    const PointDiagnostics pd =
                        analyze_point(ic, p, cfg, spec.max_crossings, spec.thresholds);
                    found.push_back(pd.label);
                }
                cell.numeric = unique_labels(std::move(found));
            }
        } catch (const std::exception&) {
            cell.failed = true;  // recorded, never aborts the grid
        }
    });
    return grid;
}

}  // namespace

std::vector<BifurcationRecord> bifurcation_diagram(const BifurcationSpec& spec, int n_workers) {
    return run_bifurcation(spec, n_workers);
}

std::vector<BifurcationRecord> bifurcation_diagram_serial(const BifurcationSpec& spec) {
    return run_bifurcation(spec, 1);
}

std::vector<EquilibriumBranchPoint> equilibrium_branches(const BifurcationSpec& spec) {
    spec.validate();
    std::vector<EquilibriumBranchPoint> out;
    for (double v : linspace(spec.range[0], spec.range[1], spec.n_points)) {
        const ChuaParams p = with_swept(spec.p_base, spec.swept, v);
        for (const State& eq : equilibria(p)) {
            bool stable = false;
            try {
                stable = equilibrium_eigenvalues(eq, p).stable;
            } catch (const std::exception&) {
                // keep the branch point with stable = false if eigenvalues fail
            }
            out.push_back({v, eq.x, stable});
        }
    }
    return out;
}

ClassificationGrid parameter_plane_map(const GridSpec& spec, int n_workers) {
    return run_map(spec, n_workers);
}

ClassificationGrid parameter_plane_map_serial(const GridSpec& spec) { return run_map(spec, 1); }

const char* to_string(SweptParam s) {
    switch (s) {
        case SweptParam::G0: return "g0";
        case SweptParam::I0: return "I0";
        case SweptParam::Alpha: return "alpha";
        case SweptParam::Beta: return "beta";
    }
    return "?";
}

const char* to_string(SweepDirection d) {
    switch (d) {
        case SweepDirection::ForwardInherit: return "forward";
        case SweepDirection::BackwardInherit: return "backward";
        case SweepDirection::ColdStart: return "cold";
    }
    return "?";
}

const char* to_string(GridAxis a) {
    switch (a) {
        case GridAxis::Alpha: return "alpha";
        case GridAxis::Beta: return "beta";
        case GridAxis::G0: return "g0";
        case GridAxis::I0: return "I0";
        case GridAxis::G0PlusI0: return "g0_plus_I0";
    }
    return "?";
}

const char* to_string(MapBackend b) {
    return b == MapBackend::Analytic ? "analytic" : "numeric";
}

}  // namespace chua
