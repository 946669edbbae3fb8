#pragma once

#include "burgers/path.hpp"
#include "burgers/rng.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace burgers {

// Correlated planar Brownian motion with per-unit-time covariance
// [[(1-p)/2, p/2], [p/2, (1-p)/2]] and the linear map A that straightens
// the first quadrant into the wedge {0 <= arg <= pi/(2 mu)} while turning
// the motion into a standard one (A Sigma A^T = I).
struct BmConfig {
    double p = 0.0;
    double var = 0.0; // (1-p)/2
    double cov = 0.0; // p/2
    double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;
    double det_a = 0.0;
    double mu = 0.0;
    double dt = 0.0;
    std::uint64_t seed = 0;
};

// Throws OutOfRange unless p in (0, 1/2) and dt > 0.
BmConfig bm_config(double p, double dt, std::uint64_t seed = 0);

std::pair<double, double> apply_a(const BmConfig& cfg, double u, double v);

// Density of the motion at time t started from the origin and killed on
// leaving the quadrant, evaluated at z = (u, v). Exactly zero on both
// boundary rays. Throws OutOfCone on negative coordinates, OutOfRange on
// t <= 0.
double endpoint_density(const BmConfig& cfg, double t, double u, double v);

// Monte Carlo table of P^z(path stays in the open quadrant for `horizon`)
// over a rectangular grid of start points, bilinear in between. Boundary
// nodes are exactly zero; lookups clamp to the grid box from above.
class SurvivalGrid {
  public:
    SurvivalGrid(const BmConfig& cfg, double horizon, double u_max, double v_max,
                 int cells_u, int cells_v, int paths_per_node);
    SurvivalGrid(double horizon, double u_max, double v_max,
                 std::vector<std::vector<double>> node_values);

    double horizon() const { return horizon_; }
    double u_max() const { return u_max_; }
    double v_max() const { return v_max_; }
    double at(double u, double v) const; // throws OutOfCone on negatives

  private:
    double horizon_ = 0.0;
    double u_max_ = 0.0;
    double v_max_ = 0.0;
    std::vector<std::vector<double>> values_; // [iu][iv], node grid
};

// Survival estimates below this are treated as degenerate.
inline constexpr double survival_floor = 1e-9;

// Unnormalized reweighting density endpoint_density(1-t, z) / survival(z);
// callers self-normalize. The survival table must be built for horizon 1-t.
// Throws OutOfCone unless z is strictly inside the quadrant, OutOfRange on
// t outside (0,1) or a horizon mismatch, DegenerateSurvival below the floor.
double g_density(const BmConfig& cfg, double t, double u, double v,
                 const SurvivalGrid& survival);

// Unconditioned motion on the grid 0, dt, ..., ~T with exact per-step
// increment covariance Sigma * dt.
GridPath sample_correlated_bm(const BmConfig& cfg, double T, std::pair<double, double> start,
                              Rng& rng);

// Bridge from start to end in time T; each step draws from the exact
// conditional law, so the endpoint is hit exactly.
GridPath sample_bridge(const BmConfig& cfg, double T, std::pair<double, double> start,
                       std::pair<double, double> end, Rng& rng);

// One rejection trial for the quadrant-conditioned motion: true and a full
// path in `out` when every grid value stays in the closed quadrant; aborts
// early on the first exit.
bool try_quadrant_trial(const BmConfig& cfg, double T, std::pair<double, double> start,
                        Rng& rng, GridPath& out);

// Motion from `start` conditioned to stay in the quadrant until T.
// Throws Exhausted after max_trials rejected trials.
GridPath sample_quadrant_conditioned(const BmConfig& cfg, double T,
                                     std::pair<double, double> start, Rng& rng,
                                     std::int64_t max_trials);

// Quadrant meander started one grid unit inside the corner, at
// (sqrt(dt), sqrt(dt)); the lift offset is the documented dt convention.
GridPath sample_meander(const BmConfig& cfg, double T, Rng& rng, std::int64_t max_trials);

// Endpoint window for the excursion approximation: the path must pass
// through [box_lo, box_hi]^2 = [delta^{1/2}/c, c delta^{1/2}]^2 at 1-delta.
struct ExcursionWindow {
    double delta = 0.0;
    double c = 2.0;

    double box_lo() const;
    double box_hi() const;
};

struct Excursion {
    GridPath path;
    double delta = 0.0;
    std::int64_t trials = 0;
};

// Meander on [0, 1-delta] conditioned into the window box at 1-delta, then
// closed to the origin by a linear ramp over [1-delta, 1]. Throws Exhausted
// with the measured acceptance rate in the message.
Excursion sample_excursion(const BmConfig& cfg, const ExcursionWindow& window, Rng& rng,
                           std::int64_t max_trials);

// First passage race between {U = b} and {V = zeta} at grid resolution:
// u_first is true when U crosses strictly first (a same-step tie counts as
// a V win). Throws Exhausted when neither happens by t_max.
struct FirstPassage {
    double time = 0.0;
    double v_at_time = 0.0;
    bool u_first = false;
};

FirstPassage first_passage_pair(const BmConfig& cfg, double b, double zeta, Rng& rng,
                                double t_max);

// CSV exports: "t,u,v" rows for paths, "u,v,f" rows for density tables.
std::string grid_path_csv(const GridPath& path);
std::string density_table_csv(const BmConfig& cfg, double t, double u_max, double v_max,
                              int cells_u, int cells_v);

} // namespace burgers
