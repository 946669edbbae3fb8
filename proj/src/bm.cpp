#include "burgers/bm.hpp"

#include "burgers/errors.hpp"
#include "burgers/params.hpp"

#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>

namespace burgers {

namespace {

std::size_t step_count(double T, double dt) {
    auto steps = static_cast<std::size_t>(std::llround(T / dt));
    return steps == 0 ? 1 : steps;
}

// Increments: dU = s x1, dV = s (rho x1 + sqrt(1 - rho^2) x2) with
// s^2 = var * dt and rho = cov / var, the Cholesky factor of Sigma dt.
struct StepDraw {
    double s;
    double rho;
    double rho_c;

    explicit StepDraw(const BmConfig& cfg, double dt)
        : s(std::sqrt(cfg.var * dt)), rho(cfg.cov / cfg.var),
          rho_c(std::sqrt(1.0 - (cfg.cov / cfg.var) * (cfg.cov / cfg.var))) {}

    std::pair<double, double> operator()(Rng& rng) const {
        double x1 = 0.0, x2 = 0.0;
        rng.normal_pair(x1, x2);
        return {s * x1, s * (rho * x1 + rho_c * x2)};
    }
};

} // namespace

BmConfig bm_config(double p, double dt, std::uint64_t seed) {
    if (!(p > 0.0) || !(p < 0.5)) throw OutOfRange("bm_config needs p in (0, 1/2)");
    if (!(dt > 0.0)) throw OutOfRange("bm_config needs dt > 0");
    BmConfig cfg;
    cfg.p = p;
    cfg.var = (1.0 - p) / 2.0;
    cfg.cov = p / 2.0;
    const double scale = std::sqrt(2.0 * (1.0 - p) / (1.0 - 2.0 * p));
    cfg.a11 = scale;
    cfg.a12 = -scale * p / (1.0 - p);
    cfg.a21 = 0.0;
    cfg.a22 = scale * std::sqrt(1.0 - 2.0 * p) / (1.0 - p);
    cfg.det_a = 2.0 / std::sqrt(1.0 - 2.0 * p);
    cfg.mu = derive_params(p).mu;
    cfg.dt = dt;
    cfg.seed = seed;
    return cfg;
}

std::pair<double, double> apply_a(const BmConfig& cfg, double u, double v) {
    return {cfg.a11 * u + cfg.a12 * v, cfg.a21 * u + cfg.a22 * v};
}

double endpoint_density(const BmConfig& cfg, double t, double u, double v) {
    if (!(t > 0.0)) throw OutOfRange("endpoint_density needs t > 0");
    if (u < 0.0 || v < 0.0) throw OutOfCone("endpoint density point outside the quadrant");
    if (u == 0.0 || v == 0.0) return 0.0;
    auto [x, y] = apply_a(cfg, u, v);
    const double r2 = x * x + y * y;
    const double angle = std::atan2(y, x);
    const double amp = cfg.det_a /
                       (std::pow(2.0, cfg.mu) * std::tgamma(cfg.mu) * std::pow(t, 1.0 + cfg.mu));
    const double value =
        amp * std::pow(r2, cfg.mu) * std::exp(-r2 / (2.0 * t)) * std::sin(2.0 * cfg.mu * angle);
    return value > 0.0 ? value : 0.0;
}

SurvivalGrid::SurvivalGrid(const BmConfig& cfg, double horizon, double u_max, double v_max,
                           int cells_u, int cells_v, int paths_per_node)
    : horizon_(horizon), u_max_(u_max), v_max_(v_max) {
    if (!(horizon > 0.0) || !(u_max > 0.0) || !(v_max > 0.0) || cells_u < 1 || cells_v < 1 ||
        paths_per_node < 1)
        throw OutOfRange("survival grid needs positive extents and counts");
    const auto steps = step_count(horizon, cfg.dt);
    const StepDraw draw(cfg, cfg.dt);
    values_.assign(static_cast<std::size_t>(cells_u) + 1,
                   std::vector<double>(static_cast<std::size_t>(cells_v) + 1, 0.0));
    for (int iu = 1; iu <= cells_u; ++iu) {
        for (int iv = 1; iv <= cells_v; ++iv) {
            const double u0 = u_max * iu / cells_u;
            const double v0 = v_max * iv / cells_v;
            Rng rng(mix_seed(cfg.seed ^ 0x5346524944ull,
                             static_cast<std::uint64_t>(iu) * 4096 +
                                 static_cast<std::uint64_t>(iv)));
            int alive = 0;
            for (int path = 0; path < paths_per_node; ++path) {
                double cu = u0, cv = v0;
                bool ok = true;
                for (std::size_t j = 0; j < steps; ++j) {
                    auto [du, dv] = draw(rng);
                    cu += du;
                    cv += dv;
                    if (cu <= 0.0 || cv <= 0.0) {
                        ok = false;
                        break;
                    }
                }
                if (ok) ++alive;
            }
            values_[static_cast<std::size_t>(iu)][static_cast<std::size_t>(iv)] =
                static_cast<double>(alive) / paths_per_node;
        }
    }
}

SurvivalGrid::SurvivalGrid(double horizon, double u_max, double v_max,
                           std::vector<std::vector<double>> node_values)
    : horizon_(horizon), u_max_(u_max), v_max_(v_max), values_(std::move(node_values)) {
    if (values_.size() < 2 || values_[0].size() < 2)
        throw OutOfRange("survival grid needs at least a 2x2 node table");
}

double SurvivalGrid::at(double u, double v) const {
    if (u < 0.0 || v < 0.0) throw OutOfCone("survival lookup outside the quadrant");
    const auto nu = values_.size() - 1;
    const auto nv = values_[0].size() - 1;
    double x = std::min(u / u_max_, 1.0) * static_cast<double>(nu);
    double y = std::min(v / v_max_, 1.0) * static_cast<double>(nv);
    auto iu = std::min(static_cast<std::size_t>(x), nu - 1);
    auto iv = std::min(static_cast<std::size_t>(y), nv - 1);
    const double fu = x - static_cast<double>(iu);
    const double fv = y - static_cast<double>(iv);
    return values_[iu][iv] * (1 - fu) * (1 - fv) + values_[iu + 1][iv] * fu * (1 - fv) +
           values_[iu][iv + 1] * (1 - fu) * fv + values_[iu + 1][iv + 1] * fu * fv;
}

double g_density(const BmConfig& cfg, double t, double u, double v,
                 const SurvivalGrid& survival) {
    if (!(t > 0.0) || !(t < 1.0)) throw OutOfRange("g_density needs t in (0, 1)");
    if (!(u > 0.0) || !(v > 0.0)) throw OutOfCone("g_density point must be strictly inside");
    if (std::abs(survival.horizon() - (1.0 - t)) > 1e-9)
        throw OutOfRange("survival grid horizon does not match 1 - t");
    const double s = survival.at(u, v);
    if (s < survival_floor)
        throw DegenerateSurvival("survival estimate " + std::to_string(s) +
                                 " below floor " + std::to_string(survival_floor));
    return endpoint_density(cfg, 1.0 - t, u, v) / s;
}

GridPath sample_correlated_bm(const BmConfig& cfg, double T, std::pair<double, double> start,
                              Rng& rng) {
    if (!(T > 0.0)) throw OutOfRange("sample_correlated_bm needs T > 0");
    const auto steps = step_count(T, cfg.dt);
    const StepDraw draw(cfg, cfg.dt);
    GridPath path;
    path.dt = cfg.dt;
    path.u.reserve(steps + 1);
    path.v.reserve(steps + 1);
    path.u.push_back(start.first);
    path.v.push_back(start.second);
    for (std::size_t j = 0; j < steps; ++j) {
        auto [du, dv] = draw(rng);
        path.u.push_back(path.u.back() + du);
        path.v.push_back(path.v.back() + dv);
    }
    return path;
}

GridPath sample_bridge(const BmConfig& cfg, double T, std::pair<double, double> start,
                       std::pair<double, double> end, Rng& rng) {
    if (!(T > 0.0)) throw OutOfRange("sample_bridge needs T > 0");
    const auto steps = step_count(T, cfg.dt);
    GridPath path;
    path.dt = cfg.dt;
    path.u.reserve(steps + 1);
    path.v.reserve(steps + 1);
    path.u.push_back(start.first);
    path.v.push_back(start.second);
    for (std::size_t j = 1; j <= steps; ++j) {
        const double remaining = cfg.dt * static_cast<double>(steps - j + 1);
        const double frac = cfg.dt / remaining;
        const double mu_u = path.u.back() + frac * (end.first - path.u.back());
        const double mu_v = path.v.back() + frac * (end.second - path.v.back());
        if (j == steps) {
            path.u.push_back(end.first);
            path.v.push_back(end.second);
            continue;
        }
        // Conditional covariance of the next point is Sigma * dt (1 - dt/r).
        const double shrink = 1.0 - frac;
        const StepDraw draw(cfg, cfg.dt * shrink);
        auto [du, dv] = draw(rng);
        path.u.push_back(mu_u + du);
        path.v.push_back(mu_v + dv);
    }
    return path;
}

bool try_quadrant_trial(const BmConfig& cfg, double T, std::pair<double, double> start,
                        Rng& rng, GridPath& out) {
    const auto steps = step_count(T, cfg.dt);
    const StepDraw draw(cfg, cfg.dt);
    out.dt = cfg.dt;
    out.t0 = 0.0;
    out.u.clear();
    out.v.clear();
    out.u.reserve(steps + 1);
    out.v.reserve(steps + 1);
    out.u.push_back(start.first);
    out.v.push_back(start.second);
    for (std::size_t j = 0; j < steps; ++j) {
        auto [du, dv] = draw(rng);
        const double nu = out.u.back() + du;
        const double nv = out.v.back() + dv;
        if (nu < 0.0 || nv < 0.0) return false;
        out.u.push_back(nu);
        out.v.push_back(nv);
    }
    return true;
}

GridPath sample_quadrant_conditioned(const BmConfig& cfg, double T,
                                     std::pair<double, double> start, Rng& rng,
                                     std::int64_t max_trials) {
    if (!(T > 0.0)) throw OutOfRange("sample_quadrant_conditioned needs T > 0");
    if (start.first < 0.0 || start.second < 0.0)
        throw OutOfCone("quadrant-conditioned start outside the quadrant");
    GridPath path;
    for (std::int64_t trial = 1; trial <= max_trials; ++trial)
        if (try_quadrant_trial(cfg, T, start, rng, path)) return path;
    throw Exhausted("quadrant conditioning gave up after " + std::to_string(max_trials) +
                    " trials");
}

GridPath sample_meander(const BmConfig& cfg, double T, Rng& rng, std::int64_t max_trials) {
    const double lift = std::sqrt(cfg.dt);
    return sample_quadrant_conditioned(cfg, T, {lift, lift}, rng, max_trials);
}

double ExcursionWindow::box_lo() const { return std::sqrt(delta) / c; }
double ExcursionWindow::box_hi() const { return std::sqrt(delta) * c; }

Excursion sample_excursion(const BmConfig& cfg, const ExcursionWindow& window, Rng& rng,
                           std::int64_t max_trials) {
    if (!(window.delta > 0.0) || !(window.delta < 1.0) || !(window.c > 1.0))
        throw OutOfRange("excursion window needs delta in (0, 1) and c > 1");
    const double T1 = 1.0 - window.delta;
    const double lo = window.box_lo(), hi = window.box_hi();
    const double lift = std::sqrt(cfg.dt);
    GridPath path;
    for (std::int64_t trial = 1; trial <= max_trials; ++trial) {
        if (!try_quadrant_trial(cfg, T1, {lift, lift}, rng, path)) continue;
        const double eu = path.u.back(), ev = path.v.back();
        if (eu < lo || eu > hi || ev < lo || ev > hi) continue;
        const auto ramp_steps = step_count(window.delta, cfg.dt);
        for (std::size_t j = 1; j <= ramp_steps; ++j) {
            const double keep = 1.0 - static_cast<double>(j) / static_cast<double>(ramp_steps);
            path.u.push_back(eu * keep);
            path.v.push_back(ev * keep);
        }
        Excursion ex;
        ex.path = std::move(path);
        ex.delta = window.delta;
        ex.trials = trial;
        return ex;
    }
    throw Exhausted("excursion sampler gave up after " + std::to_string(max_trials) +
                    " trials (acceptance below " + std::to_string(1.0 / max_trials) + ")");
}

FirstPassage first_passage_pair(const BmConfig& cfg, double b, double zeta, Rng& rng,
                                double t_max) {
    if (!(b > 0.0) || !(zeta > 0.0)) throw OutOfRange("first_passage_pair needs b, zeta > 0");
    const StepDraw draw(cfg, cfg.dt);
    double u = 0.0, v = 0.0, t = 0.0;
    while (t < t_max) {
        auto [du, dv] = draw(rng);
        u += du;
        v += dv;
        t += cfg.dt;
        const bool u_hit = u >= b;
        const bool v_hit = v >= zeta;
        if (u_hit || v_hit) {
            FirstPassage fp;
            fp.time = t;
            fp.v_at_time = v;
            fp.u_first = u_hit && !v_hit;
            return fp;
        }
    }
    throw Exhausted("no passage by t_max = " + std::to_string(t_max));
}

std::string grid_path_csv(const GridPath& path) {
    std::ostringstream out;
    out << "t,u,v\n";
    for (std::size_t j = 0; j < path.size(); ++j)
        out << path.time(j) << ',' << path.u[j] << ',' << path.v[j] << '\n';
    return out.str();
}

std::string density_table_csv(const BmConfig& cfg, double t, double u_max, double v_max,
                              int cells_u, int cells_v) {
    if (cells_u < 1 || cells_v < 1 || !(u_max > 0.0) || !(v_max > 0.0))
        throw OutOfRange("density table needs positive extents and counts");
    std::ostringstream out;
    out << "u,v,f\n";
    for (int iu = 0; iu <= cells_u; ++iu) {
        for (int iv = 0; iv <= cells_v; ++iv) {
            const double u = u_max * iu / cells_u;
            const double v = v_max * iv / cells_v;
            out << u << ',' << v << ',' << endpoint_density(cfg, t, u, v) << '\n';
        }
    }
    return out.str();
}

} // namespace burgers
