#pragma once

#include "burgers/word.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace burgers {

// Cumulative-count walk D(j) = (d(j), d*(j)) of a flex-free word, one point
// per integer time j = j0 … j0+N. Forward words anchor D(origin-1) = (0,0);
// words living entirely at negative indices anchor D(last) = (0,0) instead, so
// increments agree with the forward reading in both conventions.
struct LatticePath {
    std::vector<std::pair<std::int64_t, std::int64_t>> points;
    std::int64_t j0 = 0;
    std::int64_t n_scale = 1;

    std::size_t size() const { return points.size(); }
    std::int64_t first_time() const { return j0; }
    std::int64_t last_time() const { return j0 + static_cast<std::int64_t>(points.size()) - 1; }
    const std::pair<std::int64_t, std::int64_t>& at_time(std::int64_t j) const;

    // Z^n(t) = n^{-1/2} D(n t), piecewise linear between integer times.
    double u_scaled(double t) const;
    double v_scaled(double t) const;
    std::pair<double, double> z_scaled(double t) const;
};

LatticePath lattice_path(const Word& y, std::int64_t n_scale = 1);

// CSV export: integer rows (j,d,d_star) or scaled rows (t,u,v).
std::string path_to_csv(const LatticePath& path);
std::string path_to_csv_scaled(const LatticePath& path);

enum class ConeDirection { Left, Right, Degenerate };

// Weak quarter-plane cone time read off a word: t = (i-1)/n for a flexible
// order at i, entrance v = phi(i)/n, last crossing u = largest integer time
// t* < t whose window [t*, t] sees both coordinates dip strictly below their
// time-t values. All three are in scaled (divided by n_scale) units.
struct ConeRecord {
    std::int64_t index = 0;
    std::int64_t open_index = 0;
    double t = 0.0;
    double v = 0.0;
    double u = 0.0;
    ConeDirection direction = ConeDirection::Degenerate;
    bool u_at_word_start = false;
};

std::vector<ConeRecord> cone_times_from_word(const Word& w, const MatchTable& m,
                                             std::int64_t n_scale);

// Maximal flexible order time in n*(lo,hi) whose interval [phi(i), i] covers
// a*n; falls back to floor(a*n) when no candidate exists.
struct ConeSelection {
    std::int64_t index = 0;
    bool from_flexible = false;
    std::optional<ConeRecord> record;
};

ConeSelection maximal_cone_selection(const Word& w, const MatchTable& m, double lo, double hi,
                                     double a, std::int64_t n_scale);

// Smallest flexible-order index i with i >= a*n and i - phi(i) >= r*n - 1.
std::optional<std::int64_t> iota_ar(const Word& w, const MatchTable& m, double a, double r,
                                    std::int64_t n_scale);

// Uniform-grid planar path; shared by the lattice rescalings and the Brownian
// reference samplers.
struct GridPath {
    std::vector<double> u;
    std::vector<double> v;
    double dt = 0.0;
    double t0 = 0.0;

    std::size_t size() const { return u.size(); }
    double time(std::size_t j) const { return t0 + dt * static_cast<double>(j); }
    double duration() const { return u.empty() ? 0.0 : dt * static_cast<double>(u.size() - 1); }
};

// Running-infimum detector on the integer path: values (U(j) - min U, V(j) -
// min V) over windows [j - window, j]; defined for j >= j0 + window. Zeros are
// exactly the weak cone times with entrance gap >= window.
struct ConeDetector {
    std::int64_t window = 0;
    std::int64_t first_time = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> values;

    bool zero_at(std::size_t k) const { return values[k].first == 0 && values[k].second == 0; }
};

ConeDetector cone_detector(const LatticePath& path, std::int64_t window_steps);

// Grid analogue with window round(r/dt) steps.
struct GridConeDetector {
    double r = 0.0;
    std::size_t window = 0;
    double first_time = 0.0;
    double dt = 0.0;
    std::vector<double> u_bar;
    std::vector<double> v_bar;
};

GridConeDetector cone_detector(const GridPath& path, double r);

// Smallest grid time t >= a, at least r past the path start, such that the
// path stays componentwise >= its time-t value on [t - r, t].
std::optional<double> tau_ar(const GridPath& path, double a, double r);

// Maximal weak cone interval [v(t), t] with t in (lo, hi) covering a.
struct GridConeInterval {
    double t = 0.0;
    double v = 0.0;
};

std::optional<GridConeInterval> maximal_cone_interval(const GridPath& path, double lo, double hi,
                                                      double a);

} // namespace burgers
