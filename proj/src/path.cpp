#include "burgers/path.hpp"

#include "burgers/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

namespace burgers {

namespace {

std::pair<int, int> increment(Symbol s) {
    switch (s) {
        case Symbol::HamburgerB: return {1, 0};
        case Symbol::CheeseburgerB: return {0, 1};
        case Symbol::HamburgerO: return {-1, 0};
        case Symbol::CheeseburgerO: return {0, -1};
        case Symbol::FlexibleO: break;
    }
    throw FlexiblePresent("lattice path requires a flex-free word");
}

} // namespace

const std::pair<std::int64_t, std::int64_t>& LatticePath::at_time(std::int64_t j) const {
    if (j < first_time() || j > last_time()) throw OutOfRange("LatticePath::at_time: time outside domain");
    return points[static_cast<std::size_t>(j - j0)];
}

std::pair<double, double> LatticePath::z_scaled(double t) const {
    double jr = static_cast<double>(n_scale) * t;
    double lo = static_cast<double>(first_time());
    double hi = static_cast<double>(last_time());
    if (jr < lo - 1e-9 || jr > hi + 1e-9) throw OutOfRange("LatticePath: scaled time outside domain");
    jr = std::min(std::max(jr, lo), hi);
    double fl = std::floor(jr);
    std::size_t k = static_cast<std::size_t>(fl - lo);
    double frac = jr - fl;
    double root = std::sqrt(static_cast<double>(n_scale));
    double du = static_cast<double>(points[k].first);
    double dv = static_cast<double>(points[k].second);
    if (frac > 0.0 && k + 1 < points.size()) {
        du += frac * static_cast<double>(points[k + 1].first - points[k].first);
        dv += frac * static_cast<double>(points[k + 1].second - points[k].second);
    }
    return {du / root, dv / root};
}

double LatticePath::u_scaled(double t) const { return z_scaled(t).first; }
double LatticePath::v_scaled(double t) const { return z_scaled(t).second; }

LatticePath lattice_path(const Word& y, std::int64_t n_scale) {
    if (n_scale < 1) throw OutOfRange("lattice_path: n_scale >= 1 required");
    LatticePath path;
    path.j0 = y.origin - 1;
    path.n_scale = n_scale;
    path.points.reserve(y.size() + 1);
    std::int64_t d = 0, ds = 0;
    path.points.emplace_back(d, ds);
    for (Symbol s : y.symbols) {
        auto [du, dv] = increment(s);
        d += du;
        ds += dv;
        path.points.emplace_back(d, ds);
    }
    // Words living at negative indices anchor the endpoint instead.
    if (!y.symbols.empty() && y.last_index() <= -1) {
        for (auto& pt : path.points) {
            pt.first -= d;
            pt.second -= ds;
        }
    }
    return path;
}

std::string path_to_csv(const LatticePath& path) {
    std::ostringstream out;
    out << "j,d,d_star\n";
    for (std::size_t k = 0; k < path.points.size(); ++k)
        out << (path.j0 + static_cast<std::int64_t>(k)) << ',' << path.points[k].first << ','
            << path.points[k].second << '\n';
    return out.str();
}

std::string path_to_csv_scaled(const LatticePath& path) {
    std::ostringstream out;
    double n = static_cast<double>(path.n_scale);
    double root = std::sqrt(n);
    out << "t,u,v\n";
    out.precision(17);
    for (std::size_t k = 0; k < path.points.size(); ++k)
        out << (static_cast<double>(path.j0 + static_cast<std::int64_t>(k)) / n) << ','
            << (static_cast<double>(path.points[k].first) / root) << ','
            << (static_cast<double>(path.points[k].second) / root) << '\n';
    return out.str();
}

namespace {

ConeRecord record_for_flexible(const LatticePath& path, std::int64_t i, std::int64_t phi,
                               std::int64_t n_scale) {
    ConeRecord rec;
    rec.index = i;
    rec.open_index = phi;
    std::int64_t t_int = i - 1;
    const auto& at_t = path.at_time(t_int);
    const auto& at_v = path.at_time(phi);
    double n = static_cast<double>(n_scale);
    rec.t = static_cast<double>(t_int) / n;
    rec.v = static_cast<double>(phi) / n;

    bool left = at_t.second == at_v.second;
    bool right = at_t.first == at_v.first;
    if (left && right) rec.direction = ConeDirection::Degenerate;
    else if (left) rec.direction = ConeDirection::Left;
    else if (right) rec.direction = ConeDirection::Right;
    else rec.direction = ConeDirection::Degenerate;

    // Last crossing: largest t* < t whose window [t*, t] contains a strict dip
    // of each coordinate below its time-t value.
    std::optional<std::int64_t> dip_u, dip_v;
    for (std::int64_t s = t_int - 1; s >= path.first_time(); --s) {
        const auto& pt = path.at_time(s);
        if (!dip_u && pt.first < at_t.first) dip_u = s;
        if (!dip_v && pt.second < at_t.second) dip_v = s;
        if (dip_u && dip_v) break;
    }
    if (dip_u && dip_v) {
        rec.u = static_cast<double>(std::min(*dip_u, *dip_v)) / n;
        rec.u_at_word_start = false;
    } else {
        rec.u = static_cast<double>(path.first_time()) / n;
        rec.u_at_word_start = true;
    }
    return rec;
}

} // namespace

std::vector<ConeRecord> cone_times_from_word(const Word& w, const MatchTable& m,
                                             std::int64_t n_scale) {
    if (n_scale < 1) throw OutOfRange("cone_times_from_word: n_scale >= 1 required");
    LatticePath path = lattice_path(resolve_flex(w, m), n_scale);
    std::vector<ConeRecord> records;
    for (std::int64_t i = w.first_index(); i <= w.last_index(); ++i) {
        if (w.at(i) != Symbol::FlexibleO) continue;
        auto phi = m.phi(i);
        if (!phi) throw UnmatchedFlexible(i);
        records.push_back(record_for_flexible(path, i, *phi, n_scale));
    }
    return records;
}

ConeSelection maximal_cone_selection(const Word& w, const MatchTable& m, double lo, double hi,
                                     double a, std::int64_t n_scale) {
    if (n_scale < 1) throw OutOfRange("maximal_cone_selection: n_scale >= 1 required");
    double n = static_cast<double>(n_scale);
    double an = a * n;
    std::optional<std::int64_t> best;
    std::int64_t best_len = -1;
    for (std::int64_t i = w.first_index(); i <= w.last_index(); ++i) {
        if (w.at(i) != Symbol::FlexibleO) continue;
        double di = static_cast<double>(i);
        if (!(di > lo * n && di < hi * n)) continue;
        auto phi = m.phi(i);
        if (!phi) continue;
        if (!(static_cast<double>(*phi) <= an && an <= di)) continue;
        std::int64_t len = i - *phi;
        if (len > best_len) {
            best_len = len;
            best = i;
        }
    }
    ConeSelection sel;
    if (best) {
        sel.index = *best;
        sel.from_flexible = true;
        LatticePath path = lattice_path(resolve_flex(w, m), n_scale);
        sel.record = record_for_flexible(path, *best, *m.phi(*best), n_scale);
    } else {
        sel.index = static_cast<std::int64_t>(std::floor(an));
        sel.from_flexible = false;
    }
    return sel;
}

std::optional<std::int64_t> iota_ar(const Word& w, const MatchTable& m, double a, double r,
                                    std::int64_t n_scale) {
    if (a <= 0.0 || r <= 0.0) throw OutOfRange("iota_ar: a > 0 and r > 0 required");
    if (n_scale < 1) throw OutOfRange("iota_ar: n_scale >= 1 required");
    double n = static_cast<double>(n_scale);
    for (std::int64_t i = w.first_index(); i <= w.last_index(); ++i) {
        if (w.at(i) != Symbol::FlexibleO) continue;
        if (static_cast<double>(i) < a * n) continue;
        auto phi = m.phi(i);
        if (!phi) continue;
        if (static_cast<double>(i - *phi) >= r * n - 1.0) return i;
    }
    return std::nullopt;
}

namespace {

// Sliding-window minima over [j-window, j], amortized O(1) per step.
template <typename T, typename Get>
std::vector<T> window_min(std::size_t count, std::size_t window, Get get) {
    std::vector<T> mins;
    mins.reserve(count - window);
    std::deque<std::size_t> deq;
    for (std::size_t j = 0; j < count; ++j) {
        while (!deq.empty() && get(deq.back()) >= get(j)) deq.pop_back();
        deq.push_back(j);
        if (deq.front() + window + 1 <= j) deq.pop_front();
        if (j >= window) mins.push_back(get(deq.front()));
    }
    return mins;
}

} // namespace

ConeDetector cone_detector(const LatticePath& path, std::int64_t window_steps) {
    std::int64_t n = static_cast<std::int64_t>(path.points.size()) - 1;
    if (window_steps < 1 || window_steps > n)
        throw OutOfRange("cone_detector: window must fit inside the path");
    std::size_t w = static_cast<std::size_t>(window_steps);
    auto min_u = window_min<std::int64_t>(path.points.size(), w,
                                          [&](std::size_t k) { return path.points[k].first; });
    auto min_v = window_min<std::int64_t>(path.points.size(), w,
                                          [&](std::size_t k) { return path.points[k].second; });
    ConeDetector det;
    det.window = window_steps;
    det.first_time = path.j0 + window_steps;
    det.values.reserve(min_u.size());
    for (std::size_t k = 0; k < min_u.size(); ++k) {
        std::size_t j = k + w;
        det.values.emplace_back(path.points[j].first - min_u[k], path.points[j].second - min_v[k]);
    }
    return det;
}

GridConeDetector cone_detector(const GridPath& path, double r) {
    if (path.size() < 2 || path.dt <= 0.0) throw OutOfRange("cone_detector: degenerate grid path");
    std::int64_t k = std::llround(r / path.dt);
    std::int64_t n = static_cast<std::int64_t>(path.size()) - 1;
    if (k < 1 || k > n) throw OutOfRange("cone_detector: window must fit inside the path");
    std::size_t w = static_cast<std::size_t>(k);
    auto min_u = window_min<double>(path.size(), w, [&](std::size_t j) { return path.u[j]; });
    auto min_v = window_min<double>(path.size(), w, [&](std::size_t j) { return path.v[j]; });
    GridConeDetector det;
    det.r = r;
    det.window = w;
    det.dt = path.dt;
    det.first_time = path.time(w);
    det.u_bar.reserve(min_u.size());
    det.v_bar.reserve(min_v.size());
    for (std::size_t m = 0; m < min_u.size(); ++m) {
        det.u_bar.push_back(path.u[m + w] - min_u[m]);
        det.v_bar.push_back(path.v[m + w] - min_v[m]);
    }
    return det;
}

std::optional<double> tau_ar(const GridPath& path, double a, double r) {
    if (a <= 0.0 || r <= 0.0) throw OutOfRange("tau_ar: a > 0 and r > 0 required");
    if (path.size() < 2 || path.dt <= 0.0) return std::nullopt;
    std::int64_t k = std::llround(r / path.dt);
    std::int64_t n = static_cast<std::int64_t>(path.size()) - 1;
    if (k < 1 || k > n) return std::nullopt;
    std::int64_t j_a = static_cast<std::int64_t>(std::ceil((a - path.t0) / path.dt - 1e-12));
    for (std::int64_t j = std::max(k, j_a); j <= n; ++j) {
        bool cone = true;
        for (std::int64_t s = j - 1; s >= j - k; --s) {
            if (path.u[static_cast<std::size_t>(s)] < path.u[static_cast<std::size_t>(j)] ||
                path.v[static_cast<std::size_t>(s)] < path.v[static_cast<std::size_t>(j)]) {
                cone = false;
                break;
            }
        }
        if (cone) return path.time(static_cast<std::size_t>(j));
    }
    return std::nullopt;
}

std::optional<GridConeInterval> maximal_cone_interval(const GridPath& path, double lo, double hi,
                                                      double a) {
    if (path.size() < 2 || path.dt <= 0.0) return std::nullopt;
    std::optional<GridConeInterval> best;
    std::int64_t n = static_cast<std::int64_t>(path.size()) - 1;
    for (std::int64_t j = 0; j <= n; ++j) {
        double t = path.time(static_cast<std::size_t>(j));
        if (!(t > lo && t < hi) || t < a) continue;
        std::int64_t s = j - 1;
        while (s >= 0 && path.u[static_cast<std::size_t>(s)] >= path.u[static_cast<std::size_t>(j)] &&
               path.v[static_cast<std::size_t>(s)] >= path.v[static_cast<std::size_t>(j)])
            --s;
        double v = path.time(static_cast<std::size_t>(s + 1));
        if (v > a) continue;
        if (!best || t - v > best->t - best->v) best = GridConeInterval{t, v};
    }
    return best;
}

} // namespace burgers
