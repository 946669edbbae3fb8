#include "burgers/errors.hpp"
#include "burgers/params.hpp"
#include "burgers/path.hpp"
#include "burgers/rng.hpp"
#include "burgers/sampler.hpp"
#include "burgers/word.hpp"

#include "doctest.h"

#include "oracles.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

using namespace burgers;

namespace {

using Point = std::pair<std::int64_t, std::int64_t>;

// Independent statement of the walk criterion for {reduce = empty}.
bool path_criterion(const Word& w) {
    if (w.size() % 2 != 0) return false;
    MatchTable m = match_indices(w);
    for (std::int64_t i = w.first_index(); i <= w.last_index(); ++i)
        if (w.at(i) == Symbol::FlexibleO && !m.phi(i)) return false;
    LatticePath path = lattice_path(resolve_flex(w, m));
    for (const auto& pt : path.points)
        if (pt.first < 0 || pt.second < 0) return false;
    return path.points.back() == Point{0, 0};
}

// Brute-force weak cone check: D(s) >= D(j) componentwise on [j-k, j].
bool cone_with_gap(const LatticePath& path, std::int64_t j, std::int64_t k) {
    const auto& at = path.at_time(j);
    for (std::int64_t s = j - k; s <= j; ++s) {
        const auto& pt = path.at_time(s);
        if (pt.first < at.first || pt.second < at.second) return false;
    }
    return true;
}

Word sample_conditioned(const ModelParams& mp, int n, Rng& rng) {
    ForwardReducer scratch;
    std::vector<Symbol> buf;
    while (!try_empty_reduction_trial(mp, n, rng, scratch, buf)) {}
    return Word{buf, 1};
}

} // namespace

TEST_SUITE("path") {

TEST_CASE("lattice path accumulates counts") {
    LatticePath p = lattice_path(word_from_text("HCch"));
    CHECK(p.j0 == 0);
    std::vector<Point> expect = {{0, 0}, {1, 0}, {1, 1}, {1, 0}, {0, 0}};
    CHECK(p.points == expect);
    CHECK(p.at_time(0) == Point{0, 0});
    CHECK(p.at_time(2) == Point{1, 1});
    CHECK_THROWS_AS(p.at_time(5), OutOfRange);

    LatticePath empty = lattice_path(Word{{}, 1});
    CHECK(empty.points == std::vector<Point>{{0, 0}});

    CHECK_THROWS_AS(lattice_path(word_from_text("HF")), FlexiblePresent);
    CHECK_THROWS_AS(lattice_path(word_from_text("Hh"), 0), OutOfRange);
}

TEST_CASE("backward words anchor the endpoint at the origin") {
    Word w = word_from_text("Hc", -2);
    LatticePath p = lattice_path(w);
    CHECK(p.j0 == -3);
    CHECK(p.at_time(-1) == Point{0, 0});
    CHECK(p.at_time(-2) == Point{0, 1});
    CHECK(p.at_time(-3) == Point{-1, 1});
}

TEST_CASE("scaled evaluation interpolates and rescales") {
    LatticePath p = lattice_path(word_from_text("HCch"), 4);
    CHECK(p.u_scaled(0.25) == doctest::Approx(0.5));
    CHECK(p.v_scaled(0.5) == doctest::Approx(0.5));
    auto z = p.z_scaled(0.375); // integer time 1.5
    CHECK(z.first == doctest::Approx(0.5));
    CHECK(z.second == doctest::Approx(0.25));
    CHECK_THROWS_AS(p.z_scaled(1.25), OutOfRange);

    LatticePath q = lattice_path(word_from_text("HCch"), 2);
    CHECK(q.u_scaled(0.5) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("csv export") {
    LatticePath p = lattice_path(word_from_text("Hh"));
    CHECK(path_to_csv(p) == "j,d,d_star\n0,0,0\n1,1,0\n2,0,0\n");
    std::string scaled = path_to_csv_scaled(p);
    CHECK(scaled.substr(0, 6) == "t,u,v\n");
}

TEST_CASE("conditioned words give quadrant walks ending at the origin") {
    auto mp = derive_params(1.0 / 3.0);
    Rng rng(31);
    for (int rep = 0; rep < 20; ++rep) {
        Word w = sample_conditioned(mp, 4, rng);
        LatticePath p = lattice_path(resolve_flex(w, match_indices(w)));
        for (const auto& pt : p.points) {
            CHECK(pt.first >= 0);
            CHECK(pt.second >= 0);
        }
        CHECK(p.points.back() == Point{0, 0});
    }
}

TEST_CASE("walk criterion is equivalent to empty reduction") {
    // All words of length 6.
    oracles::enumerate_words(6, [&](const std::vector<Symbol>& syms) {
        Word w{syms, 1};
        CHECK(reduce(w).empty() == path_criterion(w));
    });
    // Random words of length 40.
    auto mp = derive_params(0.3);
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
        Word w = iid_word(mp, 40, 1, seed);
        CHECK(reduce(w).empty() == path_criterion(w));
    }
}

TEST_CASE("cone records: degenerate zero-length record from the four-symbol example") {
    Word w = word_from_text("HCFh");
    auto recs = cone_times_from_word(w, match_indices(w), 1);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].index == 3);
    CHECK(recs[0].open_index == 2);
    CHECK(recs[0].t == doctest::Approx(2.0));
    CHECK(recs[0].v == doctest::Approx(2.0));
    CHECK(recs[0].direction == ConeDirection::Degenerate);
    CHECK(recs[0].u == doctest::Approx(0.0));
    CHECK(!recs[0].u_at_word_start);

    CHECK(cone_times_from_word(word_from_text("HhCc"), match_indices(word_from_text("HhCc")), 1)
              .empty());
    Word bad = word_from_text("F");
    CHECK_THROWS_AS(cone_times_from_word(bad, match_indices(bad), 1), UnmatchedFlexible);
}

TEST_CASE("cone records: two-step cone interval") {
    Word w = word_from_text("HCCcFh");
    auto recs = cone_times_from_word(w, match_indices(w), 1);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].index == 5);
    CHECK(recs[0].open_index == 2);
    CHECK(recs[0].t - recs[0].v == doctest::Approx(2.0));
    // Both coordinates return to their entrance values here.
    CHECK(recs[0].direction == ConeDirection::Degenerate);
}

TEST_CASE("cone records: direction follows the matched burger type") {
    // Cheeseburger match: second coordinate returns, left cone time.
    Word wl = word_from_text("HChF");
    auto rl = cone_times_from_word(wl, match_indices(wl), 1);
    REQUIRE(rl.size() == 1);
    CHECK(rl[0].open_index == 2);
    CHECK(rl[0].direction == ConeDirection::Left);
    CHECK(rl[0].u_at_word_start);
    CHECK(rl[0].u == doctest::Approx(0.0));

    // Hamburger match: first coordinate returns, right cone time.
    Word wr = word_from_text("CHcF");
    auto rr = cone_times_from_word(wr, match_indices(wr), 1);
    REQUIRE(rr.size() == 1);
    CHECK(rr[0].open_index == 2);
    CHECK(rr[0].direction == ConeDirection::Right);
}

TEST_CASE("cone records satisfy the definition pointwise on sampled words") {
    auto mp = derive_params(1.0 / 3.0);
    Rng rng(77);
    int checked = 0;
    for (int rep = 0; rep < 300; ++rep) {
        Word w = sample_conditioned(mp, 8, rng);
        MatchTable m = match_indices(w);
        LatticePath path = lattice_path(resolve_flex(w, m), 1);
        for (const auto& rec : cone_times_from_word(w, m, 1)) {
            ++checked;
            std::int64_t t = rec.index - 1;
            std::int64_t v = rec.open_index;
            CHECK(v <= t);
            CHECK(rec.u <= rec.t);
            CHECK(rec.u <= rec.v);
            const auto& at_t = path.at_time(t);
            for (std::int64_t s = v; s <= t; ++s) {
                CHECK(path.at_time(s).first >= at_t.first);
                CHECK(path.at_time(s).second >= at_t.second);
            }
            bool left = path.at_time(v).second == at_t.second;
            bool right = path.at_time(v).first == at_t.first;
            if (left && right) CHECK(rec.direction == ConeDirection::Degenerate);
            else if (left) CHECK(rec.direction == ConeDirection::Left);
            else CHECK(rec.direction == ConeDirection::Right);
            // Exactly-one holds whenever the interval is nondegenerate.
            if (rec.direction != ConeDirection::Degenerate) CHECK(left != right);

            if (!rec.u_at_word_start) {
                std::int64_t u = static_cast<std::int64_t>(std::llround(rec.u));
                bool dip_u = false, dip_v = false;
                for (std::int64_t s = u; s < t; ++s) {
                    if (path.at_time(s).first < at_t.first) dip_u = true;
                    if (path.at_time(s).second < at_t.second) dip_v = true;
                }
                CHECK(dip_u);
                CHECK(dip_v);
                // Maximality: the window starting one step later misses a dip.
                dip_u = dip_v = false;
                for (std::int64_t s = u + 1; s < t; ++s) {
                    if (path.at_time(s).first < at_t.first) dip_u = true;
                    if (path.at_time(s).second < at_t.second) dip_v = true;
                }
                CHECK(!(dip_u && dip_v));
            }
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("maximal cone selection picks the outermost candidate") {
    Word w = word_from_text("HCFh");
    MatchTable m = match_indices(w);
    auto sel = maximal_cone_selection(w, m, 0.0, 4.0, 2.0, 1);
    CHECK(sel.from_flexible);
    CHECK(sel.index == 3);
    REQUIRE(sel.record.has_value());
    CHECK(sel.record->open_index == 2);

    // No flexible order: fallback floor(a*n).
    Word plain = word_from_text("HhCc");
    auto fb = maximal_cone_selection(plain, match_indices(plain), 0.0, 2.0, 1.5, 2);
    CHECK(!fb.from_flexible);
    CHECK(fb.index == 3);
    CHECK(!fb.record.has_value());

    // Covering point outside every flexible interval: fallback.
    auto fb2 = maximal_cone_selection(w, m, 0.0, 4.0, 0.5, 1);
    CHECK(!fb2.from_flexible);
    CHECK(fb2.index == 0);

    // Nested intervals [2,5] inside [1,6]: outermost wins.
    Word nested = word_from_text("HCCcFF");
    MatchTable mn = match_indices(nested);
    REQUIRE(mn.phi(5) == 2);
    REQUIRE(mn.phi(6) == 1);
    auto outer = maximal_cone_selection(nested, mn, 0.0, 7.0, 3.0, 1);
    CHECK(outer.from_flexible);
    CHECK(outer.index == 6);
    // Shrinking the window excludes the outer candidate.
    auto inner = maximal_cone_selection(nested, mn, 0.0, 5.5, 3.0, 1);
    CHECK(inner.from_flexible);
    CHECK(inner.index == 5);
}

TEST_CASE("iota scan") {
    Word w = word_from_text("HCFh");
    MatchTable m = match_indices(w);
    CHECK(iota_ar(w, m, 0.5, 0.5, 1) == 3);
    CHECK(!iota_ar(w, m, 0.5, 10.0, 1).has_value());
    CHECK(!iota_ar(w, m, 3.5, 0.5, 1).has_value());
    CHECK_THROWS_AS(iota_ar(w, m, 0.0, 0.5, 1), OutOfRange);
    CHECK_THROWS_AS(iota_ar(w, m, 0.5, 0.0, 1), OutOfRange);

    // First index meeting both constraints wins.
    Word nested = word_from_text("HCCcFF");
    MatchTable mn = match_indices(nested);
    CHECK(iota_ar(nested, mn, 1.0, 4.0, 1) == 5); // needs i - phi >= 3
    CHECK(iota_ar(nested, mn, 1.0, 6.0, 1) == 6); // needs i - phi >= 5
}

TEST_CASE("lattice detector on constant and monotone paths") {
    LatticePath constant;
    constant.points.assign(9, {5, 7});
    auto det = cone_detector(constant, 3);
    CHECK(det.first_time == 3);
    CHECK(det.values.size() == 6);
    for (std::size_t k = 0; k < det.values.size(); ++k) CHECK(det.zero_at(k));

    LatticePath rising;
    for (std::int64_t j = 0; j <= 10; ++j) rising.points.emplace_back(j, 2 * j);
    auto detr = cone_detector(rising, 4);
    for (const auto& val : detr.values) {
        CHECK(val.first == 4);
        CHECK(val.second == 8);
    }
    CHECK_THROWS_AS(cone_detector(rising, 11), OutOfRange);
    CHECK_THROWS_AS(cone_detector(rising, 0), OutOfRange);
}

TEST_CASE("lattice detector zeros are exactly the gap-r cone times") {
    Rng rng(4096);
    for (int rep = 0; rep < 200; ++rep) {
        LatticePath path;
        path.j0 = 0;
        std::int64_t d = 0, ds = 0;
        path.points.emplace_back(d, ds);
        for (int j = 0; j < 200; ++j) {
            switch (rng.next_u64() % 4) {
                case 0: ++d; break;
                case 1: --d; break;
                case 2: ++ds; break;
                default: --ds; break;
            }
            path.points.emplace_back(d, ds);
        }
        for (std::int64_t k : {1, 5, 17}) {
            auto det = cone_detector(path, k);
            for (std::size_t m = 0; m < det.values.size(); ++m) {
                std::int64_t j = det.first_time + static_cast<std::int64_t>(m);
                CHECK(det.zero_at(m) == cone_with_gap(path, j, k));
            }
        }
    }
}

TEST_CASE("flexible intervals of length >= r are detector zeros on conditioned words") {
    auto mp = derive_params(1.0 / 3.0);
    Rng rng(505);
    const std::int64_t k = 2;
    int zeros_seen = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        Word w = sample_conditioned(mp, 10, rng);
        MatchTable m = match_indices(w);
        LatticePath path = lattice_path(resolve_flex(w, m), 1);
        auto det = cone_detector(path, k);
        for (const auto& rec : cone_times_from_word(w, m, 1)) {
            std::int64_t t = rec.index - 1;
            std::int64_t v = rec.open_index;
            if (t - v < k || t < det.first_time) continue;
            ++zeros_seen;
            CHECK(det.zero_at(static_cast<std::size_t>(t - det.first_time)));
        }
    }
    CHECK(zeros_seen > 50);
}

TEST_CASE("grid tau on a vee-shaped path") {
    GridPath path;
    path.dt = 0.1;
    for (int j = 0; j <= 10; ++j) {
        double val = std::abs(j - 5);
        path.u.push_back(val);
        path.v.push_back(val);
    }
    CHECK(tau_ar(path, 0.1, 0.3) == doctest::Approx(0.3));
    CHECK(tau_ar(path, 0.45, 0.3) == doctest::Approx(0.5));
    CHECK(!tau_ar(path, 0.55, 0.3).has_value());
    CHECK(!tau_ar(path, 0.1, 5.0).has_value());
    CHECK_THROWS_AS(tau_ar(path, -1.0, 0.3), OutOfRange);
}

TEST_CASE("grid tau agrees with the first detector zero") {
    Rng rng(88);
    for (int rep = 0; rep < 100; ++rep) {
        GridPath path;
        path.dt = 0.01;
        double u = 0.0, v = 0.0;
        for (int j = 0; j <= 400; ++j) {
            path.u.push_back(u);
            path.v.push_back(v);
            u += (rng.next_u64() % 2 == 0) ? 0.01 : -0.01;
            v += (rng.next_u64() % 2 == 0) ? 0.01 : -0.01;
        }
        double a = 0.3, r = 0.05;
        auto det = cone_detector(path, r);
        std::optional<double> first_zero;
        for (std::size_t m = 0; m < det.u_bar.size(); ++m) {
            double t = det.first_time + det.dt * static_cast<double>(m);
            if (t < a - 1e-12) continue;
            if (det.u_bar[m] == 0.0 && det.v_bar[m] == 0.0) {
                first_zero = t;
                break;
            }
        }
        auto tau = tau_ar(path, a, r);
        CHECK(tau.has_value() == first_zero.has_value());
        if (tau && first_zero) CHECK(*tau == doctest::Approx(*first_zero));
    }
}

TEST_CASE("maximal grid cone interval") {
    GridPath path;
    path.dt = 0.1;
    for (int j = 0; j <= 10; ++j) {
        double val = std::abs(j - 5);
        path.u.push_back(val);
        path.v.push_back(val);
    }
    auto best = maximal_cone_interval(path, 0.05, 0.95, 0.2);
    REQUIRE(best.has_value());
    CHECK(best->t == doctest::Approx(0.5));
    CHECK(best->v == doctest::Approx(0.0));
    CHECK(!maximal_cone_interval(path, 0.55, 0.95, 0.6).has_value());
}

} // TEST_SUITE
