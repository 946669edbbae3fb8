#include "burgers/errors.hpp"
#include "burgers/experiments.hpp"
#include "burgers/params.hpp"
#include "burgers/word.hpp"

#include "doctest.h"

#include "oracles.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

using namespace burgers;

namespace {

// Reports must be bit-identical for identical (spec, seed) up to wall time.
void check_identical(const ExperimentReport& a, const ExperimentReport& b) {
    REQUIRE(a.estimates.size() == b.estimates.size());
    for (const auto& [key, est] : a.estimates) {
        const auto it = b.estimates.find(key);
        REQUIRE(it != b.estimates.end());
        CHECK(est.value == it->second.value);
        CHECK(est.se == it->second.se);
    }
    CHECK(a.pass == b.pass);
    CHECK(a.replica_count == b.replica_count);
}

} // namespace

TEST_SUITE("experiments") {

TEST_CASE("ids canonicalize and unknown ids are rejected") {
    CHECK(canonical_id("E1") == "E1_mu_from_I");
    CHECK(canonical_id("E9_property_sweep") == "E9_property_sweep");
    CHECK(experiment_ids().size() == 9);
    CHECK_THROWS_AS(canonical_id("E0"), OutOfRange);
    CHECK_THROWS_AS(canonical_id("bogus"), OutOfRange);
    ExperimentSpec s;
    s.id = "nope";
    CHECK_THROWS_AS(run_experiment(s), OutOfRange);
}

TEST_CASE("defaults fill unset fields and keep overrides") {
    ExperimentSpec s;
    s.id = "E5";
    s.replicas = 1234;
    const ExperimentSpec r = resolve_spec(s);
    CHECK(r.id == "E5_cone_hit_ratio");
    CHECK(r.replicas == 1234);
    CHECK(r.dt == 1e-4);
    CHECK(r.zeta_grid == std::vector<double>{0.2, 0.1, 0.05});
    CHECK(r.tolerance == 2.0);
    const ExperimentSpec d = default_spec("E7");
    CHECK(d.delta == 0.02);
    CHECK(d.cap_c == 4.0);
}

TEST_CASE("E1 downsized run recovers the tail exponent") {
    ExperimentSpec s;
    s.id = "E1";
    s.n_grid = {8, 16, 32, 64, 128};
    s.replicas = 40'000;
    s.seed = 7;
    const ExperimentReport rep = run_E1(s);
    const double mu = derive_params(s.p).mu;
    const double slope = rep.estimates.at("slope").value;
    CHECK(std::abs(slope + mu) < 0.25);
    CHECK(rep.expected.at("slope").value == -mu);
    CHECK(rep.expected.at("slope").provenance == "exponent-statement");
    CHECK(rep.estimates.count("tail_00008") == 1);
    CHECK(rep.estimates.count("tail_00128") == 1);
    CHECK(rep.replica_count == 40'000);
    CHECK(rep.pass == (std::abs(slope + mu) <= rep.spec.tolerance));
}

TEST_CASE("E1 refuses degenerate grids") {
    ExperimentSpec s;
    s.id = "E1";
    s.n_grid = {16};
    s.replicas = 1000;
    CHECK_THROWS_AS(run_E1(s), InsufficientHits);
    s.n_grid = {8, 16, 32};
    CHECK_THROWS_AS(run_E1(s), InsufficientHits);
}

TEST_CASE("E2 anchor matches the independent weighted enumeration") {
    ExperimentSpec s;
    s.id = "E2";
    s.n_grid = {4, 8, 16};
    s.replicas = 4'000'000;
    s.seed = 11;
    const ExperimentReport rep = run_E2(s);

    const auto mp = derive_params(s.p);
    double oracle = 0.0;
    oracles::enumerate_words(6, [&](const std::vector<Symbol>& syms) {
        if (reduce(Word{syms, 1}).empty()) oracle += oracles::word_probability(syms, mp.p);
    });
    CHECK(rep.expected.at("p_n3_anchor").value == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(rep.expected.at("p_n3_anchor").provenance == "enumeration");
    const auto& anchor = rep.estimates.at("p_n3_anchor");
    CHECK(std::abs(anchor.value - oracle) <= 3.0 * anchor.se);
    CHECK(rep.estimates.at("slope").value < -1.2);
    CHECK(rep.estimates.count("p_n00004") == 1);
}

TEST_CASE("E2 refuses bad grids") {
    ExperimentSpec s;
    s.id = "E2";
    s.n_grid = {10};
    CHECK_THROWS_AS(run_E2(s), InsufficientHits);
    s.n_grid = {10, 150};
    CHECK_THROWS_AS(run_E2(s), OutOfRange);
}

TEST_CASE("E3 downsized run sees sublinear flexible-order growth") {
    ExperimentSpec s;
    s.id = "E3";
    s.n_grid = {50, 100, 200, 400};
    s.replicas = 4000;
    s.seed = 13;
    const ExperimentReport rep = run_E3(s);
    const double slope = rep.estimates.at("slope").value;
    CHECK(std::abs(slope - 0.25) < 0.15);
    CHECK(rep.note.size() > 0);
    CHECK(rep.estimates.at("flex_00400").value > rep.estimates.at("flex_00050").value);
    ExperimentSpec bad = s;
    bad.n_grid = {100};
    CHECK_THROWS_AS(run_E3(bad), InsufficientHits);
}

TEST_CASE("E4 downsized race keeps the symmetry anchor and a positive slope") {
    ExperimentSpec s;
    s.id = "E4";
    s.n_grid = {20}; // m
    s.eps_grid = {0.6, 0.3};
    s.replicas = 4000;
    s.seed = 17;
    const ExperimentReport rep = run_E4(s);
    const double sym = rep.estimates.at("symmetry_point").value;
    CHECK(sym > 0.45);
    CHECK(sym < 0.55);
    CHECK(rep.expected.at("symmetry_point").provenance == "symmetry");
    const double slope = rep.estimates.at("slope").value;
    CHECK(slope > 0.3);
    CHECK(slope < 2.5);
    const bool expect_pass = std::abs(slope - 1.0) <= rep.spec.tolerance &&
                             std::abs(sym - 0.5) <= 0.05;
    CHECK(rep.pass == expect_pass);

    ExperimentSpec bad = s;
    bad.n_grid = {5};
    CHECK_THROWS_AS(run_E4(bad), InsufficientHits);
    bad = s;
    bad.eps_grid = {0.5};
    CHECK_THROWS_AS(run_E4(bad), InsufficientHits);
}

TEST_CASE("E5 downsized ratios stay in a sane band") {
    ExperimentSpec s;
    s.id = "E5";
    s.zeta_grid = {0.4, 0.2};
    s.replicas = 3000;
    s.dt = 4e-3;
    s.seed = 19;
    const ExperimentReport rep = run_E5(s);
    CHECK(rep.estimates.count("ratio_0.400") == 1);
    CHECK(rep.estimates.count("ratio_0.200") == 1);
    const double spread = rep.estimates.at("ratio_spread").value;
    CHECK(spread >= 1.0);
    CHECK(spread < 4.0);
    CHECK(rep.estimates.at("censored_frac").value < 0.05);
    CHECK(rep.replica_count == 6000);

    ExperimentSpec bad = s;
    bad.zeta_grid = {-0.1};
    CHECK_THROWS_AS(run_E5(bad), OutOfRange);
}

TEST_CASE("E6 downsized chi-square machinery is coherent") {
    ExperimentSpec s;
    s.id = "E6";
    s.replicas = 1500;
    s.dt = 1.0 / 128.0;
    s.seed = 23;
    const ExperimentReport rep = run_E6(s);
    const double raw = rep.estimates.at("chi_square_raw").value;
    const double adj = rep.estimates.at("chi_square").value;
    const double infl = rep.estimates.at("inflation").value;
    CHECK(raw > 0.0);
    CHECK(infl >= 1.0);
    CHECK(adj == doctest::Approx(raw / infl).epsilon(1e-12));
    CHECK(rep.expected.at("chi_square").value == doctest::Approx(103.44).epsilon(0.01));
    CHECK(rep.expected.at("chi_square").provenance == "quadrature");
    CHECK(rep.estimates.at("acceptance_main").value > 0.0);
    CHECK(rep.estimates.at("acceptance_control").value <
          rep.estimates.at("acceptance_main").value);
    CHECK(rep.pass == (adj <= rep.expected.at("chi_square").value));
}

TEST_CASE("E7 downsized reweighting has healthy weights and a small KS distance") {
    ExperimentSpec s;
    s.id = "E7";
    s.replicas = 1200;
    s.dt = 1.0 / 32.0;
    s.seed = 29;
    const ExperimentReport rep = run_E7(s);
    CHECK(rep.estimates.at("ess").value > 300.0);
    CHECK(rep.estimates.at("dropped_weight_frac").value < 0.05);
    CHECK(rep.estimates.at("ks_d").value < 0.25);
    CHECK(rep.expected.at("ks_d").provenance == "independent-sampler");
    CHECK(rep.replica_count == 1200 + 400);
}

TEST_CASE("E8 downsized midpoint comparison runs and scales stated") {
    ExperimentSpec s;
    s.id = "E8";
    s.n_grid = {4, 8};
    s.replicas = 300;
    s.seed = 31;
    const ExperimentReport rep = run_E8(s);
    CHECK(rep.estimates.count("ks_d_n00004") == 1);
    CHECK(rep.estimates.count("ks_d_n00008") == 1);
    // Length-16 words are far from the limit; this only guards the plumbing.
    const double d8 = rep.estimates.at("ks_d_n00008").value;
    CHECK(d8 < 0.6);
    CHECK(rep.pass == (d8 < rep.spec.tolerance));

    ExperimentSpec bad = s;
    bad.dt = 0.3; // does not divide the midpoint time
    CHECK_THROWS_AS(run_E8(bad), OutOfRange);
}

TEST_CASE("E9 downsized sweep is violation-free") {
    ExperimentSpec s;
    s.id = "E9";
    s.n_grid = {10, 200};
    s.replicas = 400;
    s.seed = 37;
    const ExperimentReport rep = run_E9(s);
    for (const auto& [key, est] : rep.estimates) {
        CAPTURE(key);
        CHECK(est.value == 0.0);
    }
    CHECK(rep.pass);
    CHECK(rep.replica_count == 800);
    CHECK(rep.expected.at("violations_match").provenance == "closed-form");
}

TEST_CASE("reports are identical across thread counts") {
    ExperimentSpec s;
    s.id = "E5";
    s.zeta_grid = {0.4};
    s.replicas = 2000;
    s.dt = 4e-3;
    s.seed = 41;
    ExperimentSpec s4 = s;
    s4.threads = 4;
    check_identical(run_E5(s), run_E5(s4));

    ExperimentSpec e1;
    e1.id = "E1";
    e1.n_grid = {8, 16, 32, 64, 128};
    e1.replicas = 20'000;
    e1.seed = 43;
    ExperimentSpec e1t = e1;
    e1t.threads = 3;
    check_identical(run_E1(e1), run_E1(e1t));
}

TEST_CASE("report JSON carries the full schema") {
    ExperimentSpec s;
    s.id = "E9";
    s.n_grid = {6, 60};
    s.replicas = 50;
    s.seed = 47;
    const ExperimentReport rep = run_experiment(s);
    const auto j = nlohmann::json::parse(report_json(rep));
    CHECK(j.at("id") == "E9_property_sweep");
    CHECK(j.at("params").at("p").get<double>() == doctest::Approx(1.0 / 3.0));
    CHECK(j.at("params").at("replicas") == 50);
    CHECK(j.at("estimates").at("violations_match").at("value") == 0.0);
    CHECK(j.at("estimates").at("violations_match").contains("stderr"));
    CHECK(j.at("expected").at("violations_match").at("provenance") == "closed-form");
    CHECK(j.at("pass").is_boolean());
    CHECK(j.at("runtime_seconds").is_number());
    CHECK(j.at("replica_count") == 100);
}

} // TEST_SUITE
