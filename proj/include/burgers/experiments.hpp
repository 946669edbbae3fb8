#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace burgers {

// One experiment request. Zero or empty fields mean "use the id's default";
// default_spec fills them in. replicas scales the experiment's main sample
// knob (trials, paths, accepted endpoints, or words, depending on the id).
struct ExperimentSpec {
    std::string id;
    double p = 1.0 / 3.0;
    std::vector<std::int64_t> n_grid;
    std::vector<double> zeta_grid;
    std::vector<double> eps_grid;
    std::int64_t replicas = 0;
    std::uint64_t seed = 1;
    double dt = 0.0;
    double delta = 0.0;
    double cap_c = 0.0;
    int threads = 1;
    double tolerance = 0.0;
};

// Known ids, in run order.
const std::vector<std::string>& experiment_ids();

// Defaults for one id; throws OutOfRange on an unknown id.
ExperimentSpec default_spec(const std::string& id);

// Fills unset fields of `spec` from its id's defaults.
ExperimentSpec resolve_spec(ExperimentSpec spec);

struct Estimate {
    double value = 0.0;
    double se = 0.0;
};

struct Expected {
    double value = 0.0;
    std::string provenance;
};

struct ExperimentReport {
    ExperimentSpec spec;
    std::map<std::string, Estimate> estimates;
    std::map<std::string, Expected> expected;
    bool pass = false;
    double runtime_seconds = 0.0;
    std::int64_t replica_count = 0;
    std::string note; // caveats that belong next to the numbers, e.g. E3's reading
};

// "E3" and "E3_flex_count" both name the same experiment; reports always carry
// the long form.
std::string canonical_id(const std::string& id); // throws OutOfRange

// Dispatches on spec.id; throws OutOfRange on unknown ids and
// InsufficientHits when an estimate cannot be formed.
ExperimentReport run_experiment(const ExperimentSpec& spec);

ExperimentReport run_E1(const ExperimentSpec& spec); // survival exponent of the first order
ExperimentReport run_E2(const ExperimentSpec& spec); // empty-reduction probability exponent
ExperimentReport run_E3(const ExperimentSpec& spec); // flexible-order count growth
ExperimentReport run_E4(const ExperimentSpec& spec); // backward burger race in epsilon
ExperimentReport run_E5(const ExperimentSpec& spec); // first-passage ratio across zeta
ExperimentReport run_E6(const ExperimentSpec& spec); // meander endpoint density chi-square
ExperimentReport run_E7(const ExperimentSpec& spec); // g-weighted meander vs excursion
ExperimentReport run_E8(const ExperimentSpec& spec); // discrete midpoint vs excursion marginal
ExperimentReport run_E9(const ExperimentSpec& spec); // structural invariant sweep

// Report JSON: {id, params, estimates:{name:{value,stderr}},
// expected:{name:{value,provenance}}, pass, runtime_seconds, replica_count}.
std::string report_json(const ExperimentReport& report);

} // namespace burgers
