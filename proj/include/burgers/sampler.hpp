#pragma once

#include <cstdint>
#include <optional>

#include "burgers/params.hpp"
#include "burgers/rng.hpp"
#include "burgers/word.hpp"

namespace burgers {

struct SamplerReport {
    Word word;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    double acceptance_estimate = 0.0; // 1/trials for a single accepted sample
};

Symbol sample_symbol(const ModelParams& mp, Rng& rng);

Word iid_word(const ModelParams& mp, std::int64_t n, std::int64_t origin, std::uint64_t seed);

// Single rejection trials, driven by an external stream so experiment replicas
// can account for every trial deterministically. On success the accepted
// symbols are left in `out`.
bool try_empty_reduction_trial(const ModelParams& mp, std::int64_t n, Rng& rng,
                               ForwardReducer& scratch, std::vector<Symbol>& out);
bool try_no_burgers_backward_trial(const ModelParams& mp, std::int64_t n, Rng& rng,
                                   BackwardReducer& scratch, std::vector<Symbol>& out);

// Conditioned samplers (pure rejection; see try_* for the abort rules).
SamplerReport sample_empty_reduction(const ModelParams& mp, std::int64_t n, std::uint64_t seed,
                                     std::int64_t max_trials); // throws Exhausted
SamplerReport sample_no_burgers_backward(const ModelParams& mp, std::int64_t n,
                                         std::uint64_t seed,
                                         std::int64_t max_trials); // throws Exhausted

// First index i with an order in the reduction of X(1,i), i.e. the first
// arriving order that finds no burger to consume.
struct FirstOrder {
    std::int64_t value; // I, or cap when censored
    bool censored;
};
FirstOrder first_order_time(const ModelParams& mp, std::uint64_t seed, std::int64_t cap);
FirstOrder first_order_time(const ModelParams& mp, Rng& rng, std::int64_t cap);

// Scan form of the same event on a concrete word: smallest index whose prefix
// reduction contains an order.
std::optional<std::int64_t> first_order_index(const Word& w);

} // namespace burgers
