#include "burgers/sampler.hpp"

#include <algorithm>
#include <string>

namespace burgers {

Symbol sample_symbol(const ModelParams& mp, Rng& rng) {
    const double u = rng.uniform();
    if (u < 0.25) return Symbol::HamburgerB;
    if (u < 0.50) return Symbol::CheeseburgerB;
    const double to = mp.prob_typed_order();
    if (u < 0.50 + to) return Symbol::HamburgerO;
    if (u < 0.50 + 2.0 * to) return Symbol::CheeseburgerO;
    return Symbol::FlexibleO;
}

Word iid_word(const ModelParams& mp, std::int64_t n, std::int64_t origin, std::uint64_t seed) {
    Rng rng(seed);
    Word w;
    w.origin = origin;
    w.symbols.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) w.symbols.push_back(sample_symbol(mp, rng));
    return w;
}

bool try_empty_reduction_trial(const ModelParams& mp, std::int64_t n, Rng& rng,
                               ForwardReducer& state, std::vector<Symbol>& out) {
    // Sound aborts only: a surviving order can never be consumed later, and a
    // stack larger than the remaining length can never be emptied.
    const std::int64_t len = 2 * n;
    state.reset();
    out.clear();
    for (std::int64_t i = 0; i < len; ++i) {
        const Symbol s = sample_symbol(mp, rng);
        out.push_back(s);
        if (state.push(s) == ForwardReducer::Event::SurvivedOrder) return false;
        if (state.stack_size() > len - i - 1) return false;
    }
    return state.stack_size() == 0;
}

bool try_no_burgers_backward_trial(const ModelParams& mp, std::int64_t n, Rng& rng,
                                   BackwardReducer& state, std::vector<Symbol>& out) {
    // Symbols are generated right to left; a surviving burger stays forever,
    // so the first one aborts the trial.
    state.reset();
    out.clear();
    for (std::int64_t i = 0; i < n; ++i) {
        const Symbol s = sample_symbol(mp, rng);
        out.push_back(s);
        if (state.prepend(s)) return false;
    }
    std::reverse(out.begin(), out.end());
    return true;
}

namespace {

template <typename State, typename Trial>
SamplerReport rejection_loop(std::int64_t origin_len, std::uint64_t seed,
                             std::int64_t max_trials, std::int64_t origin, Trial&& trial) {
    Rng rng(seed);
    State state;
    std::vector<Symbol> buf;
    for (std::int64_t t = 1; t <= max_trials; ++t) {
        if (!trial(rng, state, buf)) continue;
        SamplerReport rep;
        rep.word.symbols = buf;
        rep.word.origin = origin;
        rep.trials = t;
        rep.seed = seed;
        rep.acceptance_estimate = 1.0 / static_cast<double>(t);
        return rep;
    }
    throw Exhausted("rejection sampler gave up after " + std::to_string(max_trials) +
                    " trials (word length " + std::to_string(origin_len) + ")");
}

} // namespace

SamplerReport sample_empty_reduction(const ModelParams& mp, std::int64_t n, std::uint64_t seed,
                                     std::int64_t max_trials) {
    if (n < 1) throw OutOfRange("n must be >= 1");
    return rejection_loop<ForwardReducer>(
        2 * n, seed, max_trials, 1, [&](Rng& rng, ForwardReducer& st, std::vector<Symbol>& buf) {
            return try_empty_reduction_trial(mp, n, rng, st, buf);
        });
}

SamplerReport sample_no_burgers_backward(const ModelParams& mp, std::int64_t n,
                                         std::uint64_t seed, std::int64_t max_trials) {
    if (n < 1) throw OutOfRange("n must be >= 1");
    return rejection_loop<BackwardReducer>(
        n, seed, max_trials, -n, [&](Rng& rng, BackwardReducer& st, std::vector<Symbol>& buf) {
            return try_no_burgers_backward_trial(mp, n, rng, st, buf);
        });
}

FirstOrder first_order_time(const ModelParams& mp, Rng& rng, std::int64_t cap) {
    ForwardReducer state;
    for (std::int64_t i = 1; i <= cap; ++i) {
        if (state.push(sample_symbol(mp, rng)) == ForwardReducer::Event::SurvivedOrder)
            return FirstOrder{i, false};
    }
    return FirstOrder{cap, true};
}

FirstOrder first_order_time(const ModelParams& mp, std::uint64_t seed, std::int64_t cap) {
    if (cap < 1) throw OutOfRange("cap must be >= 1");
    Rng rng(seed);
    return first_order_time(mp, rng, cap);
}

std::optional<std::int64_t> first_order_index(const Word& w) {
    ForwardReducer state;
    for (std::int64_t off = 0; off < w.size(); ++off) {
        if (state.push(w.symbols[static_cast<std::size_t>(off)]) ==
            ForwardReducer::Event::SurvivedOrder)
            return w.origin + off;
    }
    return std::nullopt;
}

} // namespace burgers
