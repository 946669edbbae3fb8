#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "burgers/errors.hpp"

namespace burgers {

// Alphabet. Two burger kinds, three order kinds. The semigroup relations:
// a burger followed by its matching typed order or a flexible order cancels;
// a burger followed by the opposite typed order commutes with it. Hence every
// word reduces to "orders then burgers", and a typed order consumes the most
// recent unconsumed burger of its type while a flexible order consumes the
// stack top.
enum class Symbol : std::uint8_t {
    HamburgerB = 0,
    CheeseburgerB = 1,
    HamburgerO = 2,
    CheeseburgerO = 3,
    FlexibleO = 4,
};

constexpr bool is_burger(Symbol s) {
    return s == Symbol::HamburgerB || s == Symbol::CheeseburgerB;
}
constexpr bool is_order(Symbol s) { return !is_burger(s); }

// Typed order for a burger kind, and vice versa.
constexpr Symbol order_of(Symbol burger) {
    return burger == Symbol::HamburgerB ? Symbol::HamburgerO : Symbol::CheeseburgerO;
}
constexpr Symbol burger_of(Symbol typed_order) {
    return typed_order == Symbol::HamburgerO ? Symbol::HamburgerB : Symbol::CheeseburgerB;
}

char symbol_char(Symbol s);
Symbol symbol_from_char(char c); // throws CodecError

// Indexed symbol sequence. origin is the public index of the first symbol, so
// forward words are 1..N and backward words -m..-1.
struct Word {
    std::vector<Symbol> symbols;
    std::int64_t origin = 1;

    std::int64_t size() const { return static_cast<std::int64_t>(symbols.size()); }
    std::int64_t first_index() const { return origin; }
    std::int64_t last_index() const { return origin + size() - 1; }
    bool in_range(std::int64_t i) const { return i >= first_index() && i <= last_index(); }

    Symbol at(std::int64_t i) const {
        if (!in_range(i)) throw OutOfRange("word index " + std::to_string(i) + " out of range");
        return symbols[static_cast<std::size_t>(i - origin)];
    }

    static Word forward(std::vector<Symbol> syms) { return Word{std::move(syms), 1}; }
    static Word backward(std::vector<Symbol> syms) {
        const auto n = static_cast<std::int64_t>(syms.size());
        return Word{std::move(syms), -n};
    }
};

std::string to_text(const Word& w);
Word word_from_text(std::string_view text, std::int64_t origin = 1);

// Normal form: order block then burger block.
struct ReducedWord {
    std::vector<Symbol> orders;
    std::vector<Symbol> burgers;

    std::int64_t size() const {
        return static_cast<std::int64_t>(orders.size() + burgers.size());
    }
    bool empty() const { return orders.empty() && burgers.empty(); }
    bool has_burger() const { return !burgers.empty(); }
    Word as_word(std::int64_t origin = 1) const;
};

struct CountVector {
    // Raw symbol counts of the word itself.
    std::int64_t n_hb = 0, n_cb = 0, n_ho = 0, n_co = 0, n_fo = 0;
    std::int64_t d = 0;      // n_hb - n_ho
    std::int64_t d_star = 0; // n_cb - n_co
    // Counts over the reduced word.
    std::int64_t h = 0;   // hamburger orders
    std::int64_t c = 0;   // cheeseburger orders
    std::int64_t o = 1;   // hamburger orders + flexible orders + 1
    std::int64_t c_f = 0; // cheeseburger orders left of the leftmost flexible order
    double r = 0.0;       // c_f / o (can exceed 1 when cheeseburger orders dominate)
};

// Match involution. Burger index is always the smaller of a pair; unmatched
// indices are exactly the survivors of reduce.
struct MatchTable {
    std::int64_t origin = 1;
    std::vector<std::int64_t> match; // offset-indexed; -1 = unmatched

    std::int64_t size() const { return static_cast<std::int64_t>(match.size()); }
    bool in_range(std::int64_t i) const { return i >= origin && i < origin + size(); }

    std::optional<std::int64_t> phi(std::int64_t i) const {
        if (!in_range(i)) throw OutOfRange("match index " + std::to_string(i) + " out of range");
        const auto off = match[static_cast<std::size_t>(i - origin)];
        if (off < 0) return std::nullopt;
        return origin + off;
    }
    bool matched(std::int64_t i) const { return phi(i).has_value(); }
    bool fully_matched() const {
        for (auto off : match)
            if (off < 0) return false;
        return true;
    }
    std::vector<std::int64_t> unmatched_indices() const {
        std::vector<std::int64_t> out;
        for (std::size_t k = 0; k < match.size(); ++k)
            if (match[k] < 0) out.push_back(origin + static_cast<std::int64_t>(k));
        return out;
    }
    std::int64_t pair_count() const {
        std::int64_t matched_syms = 0;
        for (auto off : match) matched_syms += off >= 0;
        return matched_syms / 2;
    }
};

// Incremental left-to-right reduction state. Burger stacks hold 0-based
// offsets; the merged stack top is the larger back. Samplers reuse one
// instance across trials via reset().
class ForwardReducer {
  public:
    void reset() {
        stack_h_.clear();
        stack_c_.clear();
        order_offsets_.clear();
        order_symbols_.clear();
        match_.clear();
        pushed_ = 0;
    }

    // Feeds one symbol; match recording is optional (record_match=false keeps
    // the hot path allocation-free after warm-up).
    enum class Event : std::uint8_t { PushedBurger, Consumed, SurvivedOrder };

    Event push(Symbol s, bool record_match = false) {
        const std::int64_t off = pushed_++;
        if (record_match) match_.push_back(-1);
        switch (s) {
            case Symbol::HamburgerB:
                stack_h_.push_back(off);
                return Event::PushedBurger;
            case Symbol::CheeseburgerB:
                stack_c_.push_back(off);
                return Event::PushedBurger;
            case Symbol::HamburgerO:
                return consume_from(stack_h_, off, s, record_match);
            case Symbol::CheeseburgerO:
                return consume_from(stack_c_, off, s, record_match);
            case Symbol::FlexibleO: {
                // Flexible order takes the freshest burger of either kind.
                if (stack_h_.empty() && stack_c_.empty()) return survive(off, s);
                if (stack_c_.empty() || (!stack_h_.empty() && stack_h_.back() > stack_c_.back()))
                    return consume_from(stack_h_, off, s, record_match);
                return consume_from(stack_c_, off, s, record_match);
            }
        }
        return Event::SurvivedOrder; // unreachable
    }

    std::int64_t pushed() const { return pushed_; }
    std::int64_t stack_size() const {
        return static_cast<std::int64_t>(stack_h_.size() + stack_c_.size());
    }
    std::int64_t burgers_h() const { return static_cast<std::int64_t>(stack_h_.size()); }
    std::int64_t burgers_c() const { return static_cast<std::int64_t>(stack_c_.size()); }
    std::int64_t surviving_orders() const {
        return static_cast<std::int64_t>(order_symbols_.size());
    }
    std::int64_t last_consumed_offset() const { return last_consumed_; }

    const std::vector<std::int64_t>& order_offsets() const { return order_offsets_; }
    const std::vector<Symbol>& order_symbols() const { return order_symbols_; }
    const std::vector<std::int64_t>& hamburger_stack() const { return stack_h_; }
    const std::vector<std::int64_t>& cheeseburger_stack() const { return stack_c_; }
    const std::vector<std::int64_t>& match_offsets() const { return match_; }

    ReducedWord reduced(const std::vector<Symbol>& source) const;

  private:
    Event consume_from(std::vector<std::int64_t>& stack, std::int64_t off, Symbol s,
                       bool record_match) {
        if (stack.empty()) return survive(off, s);
        last_consumed_ = stack.back();
        stack.pop_back();
        if (record_match) {
            match_[static_cast<std::size_t>(last_consumed_)] = off;
            match_[static_cast<std::size_t>(off)] = last_consumed_;
        }
        return Event::Consumed;
    }
    Event survive(std::int64_t off, Symbol s) {
        order_offsets_.push_back(off);
        order_symbols_.push_back(s);
        return Event::SurvivedOrder;
    }

    std::vector<std::int64_t> stack_h_, stack_c_;
    std::vector<std::int64_t> order_offsets_;
    std::vector<Symbol> order_symbols_;
    std::vector<std::int64_t> match_;
    std::int64_t pushed_ = 0;
    std::int64_t last_consumed_ = -1;
};

// Incremental right-to-left reduction state for backward words. Prepending an
// order can never be consumed (nothing to its left); prepending a burger is
// consumed by the leftmost compatible order of the current block, i.e. the
// most recently prepended one, since it only commutes past the opposite typed
// orders. Survived burgers stay forever.
class BackwardReducer {
  public:
    void reset() {
        stack_ho_.clear();
        stack_co_.clear();
        stack_fo_.clear();
        prepended_ = 0;
        n_hb_ = n_cb_ = 0;
    }

    // Returns true when the prepended symbol is a burger that survives.
    bool prepend(Symbol s) {
        const std::int64_t j = ++prepended_; // larger j = further left
        switch (s) {
            case Symbol::HamburgerO:
                stack_ho_.push_back(j);
                return false;
            case Symbol::CheeseburgerO:
                stack_co_.push_back(j);
                return false;
            case Symbol::FlexibleO:
                stack_fo_.push_back(j);
                return false;
            case Symbol::HamburgerB:
                if (consume_leftmost(stack_ho_, stack_fo_)) return false;
                ++n_hb_;
                return true;
            case Symbol::CheeseburgerB:
                if (consume_leftmost(stack_co_, stack_fo_)) return false;
                ++n_cb_;
                return true;
        }
        return false; // unreachable
    }

    std::int64_t prepended() const { return prepended_; }
    std::int64_t burgers_h() const { return n_hb_; }
    std::int64_t burgers_c() const { return n_cb_; }
    bool has_burger() const { return n_hb_ + n_cb_ > 0; }
    // d and d* of the current reduced word.
    std::int64_t d_reduced() const {
        return n_hb_ - static_cast<std::int64_t>(stack_ho_.size());
    }
    std::int64_t d_star_reduced() const {
        return n_cb_ - static_cast<std::int64_t>(stack_co_.size());
    }

  private:
    static bool consume_leftmost(std::vector<std::int64_t>& typed,
                                 std::vector<std::int64_t>& flex) {
        if (typed.empty() && flex.empty()) return false;
        if (flex.empty() || (!typed.empty() && typed.back() > flex.back()))
            typed.pop_back();
        else
            flex.pop_back();
        return true;
    }

    std::vector<std::int64_t> stack_ho_, stack_co_, stack_fo_;
    std::int64_t prepended_ = 0;
    std::int64_t n_hb_ = 0, n_cb_ = 0;
};

ReducedWord reduce(const Word& w);
ReducedWord monoid_concat(const ReducedWord& a, const ReducedWord& b);
MatchTable match_indices(const Word& w);
Word resolve_flex(const Word& w, const MatchTable& m); // throws UnmatchedFlexible
CountVector counts(const Word& w);

// Backward stopping times; w is read right to left and j counts symbols from
// the right (the paper's backward words are indexed -m..-1).
std::optional<std::int64_t> backward_J(const Word& w);

struct BackwardHit {
    std::int64_t J;
    std::int64_t L;
};
BackwardHit backward_JH(const Word& w, std::int64_t m); // throws NotReached
BackwardHit backward_JC(const Word& w, std::int64_t m); // throws NotReached

} // namespace burgers
