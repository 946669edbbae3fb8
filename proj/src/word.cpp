#include "burgers/word.hpp"

#include <algorithm>

namespace burgers {

char symbol_char(Symbol s) {
    switch (s) {
        case Symbol::HamburgerB: return 'H';
        case Symbol::CheeseburgerB: return 'C';
        case Symbol::HamburgerO: return 'h';
        case Symbol::CheeseburgerO: return 'c';
        case Symbol::FlexibleO: return 'F';
    }
    throw CodecError("invalid symbol value");
}

Symbol symbol_from_char(char c) {
    switch (c) {
        case 'H': return Symbol::HamburgerB;
        case 'C': return Symbol::CheeseburgerB;
        case 'h': return Symbol::HamburgerO;
        case 'c': return Symbol::CheeseburgerO;
        case 'F': return Symbol::FlexibleO;
    }
    throw CodecError(std::string("invalid symbol character '") + c + "'");
}

std::string to_text(const Word& w) {
    std::string out;
    out.reserve(w.symbols.size());
    for (auto s : w.symbols) out.push_back(symbol_char(s));
    return out;
}

Word word_from_text(std::string_view text, std::int64_t origin) {
    Word w;
    w.origin = origin;
    w.symbols.reserve(text.size());
    for (char c : text) w.symbols.push_back(symbol_from_char(c));
    return w;
}

Word ReducedWord::as_word(std::int64_t origin) const {
    Word w;
    w.origin = origin;
    w.symbols.reserve(orders.size() + burgers.size());
    w.symbols.insert(w.symbols.end(), orders.begin(), orders.end());
    w.symbols.insert(w.symbols.end(), burgers.begin(), burgers.end());
    return w;
}

ReducedWord ForwardReducer::reduced(const std::vector<Symbol>& source) const {
    ReducedWord r;
    r.orders = order_symbols_;
    // Surviving burgers in original order: merge the two offset stacks.
    r.burgers.reserve(stack_h_.size() + stack_c_.size());
    std::size_t ih = 0, ic = 0;
    while (ih < stack_h_.size() || ic < stack_c_.size()) {
        if (ic == stack_c_.size() || (ih < stack_h_.size() && stack_h_[ih] < stack_c_[ic])) {
            r.burgers.push_back(source[static_cast<std::size_t>(stack_h_[ih++])]);
        } else {
            r.burgers.push_back(source[static_cast<std::size_t>(stack_c_[ic++])]);
        }
    }
    return r;
}

ReducedWord reduce(const Word& w) {
    ForwardReducer state;
    for (auto s : w.symbols) state.push(s);
    return state.reduced(w.symbols);
}

ReducedWord monoid_concat(const ReducedWord& a, const ReducedWord& b) {
    ReducedWord out;
    out.orders = a.orders;

    // b's orders consume a's burger stack by the reduce rules; once the stack
    // is empty the rest of b's orders pass through unchanged.
    std::vector<std::int64_t> stack_h, stack_c;
    for (std::size_t k = 0; k < a.burgers.size(); ++k) {
        (a.burgers[k] == Symbol::HamburgerB ? stack_h : stack_c)
            .push_back(static_cast<std::int64_t>(k));
    }
    std::vector<bool> consumed(a.burgers.size(), false);
    std::size_t bi = 0;
    for (; bi < b.orders.size() && (!stack_h.empty() || !stack_c.empty()); ++bi) {
        const Symbol s = b.orders[bi];
        std::vector<std::int64_t>* stack = nullptr;
        if (s == Symbol::HamburgerO) {
            stack = &stack_h;
        } else if (s == Symbol::CheeseburgerO) {
            stack = &stack_c;
        } else {
            stack = (stack_c.empty() ||
                     (!stack_h.empty() && stack_h.back() > stack_c.back()))
                        ? &stack_h
                        : &stack_c;
        }
        if (stack->empty()) {
            out.orders.push_back(s);
            continue;
        }
        consumed[static_cast<std::size_t>(stack->back())] = true;
        stack->pop_back();
    }
    out.orders.insert(out.orders.end(), b.orders.begin() + static_cast<std::ptrdiff_t>(bi),
                      b.orders.end());

    for (std::size_t k = 0; k < a.burgers.size(); ++k)
        if (!consumed[k]) out.burgers.push_back(a.burgers[k]);
    out.burgers.insert(out.burgers.end(), b.burgers.begin(), b.burgers.end());
    return out;
}

MatchTable match_indices(const Word& w) {
    ForwardReducer state;
    for (auto s : w.symbols) state.push(s, /*record_match=*/true);
    MatchTable t;
    t.origin = w.origin;
    t.match = state.match_offsets();
    return t;
}

Word resolve_flex(const Word& w, const MatchTable& m) {
    Word y = w;
    for (std::int64_t i = w.first_index(); i <= w.last_index(); ++i) {
        if (w.at(i) != Symbol::FlexibleO) continue;
        const auto partner = m.phi(i);
        if (!partner) throw UnmatchedFlexible(i);
        y.symbols[static_cast<std::size_t>(i - w.origin)] = order_of(w.at(*partner));
    }
    return y;
}

CountVector counts(const Word& w) {
    CountVector cv;
    for (auto s : w.symbols) {
        switch (s) {
            case Symbol::HamburgerB: ++cv.n_hb; break;
            case Symbol::CheeseburgerB: ++cv.n_cb; break;
            case Symbol::HamburgerO: ++cv.n_ho; break;
            case Symbol::CheeseburgerO: ++cv.n_co; break;
            case Symbol::FlexibleO: ++cv.n_fo; break;
        }
    }
    cv.d = cv.n_hb - cv.n_ho;
    cv.d_star = cv.n_cb - cv.n_co;

    const ReducedWord r = reduce(w);
    std::int64_t flex = 0;
    bool seen_flex = false;
    for (auto s : r.orders) {
        if (s == Symbol::HamburgerO) ++cv.h;
        if (s == Symbol::CheeseburgerO) {
            ++cv.c;
            if (!seen_flex) ++cv.c_f;
        }
        if (s == Symbol::FlexibleO) {
            ++flex;
            seen_flex = true;
        }
    }
    cv.o = cv.h + flex + 1;
    cv.r = static_cast<double>(cv.c_f) / static_cast<double>(cv.o);
    return cv;
}

std::optional<std::int64_t> backward_J(const Word& w) {
    BackwardReducer state;
    for (std::int64_t j = 1; j <= w.size(); ++j) {
        const auto s = w.symbols[static_cast<std::size_t>(w.size() - j)];
        if (state.prepend(s)) return j;
    }
    return std::nullopt;
}

namespace {

BackwardHit backward_count_hit(const Word& w, std::int64_t m, bool hamburgers) {
    if (m < 1) throw OutOfRange("m must be positive");
    BackwardReducer state;
    for (std::int64_t j = 1; j <= w.size(); ++j) {
        const auto s = w.symbols[static_cast<std::size_t>(w.size() - j)];
        state.prepend(s);
        const auto have = hamburgers ? state.burgers_h() : state.burgers_c();
        if (have == m) {
            const auto level = hamburgers ? state.d_star_reduced() : state.d_reduced();
            return BackwardHit{j, level};
        }
    }
    throw NotReached("backward word holds fewer than " + std::to_string(m) +
                     (hamburgers ? " hamburgers" : " cheeseburgers"));
}

} // namespace

BackwardHit backward_JH(const Word& w, std::int64_t m) {
    return backward_count_hit(w, m, true);
}
BackwardHit backward_JC(const Word& w, std::int64_t m) {
    return backward_count_hit(w, m, false);
}

} // namespace burgers
