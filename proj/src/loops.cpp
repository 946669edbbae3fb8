#include "burgers/loops.hpp"

#include "burgers/errors.hpp"

#include <json.hpp>

#include <algorithm>

namespace burgers {

namespace {

Word subword(const Word& w, std::int64_t lo, std::int64_t hi) {
    auto first = w.symbols.begin() + static_cast<std::ptrdiff_t>(lo - w.origin);
    auto last = w.symbols.begin() + static_cast<std::ptrdiff_t>(hi - w.origin + 1);
    return Word{std::vector<Symbol>(first, last), lo};
}

} // namespace

LoopForest loop_forest(const Word& w, const MatchTable& m) {
    LoopForest forest;
    std::vector<std::size_t> stack;
    for (std::int64_t i = w.first_index(); i <= w.last_index(); ++i) {
        if (w.at(i) != Symbol::FlexibleO) continue;
        auto phi = m.phi(i);
        if (!phi) throw UnmatchedFlexible(i);
        LoopComponent node;
        node.open_index = *phi;
        node.close_index = i;
        node.area = i - *phi;
        node.boundary_len = reduce(subword(w, *phi, i)).size() + 1;
        node.burger_type = w.at(*phi);
        forest.nodes.push_back(node);
    }
    std::sort(forest.nodes.begin(), forest.nodes.end(),
              [](const LoopComponent& a, const LoopComponent& b) {
                  return a.open_index < b.open_index;
              });
    for (std::size_t idx = 0; idx < forest.nodes.size(); ++idx) {
        LoopComponent& node = forest.nodes[idx];
        while (!stack.empty() && forest.nodes[stack.back()].close_index < node.open_index)
            stack.pop_back();
        if (!stack.empty()) {
            LoopComponent& outer = forest.nodes[stack.back()];
            if (node.close_index > outer.close_index)
                throw Error("flexible intervals cross");
            node.parent = stack.back();
            outer.children.push_back(idx);
        } else {
            forest.roots.push_back(idx);
        }
        stack.push_back(idx);
    }
    return forest;
}

std::optional<std::size_t> component_closing_at(const LoopForest& forest, std::int64_t i) {
    for (std::size_t idx = 0; idx < forest.nodes.size(); ++idx)
        if (forest.nodes[idx].close_index == i) return idx;
    return std::nullopt;
}

std::optional<std::size_t> innermost_component_at(const LoopForest& forest, std::int64_t i) {
    std::optional<std::size_t> best;
    for (std::size_t idx = 0; idx < forest.nodes.size(); ++idx) {
        const LoopComponent& node = forest.nodes[idx];
        if (node.open_index > i || i >= node.close_index) continue;
        if (!best || node.close_index - node.open_index <
                         forest.nodes[*best].close_index - forest.nodes[*best].open_index)
            best = idx;
    }
    return best;
}

std::optional<std::int64_t> next_exit(const Word& w, const MatchTable& m, std::int64_t i_star) {
    if (!w.in_range(i_star) || w.at(i_star) != Symbol::FlexibleO)
        throw OutOfRange("next_exit needs a flexible index inside the word");
    auto phi_star = m.phi(i_star);
    if (!phi_star) throw UnmatchedFlexible(i_star);
    for (std::int64_t i = i_star + 1; i <= w.last_index(); ++i) {
        if (w.at(i) != Symbol::FlexibleO) continue;
        auto phi = m.phi(i);
        if (phi && *phi <= *phi_star - 1) return i;
    }
    return std::nullopt;
}

std::optional<bool> next_exit_alternates(const Word& w, const MatchTable& m,
                                         std::int64_t i_star) {
    auto exit = next_exit(w, m, i_star);
    if (!exit) return std::nullopt;
    return w.at(*m.phi(*exit)) != w.at(*m.phi(i_star));
}

SurroundingLoops surrounding_loops(const Word& w, const MatchTable& m, std::int64_t i,
                                   std::size_t j_max) {
    if (!w.in_range(i)) throw OutOfRange("surrounding_loops base index outside the word");
    SurroundingLoops out;
    out.base_index = i;
    std::optional<Symbol> prev_type;
    if (w.at(i) == Symbol::FlexibleO) {
        if (auto phi = m.phi(i)) prev_type = w.at(*phi);
    }
    for (std::int64_t k = i + 1; k <= w.last_index() && out.thetas.size() < j_max; ++k) {
        if (w.at(k) != Symbol::FlexibleO) continue;
        auto phi = m.phi(k);
        if (!phi || *phi > i) continue;
        Symbol type = w.at(*phi);
        bool qualifies = !prev_type || type != *prev_type;
        prev_type = type;
        if (qualifies) out.thetas.emplace_back(*phi, k);
    }
    return out;
}

EdgeCount edge_count_check(const Word& w) {
    if (!reduce(w).empty())
        throw NotClosed("word does not reduce to the empty word");
    EdgeCount counts;
    counts.quad_edges = static_cast<std::int64_t>(w.symbols.size());
    counts.map_edges = counts.quad_edges / 2;
    return counts;
}

namespace {

nlohmann::json component_json(const LoopForest& forest, std::size_t idx) {
    const LoopComponent& node = forest.nodes[idx];
    nlohmann::json j;
    j["open"] = node.open_index;
    j["close"] = node.close_index;
    j["area"] = node.area;
    j["boundary_len"] = node.boundary_len;
    j["burger_type"] = std::string(1, symbol_char(node.burger_type));
    j["children"] = nlohmann::json::array();
    for (std::size_t child : node.children) j["children"].push_back(component_json(forest, child));
    return j;
}

} // namespace

std::string loop_forest_json(const LoopForest& forest) {
    nlohmann::json j = nlohmann::json::array();
    for (std::size_t root : forest.roots) j.push_back(component_json(forest, root));
    return j.dump();
}

} // namespace burgers
