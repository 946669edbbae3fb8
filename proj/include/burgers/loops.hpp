#pragma once

#include "burgers/word.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace burgers {

// One matched flexible interval [open_index, close_index] viewed as a loop
// together with the complementary component it encloses.
struct LoopComponent {
    std::int64_t open_index = 0;   // phi(i*), position of the matched burger
    std::int64_t close_index = 0;  // i*, position of the flexible order
    std::int64_t area = 0;         // close_index - open_index
    std::int64_t boundary_len = 0; // |reduce of the closed subword| + 1
    Symbol burger_type = Symbol::HamburgerB; // symbol at open_index
    std::optional<std::size_t> parent;
    std::vector<std::size_t> children; // ordered by open_index
};

// Laminar family of all flexible intervals of a word, arena-indexed.
// nodes are ordered by open_index; roots lists the maximal intervals.
struct LoopForest {
    std::vector<LoopComponent> nodes;
    std::vector<std::size_t> roots;
};

// Builds the forest. Throws UnmatchedFlexible if any flexible order in w
// has no match, and Error if the intervals fail laminarity.
LoopForest loop_forest(const Word& w, const MatchTable& m);

// Index into forest.nodes of the component closing exactly at i, if any.
std::optional<std::size_t> component_closing_at(const LoopForest& forest, std::int64_t i);

// Index into forest.nodes of the innermost component whose time interval
// [open_index, close_index) contains i, if any.
std::optional<std::size_t> innermost_component_at(const LoopForest& forest, std::int64_t i);

// Smallest flexible index i > i_star whose matched burger sits strictly left
// of the one matched at i_star. Equals the close of the containing interval
// when one exists. i_star must be a matched flexible index.
std::optional<std::int64_t> next_exit(const Word& w, const MatchTable& m, std::int64_t i_star);

// Whether the burger types matched at i_star and at its next exit differ.
// Empty when no next exit exists.
std::optional<bool> next_exit_alternates(const Word& w, const MatchTable& m,
                                         std::int64_t i_star);

// Nested loops around time i, innermost first, as (open, close) pairs.
// A loop (open, close) covers time i when open <= i < close; successive
// reported loops alternate in burger type, and a covering loop whose type
// repeats the previous candidate (including a loop closing exactly at i)
// is skipped along with nothing else.
struct SurroundingLoops {
    std::int64_t base_index = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> thetas;
};

SurroundingLoops surrounding_loops(const Word& w, const MatchTable& m, std::int64_t i,
                                   std::size_t j_max);

// Edge counts of the encoded map: (map_edges, quad_edges) = (|w|/2, |w|).
// Throws NotClosed unless w reduces to the empty word.
struct EdgeCount {
    std::int64_t map_edges = 0;
    std::int64_t quad_edges = 0;
};

EdgeCount edge_count_check(const Word& w);

// JSON array of root components, each {open, close, area, boundary_len,
// burger_type, children}. burger_type uses the codec letter "H" or "C".
std::string loop_forest_json(const LoopForest& forest);

} // namespace burgers
