#include <doctest.h>

#include "burgers/errors.hpp"
#include "burgers/loops.hpp"
#include "burgers/sampler.hpp"
#include "burgers/word.hpp"
#include "oracles.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

using namespace burgers;

namespace {

// Containment-chain oracle for surrounding_loops: loops covering time i taken
// from the forest, ordered inner to outer, alternation-filtered with the loop
// closing exactly at i seeding the filter.
std::vector<std::pair<std::int64_t, std::int64_t>> chain_thetas(const LoopForest& forest,
                                                                std::int64_t i,
                                                                std::size_t j_max) {
    std::vector<const LoopComponent*> covering;
    for (const auto& node : forest.nodes)
        if (node.open_index <= i && i < node.close_index) covering.push_back(&node);
    std::sort(covering.begin(), covering.end(),
              [](const LoopComponent* a, const LoopComponent* b) {
                  return a->close_index < b->close_index;
              });
    std::optional<Symbol> prev;
    for (const auto& node : forest.nodes)
        if (node.close_index == i) prev = node.burger_type;
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (const auto* node : covering) {
        bool keep = !prev || node->burger_type != *prev;
        prev = node->burger_type;
        if (keep && out.size() < j_max) out.emplace_back(node->open_index, node->close_index);
    }
    return out;
}

void for_each_conditioned(int len, const std::function<void(const Word&)>& fn) {
    oracles::enumerate_words(len, [&](const std::vector<Symbol>& syms) {
        Word w{syms, 1};
        if (!reduce(w).empty()) return;
        fn(w);
    });
}

std::vector<Word> sampled_conditioned(std::int64_t n, int count, std::uint64_t seed) {
    ModelParams mp = derive_params(1.0 / 3.0);
    std::vector<Word> words;
    for (int r = 0; r < count; ++r)
        words.push_back(sample_empty_reduction(mp, n, seed + static_cast<std::uint64_t>(r),
                                               2000000)
                            .word);
    return words;
}

} // namespace

TEST_SUITE_BEGIN("loops");

TEST_CASE("forest of the quadrant word has one component") {
    Word w = word_from_text("HCFh");
    LoopForest f = loop_forest(w, match_indices(w));
    REQUIRE(f.nodes.size() == 1);
    CHECK(f.roots == std::vector<std::size_t>{0});
    const LoopComponent& node = f.nodes[0];
    CHECK(node.open_index == 2);
    CHECK(node.close_index == 3);
    CHECK(node.area == 1);
    CHECK(node.boundary_len == 1);
    CHECK(node.burger_type == Symbol::CheeseburgerB);
    CHECK(!node.parent.has_value());
    CHECK(node.children.empty());
}

TEST_CASE("words without flexible orders give an empty forest") {
    for (const char* text : {"Hh", "HhCc", "HCch"}) {
        Word w = word_from_text(text);
        LoopForest f = loop_forest(w, match_indices(w));
        CHECK(f.nodes.empty());
        CHECK(f.roots.empty());
        CHECK(loop_forest_json(f) == "[]");
    }
}

TEST_CASE("doubly nested intervals form a two node chain") {
    Word w = word_from_text("HCFF");
    LoopForest f = loop_forest(w, match_indices(w));
    REQUIRE(f.nodes.size() == 2);
    const LoopComponent& outer = f.nodes[0];
    const LoopComponent& inner = f.nodes[1];
    CHECK(outer.open_index == 1);
    CHECK(outer.close_index == 4);
    CHECK(outer.area == 3);
    CHECK(outer.boundary_len == 1);
    CHECK(outer.burger_type == Symbol::HamburgerB);
    CHECK(inner.open_index == 2);
    CHECK(inner.close_index == 3);
    CHECK(inner.area == 1);
    CHECK(inner.burger_type == Symbol::CheeseburgerB);
    CHECK(f.roots == std::vector<std::size_t>{0});
    CHECK(outer.children == std::vector<std::size_t>{1});
    REQUIRE(inner.parent.has_value());
    CHECK(*inner.parent == 0);
}

TEST_CASE("trailing matched pairs do not create components") {
    Word w = word_from_text("HCFFHhCc");
    MatchTable m = match_indices(w);
    LoopForest f = loop_forest(w, m);
    REQUIRE(f.nodes.size() == 2);
    CHECK(f.roots.size() == 1);
    CHECK(f.nodes[0].close_index == 4);
    CHECK(f.nodes[1].close_index == 3);

    CHECK(innermost_component_at(f, 2) == std::size_t{1});
    CHECK(innermost_component_at(f, 1) == std::size_t{0});
    CHECK(innermost_component_at(f, 3) == std::size_t{0});
    CHECK(!innermost_component_at(f, 4).has_value());
    CHECK(!innermost_component_at(f, 6).has_value());
    CHECK(component_closing_at(f, 3) == std::size_t{1});
    CHECK(component_closing_at(f, 4) == std::size_t{0});
    CHECK(!component_closing_at(f, 5).has_value());
}

TEST_CASE("boundary length matches the rewriting oracle") {
    oracles::Rewriter rewriter;
    for (const Word& w : sampled_conditioned(5, 40, 0x100db00d)) {
        MatchTable m = match_indices(w);
        LoopForest f = loop_forest(w, m);
        for (const LoopComponent& node : f.nodes) {
            std::vector<Symbol> sub(w.symbols.begin() + (node.open_index - 1),
                                    w.symbols.begin() + node.close_index);
            auto nf = rewriter.normal_form(sub);
            CHECK(node.boundary_len == static_cast<std::int64_t>(nf.size()) + 1);
        }
    }
}

TEST_CASE("next exit is the close of the containing interval") {
    for (int len : {4, 6, 8}) {
        for_each_conditioned(len, [&](const Word& w) {
            MatchTable m = match_indices(w);
            LoopForest f = loop_forest(w, m);
            for (std::int64_t i = 1; i <= w.last_index(); ++i) {
                if (w.at(i) != Symbol::FlexibleO) continue;
                auto idx = component_closing_at(f, i);
                REQUIRE(idx.has_value());
                auto exit = next_exit(w, m, i);
                const auto& parent = f.nodes[*idx].parent;
                if (parent) {
                    REQUIRE(exit.has_value());
                    CHECK(*exit == f.nodes[*parent].close_index);
                } else {
                    CHECK(!exit.has_value());
                }
            }
        });
    }
}

TEST_CASE("alternation at the next exit goes both ways from length four") {
    // Frozen from exhaustive enumeration of all conditioned words of length
    // <= 12: the first word with a next exit, and the first violation, is
    // HHFF; the first word where alternation holds is CHFF.
    Word holds = word_from_text("CHFF");
    CHECK(next_exit_alternates(holds, match_indices(holds), 3) == true);

    Word fails = word_from_text("HHFF");
    MatchTable mf = match_indices(fails);
    REQUIRE(next_exit(fails, mf, 3) == 4);
    CHECK(next_exit_alternates(fails, mf, 3) == false);
    CHECK(!next_exit_alternates(fails, mf, 4).has_value());
}

TEST_CASE("next exit skips flexible intervals rooted to its right") {
    // Smallest such conditioned word per the same enumeration.
    Word w = word_from_text("HHFHFF");
    MatchTable m = match_indices(w);
    REQUIRE(m.phi(3) == 2);
    REQUIRE(m.phi(5) == 4);
    REQUIRE(m.phi(6) == 1);
    CHECK(next_exit(w, m, 3) == 6);
    CHECK(next_exit(w, m, 5) == 6);
    CHECK(!next_exit(w, m, 6).has_value());
}

TEST_CASE("conditioned word counts stay frozen") {
    for (auto [len, expected] : {std::pair<int, int>{4, 36}, {6, 432}}) {
        int count = 0;
        for_each_conditioned(len, [&](const Word&) { ++count; });
        CHECK(count == expected);
    }
}

TEST_CASE("surrounding loops inside the quadrant word") {
    Word w = word_from_text("HCFh");
    MatchTable m = match_indices(w);
    auto at = [&](std::int64_t i) { return surrounding_loops(w, m, i, 2).thetas; };
    CHECK(at(2) == std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 3}});
    CHECK(at(1).empty());
    CHECK(at(3).empty());
    CHECK(at(4).empty());
    CHECK(surrounding_loops(w, m, 2, 0).thetas.empty());
    CHECK_THROWS_AS(surrounding_loops(w, m, 5, 2), OutOfRange);
    CHECK_THROWS_AS(surrounding_loops(w, m, 0, 2), OutOfRange);
}

TEST_CASE("nested alternating loops are reported innermost first") {
    using Pairs = std::vector<std::pair<std::int64_t, std::int64_t>>;
    for (const char* text : {"HCFF", "HCFFHhCc"}) {
        Word w = word_from_text(text);
        MatchTable m = match_indices(w);
        CHECK(surrounding_loops(w, m, 2, 4).thetas == Pairs{{2, 3}, {1, 4}});
        CHECK(surrounding_loops(w, m, 2, 1).thetas == Pairs{{2, 3}});
        CHECK(surrounding_loops(w, m, 3, 4).thetas == Pairs{{1, 4}});
    }
}

TEST_CASE("same type covers are filtered by alternation") {
    using Pairs = std::vector<std::pair<std::int64_t, std::int64_t>>;
    Word w = word_from_text("HHFF");
    MatchTable m = match_indices(w);
    CHECK(surrounding_loops(w, m, 2, 4).thetas == Pairs{{2, 3}});
    CHECK(surrounding_loops(w, m, 1, 4).thetas == Pairs{{1, 4}});
    // A loop closing exactly at the base index seeds the filter.
    CHECK(surrounding_loops(w, m, 3, 4).thetas.empty());

    Word deep = word_from_text("CCCFFF");
    MatchTable md = match_indices(deep);
    CHECK(surrounding_loops(deep, md, 3, 8).thetas == Pairs{{3, 4}});
    CHECK(surrounding_loops(deep, md, 4, 8).thetas.empty());
    CHECK(surrounding_loops(deep, md, 1, 8).thetas == Pairs{{1, 6}});
}

TEST_CASE("theta sequences nest, alternate, and bracket the base index") {
    for (const Word& w : sampled_conditioned(16, 60, 0x5eed10075)) {
        MatchTable m = match_indices(w);
        for (std::int64_t i = 1; i <= w.last_index(); ++i) {
            auto loops = surrounding_loops(w, m, i, 64);
            CHECK(loops.base_index == i);
            for (std::size_t j = 0; j < loops.thetas.size(); ++j) {
                auto [open, close] = loops.thetas[j];
                CHECK(m.phi(close) == open);
                CHECK(open <= i);
                CHECK(i < close);
                if (j > 0) {
                    CHECK(close > loops.thetas[j - 1].second);
                    CHECK(open < loops.thetas[j - 1].first);
                    CHECK(w.at(open) != w.at(loops.thetas[j - 1].first));
                }
            }
        }
    }
}

TEST_CASE("surrounding loops agree with the forest containment chain") {
    auto check_word = [](const Word& w) {
        MatchTable m = match_indices(w);
        LoopForest f = loop_forest(w, m);
        for (std::int64_t i = 1; i <= w.last_index(); ++i)
            for (std::size_t j_max : {std::size_t{1}, std::size_t{8}})
                CHECK(surrounding_loops(w, m, i, j_max).thetas == chain_thetas(f, i, j_max));
    };
    for (int len : {4, 6}) for_each_conditioned(len, check_word);
    for (const Word& w : sampled_conditioned(12, 40, 0xfeedc0de)) check_word(w);
}

TEST_CASE("children sit strictly inside their parent") {
    for (const Word& w : sampled_conditioned(16, 40, 0xabcdef12)) {
        LoopForest f = loop_forest(w, match_indices(w));
        std::int64_t root_area = 0;
        for (std::size_t r : f.roots) root_area += f.nodes[r].area;
        CHECK(root_area <= static_cast<std::int64_t>(w.symbols.size()));
        for (const LoopComponent& node : f.nodes) {
            CHECK(node.area == node.close_index - node.open_index);
            CHECK(node.area >= 1);
            CHECK(node.boundary_len >= 1);
            CHECK(is_burger(node.burger_type));
            for (std::size_t c : node.children) {
                CHECK(f.nodes[c].open_index > node.open_index);
                CHECK(f.nodes[c].close_index < node.close_index);
                REQUIRE(f.nodes[c].parent.has_value());
                CHECK(*f.nodes[c].parent ==
                      static_cast<std::size_t>(&node - f.nodes.data()));
            }
        }
    }
}

TEST_CASE("edge counts demand a closed word") {
    EdgeCount counts = edge_count_check(word_from_text("HCFh"));
    CHECK(counts.map_edges == 2);
    CHECK(counts.quad_edges == 4);
    EdgeCount six = edge_count_check(word_from_text("HHFHFF"));
    CHECK(six.map_edges == 3);
    CHECK(six.quad_edges == 6);
    CHECK_THROWS_AS(edge_count_check(word_from_text("HC")), NotClosed);
    CHECK_THROWS_AS(edge_count_check(word_from_text("HCF")), NotClosed);
    CHECK_THROWS_AS(edge_count_check(word_from_text("Fh")), NotClosed);
}

TEST_CASE("forest json mirrors the nesting") {
    Word w = word_from_text("HCFF");
    LoopForest f = loop_forest(w, match_indices(w));
    auto j = nlohmann::json::parse(loop_forest_json(f));
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 1);
    CHECK(j[0]["open"] == 1);
    CHECK(j[0]["close"] == 4);
    CHECK(j[0]["area"] == 3);
    CHECK(j[0]["boundary_len"] == 1);
    CHECK(j[0]["burger_type"] == "H");
    REQUIRE(j[0]["children"].size() == 1);
    CHECK(j[0]["children"][0]["open"] == 2);
    CHECK(j[0]["children"][0]["close"] == 3);
    CHECK(j[0]["children"][0]["burger_type"] == "C");
    CHECK(j[0]["children"][0]["children"].empty());
}

TEST_CASE("unmatched flexible orders are rejected") {
    Word w = word_from_text("FHh");
    MatchTable m = match_indices(w);
    CHECK_THROWS_AS(loop_forest(w, m), UnmatchedFlexible);
    CHECK_THROWS_AS(next_exit(w, m, 1), UnmatchedFlexible);
    CHECK_THROWS_AS(next_exit(w, m, 2), OutOfRange);
    CHECK_THROWS_AS(next_exit(w, m, 9), OutOfRange);
}

TEST_SUITE_END();
