#include <doctest.h>

#include "helpers.hpp"
#include "nmu/oracle.hpp"
#include "nmu/sorting.hpp"

using namespace nmu;
using testing::make;

namespace {

ChainCover cover(std::vector<Chain> chains) { return ChainCover{std::move(chains)}; }

std::vector<int> grid_labels(std::vector<std::vector<int>> rows) {
    std::vector<int> out;
    for (const auto& r : rows) out.insert(out.end(), r.begin(), r.end());
    return out;
}

}  // namespace

TEST_CASE("row then column sort of a 3x4 array") {
    const CoverPair g = grid_cover_pair(3, 4);
    const auto input = grid_labels({{4, 9, 7, 8}, {12, 5, 1, 10}, {2, 6, 11, 3}});
    const auto rows = chain_sort(g.first, input);
    CHECK(rows == grid_labels({{4, 7, 8, 9}, {1, 5, 10, 12}, {2, 3, 6, 11}}));
    const auto cols = chain_sort(g.second, rows);
    CHECK(cols == grid_labels({{1, 3, 6, 9}, {2, 5, 8, 11}, {4, 7, 10, 12}}));
    CHECK(is_sorted_along(g.first, cols));
}

TEST_CASE("chain cover validation") {
    const Poset c = chain_poset(3);
    CHECK_NOTHROW(validate_chain_cover(c, cover({{0, 1, 2}})));
    CHECK_THROWS_AS(validate_chain_cover(c, cover({{0, 1}, {1, 2}})), OverlapError);
    CHECK_THROWS_AS(validate_chain_cover(c, cover({{0, 2}, {1}})), NotSaturatedError);
    CHECK_THROWS_AS(validate_chain_cover(c, cover({{1, 0}, {2}})), NotSaturatedError);
    CHECK_THROWS_AS(validate_chain_cover(c, cover({{0, 1}})), NotCoveringError);
    CHECK_FALSE(is_chain_cover(c, cover({{0}, {1}})));
}

TEST_CASE("edge colors") {
    const Poset g = grid_poset(2, 2);
    const CoverPair pair = grid_cover_pair(2, 2);
    // covers of the 2x2 grid: (0,1) (0,2) (1,3) (2,3)
    CHECK(edge_colors(g, pair) == std::vector<EdgeColor>{EdgeColor::Red, EdgeColor::Blue, EdgeColor::Blue, EdgeColor::Red});
    const CoverPair doubled{cover({{0, 1}, {2}, {3}}), cover({{0, 1, 3}, {2}})};
    CHECK(edge_colors(g, doubled)[0] == EdgeColor::Double);
    CHECK(edge_colors(g, doubled)[3] == EdgeColor::None);
    CHECK_FALSE(edge_coverage(g, doubled));
}

TEST_CASE("grids hold with rows and columns") {
    for (int m = 1; m <= 3; ++m)
        for (int n = 1; n <= 3; ++n) {
            const auto v = nmu_check(grid_poset(m, n), grid_cover_pair(m, n), LabelingMode::Permutations);
            CHECK(v.holds);
            CHECK(v.reason == VerdictReason::Holds);
        }
    const auto v = nmu_check(grid_poset(4, 5), grid_cover_pair(4, 5), LabelingMode::ZeroOne);
    CHECK(v.holds);
    CHECK(v.labelings_checked == (1u << 20));
}

TEST_CASE("a chain split into two overlapping covers fails") {
    const Poset c = chain_poset(3);
    const CoverPair pair{cover({{0, 1}, {2}}), cover({{0}, {1, 2}})};
    const auto v = nmu_check(c, pair, LabelingMode::Permutations);
    CHECK_FALSE(v.holds);
    REQUIRE(v.counterexample);
    CHECK(v.counterexample->labels == std::vector<int>{2, 3, 1});
    CHECK(v.counterexample->first_sorted == 1);
    CHECK(v.counterexample->edge == Cover{0, 1});
    CHECK(v.labelings_checked == 4);
}

TEST_CASE("missing edge coverage is reported before sorting") {
    const Poset g = grid_poset(2, 2);
    const CoverPair rows_twice{grid_cover_pair(2, 2).first, grid_cover_pair(2, 2).first};
    const auto v = nmu_check(g, rows_twice, LabelingMode::ZeroOne);
    CHECK_FALSE(v.holds);
    CHECK(v.reason == VerdictReason::EdgeCoverage);
    CHECK(v.labelings_checked == 0);
}

TEST_CASE("invalid covers throw") {
    const Poset c = chain_poset(3);
    const CoverPair bad{cover({{0, 2}, {1}}), cover({{0, 1, 2}})};
    CHECK_THROWS_AS(nmu_check(c, bad, LabelingMode::ZeroOne), InvalidCoverError);
}

TEST_CASE("size guards") {
    Chain all(31);
    std::iota(all.begin(), all.end(), 0);
    const CoverPair pair{cover({all}), cover({all})};
    CHECK_THROWS_AS(nmu_check(chain_poset(31), pair, LabelingMode::ZeroOne), SizeLimitError);
    CHECK_THROWS_AS(nmu_check(chain_poset(31), pair, LabelingMode::Permutations), SizeLimitError);
}

TEST_CASE("zero-one and permutation verdicts agree on random pairs") {
    std::mt19937 rng(5);
    int checked = 0, failing = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const Poset p = testing::random_poset(3 + trial % 4, 0.4, rng);
        const auto covers = enumerate_chain_covers(p);
        std::uniform_int_distribution<std::size_t> pick(0, covers.size() - 1);
        for (int k = 0; k < 6; ++k) {
            const CoverPair pair{covers[pick(rng)], covers[pick(rng)]};
            const auto a = nmu_check(p, pair, LabelingMode::ZeroOne);
            const auto b = nmu_check(p, pair, LabelingMode::Permutations);
            CHECK(a.holds == b.holds);
            CHECK(a.reason == b.reason);
            ++checked;
            failing += !a.holds;
        }
    }
    CHECK(checked == 360);
    CHECK(failing > 0);
}

TEST_CASE("counterexamples do not depend on the number of workers") {
    std::mt19937 rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        const Poset p = testing::random_poset(7, 0.4, rng);
        const auto covers = enumerate_chain_covers(p);
        const CoverPair pair{covers[trial % covers.size()], covers[(7 * trial + 3) % covers.size()]};
        for (auto mode : {LabelingMode::ZeroOne, LabelingMode::Permutations}) {
            const auto a = nmu_check(p, pair, mode, 1);
            const auto b = nmu_check(p, pair, mode, 4);
            CHECK(a.holds == b.holds);
            CHECK(a.labelings_checked == b.labelings_checked);
            if (a.counterexample) {
                REQUIRE(b.counterexample);
                CHECK(a.counterexample->labels == b.counterexample->labels);
                CHECK(a.counterexample->edge == b.counterexample->edge);
            }
        }
    }
}

TEST_CASE("chain sort is idempotent and commutes with monotone relabeling") {
    std::mt19937 rng(3);
    const CoverPair g = grid_cover_pair(3, 4);
    std::vector<int> labels(12);
    std::iota(labels.begin(), labels.end(), 1);
    for (int trial = 0; trial < 50; ++trial) {
        std::shuffle(labels.begin(), labels.end(), rng);
        for (int i = 0; i < 2; ++i) {
            const auto once = chain_sort(g[i], labels);
            CHECK(chain_sort(g[i], once) == once);
            CHECK(is_sorted_along(g[i], once));
            // f(x) = 3x - 7 is increasing; so is thresholding at 6.
            std::vector<int> f(12), t(12);
            for (int e = 0; e < 12; ++e) {
                f[e] = 3 * labels[e] - 7;
                t[e] = labels[e] > 6;
            }
            const auto sf = chain_sort(g[i], f), st = chain_sort(g[i], t);
            for (int e = 0; e < 12; ++e) {
                CHECK(sf[e] == 3 * once[e] - 7);
                CHECK(st[e] == (once[e] > 6 ? 1 : 0));
            }
        }
    }
}

TEST_CASE("bit-parallel sorter matches chain_sort on 0-1 labels") {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const Poset p = testing::random_poset(8, 0.35, rng);
        const auto covers = enumerate_chain_covers(p);
        const ChainCover& c = covers[rng() % covers.size()];
        const ZeroOneSorter z(c);
        for (Mask m = 0; m < bit(8); ++m) {
            std::vector<int> labels(8);
            for (int e = 0; e < 8; ++e) labels[e] = (m >> e) & 1;
            const auto sorted = chain_sort(c, labels);
            Mask expect = 0;
            for (int e = 0; e < 8; ++e) expect |= sorted[e] ? bit(e) : 0;
            CHECK(z.sort(m) == expect);
        }
    }
}

TEST_CASE("restriction cuts chains at missing elements") {
    const ChainCover c = cover({{0, 1, 2, 3}, {4, 5}});
    const std::vector<Element> subset{0, 1, 3, 5};
    const ChainCover r = restrict_cover(c, subset, 6);
    CHECK(r.normalized() == cover({{0, 1}, {2}, {3}}).normalized());
}

TEST_CASE("cover pairs compare as unordered pairs") {
    const CoverPair g = grid_cover_pair(2, 3);
    CHECK(g == g.swapped());
    CHECK_FALSE(g == CoverPair{g.first, g.first});
}
