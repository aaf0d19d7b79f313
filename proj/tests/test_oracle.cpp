#include <doctest.h>

#include <map>
#include <set>

#include "helpers.hpp"
#include "nmu/oracle.hpp"

using namespace nmu;
using testing::make;

namespace {

// Minimum of the strict-order matrix over all n! orderings.
std::vector<Mask> brute_canonical(const Poset& p) {
    const int n = p.size();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Mask> best;
    do {
        std::vector<Mask> rows(n, 0);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (p.less(a, b)) rows[perm[a]] |= bit(perm[b]);
        if (best.empty() || rows < best) best = rows;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// Number of partitions of the elements into saturated chains, by choosing
// the block of the smallest unused element recursively.
std::uint64_t count_partitions(const Poset& p, Mask unused) {
    if (!unused) return 1;
    const Element first = std::countr_zero(unused);
    std::uint64_t total = 0;
    // Blocks containing `first` are saturated chains through it; extend
    // upward and downward independently.
    std::function<void(Element, Mask)> up = [&](Element top, Mask block) {
        std::function<void(Element, Mask)> down = [&](Element bottom, Mask b) {
            total += count_partitions(p, unused & ~b);
            for (Element d : p.lower_covers(bottom))
                if ((unused >> d & 1) && d > first) down(d, b | bit(d));
        };
        down(first, block);
        for (Element u : p.upper_covers(top))
            if ((unused >> u & 1) && u > first) up(u, block | bit(u));
    };
    up(first, bit(first));
    return total;
}

}  // namespace

TEST_CASE("poset counts up to isomorphism") {
    const std::vector<std::size_t> all{1, 2, 5, 16, 63, 318, 2045};
    const std::vector<std::size_t> connected{1, 1, 3, 10, 44, 238, 1650};
    const auto posets = enumerate_posets(7, false);
    std::map<int, std::size_t> by_size, conn;
    for (const auto& c : posets) {
        ++by_size[c.poset.size()];
        if (c.poset.connected()) ++conn[c.poset.size()];
    }
    for (int n = 1; n <= 7; ++n) {
        CHECK(by_size[n] == all[n - 1]);
        CHECK(conn[n] == connected[n - 1]);
    }
    CHECK(enumerate_posets(7, true).size() == 1 + 1 + 3 + 10 + 44 + 238 + 1650);
    CHECK_THROWS_AS(enumerate_posets(9, false), SizeLimitError);
}

TEST_CASE("canonical keys agree with an exhaustive canonical form") {
    const auto posets = enumerate_posets(6, false);
    std::set<std::vector<Mask>> forms;
    for (const auto& c : posets) forms.insert(brute_canonical(c.poset));
    CHECK(forms.size() == posets.size());

    std::mt19937 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const Poset p = testing::random_poset(6, 0.3, rng);
        std::vector<Element> perm(6);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const Poset q = p.relabeled(perm);
        CHECK(canonical_form(p).key == canonical_form(q).key);
        CHECK(canonical_form(p).poset == canonical_form(q).poset);
    }
}

TEST_CASE("canonical order is by size and key") {
    const auto posets = enumerate_posets(5, false);
    for (std::size_t i = 1; i < posets.size(); ++i) {
        const auto& a = posets[i - 1];
        const auto& b = posets[i];
        CHECK((a.poset.size() < b.poset.size() || (a.poset.size() == b.poset.size() && a.key < b.key)));
    }
}

TEST_CASE("chain covers are counted correctly") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const Poset p = testing::random_poset(6, 0.35, rng);
        const auto covers = enumerate_chain_covers(p);
        CHECK(covers.size() == count_partitions(p, p.all()));
        for (const auto& c : covers) CHECK(is_chain_cover(p, c));
        std::set<std::vector<Chain>> distinct;
        for (const auto& c : covers) distinct.insert(c.normalized().chains);
        CHECK(distinct.size() == covers.size());
    }
    CHECK(enumerate_chain_covers(chain_poset(4)).size() == 8);
    CHECK(enumerate_chain_covers(antichain_poset(4)).size() == 1);
}

TEST_CASE("brute force search") {
    CHECK(brute_force_N2(grid_poset(2, 2)).found);
    CHECK_FALSE(brute_force_N2(make(4, {{0, 1}, {0, 2}, {0, 3}})).found);
    const auto r = brute_force_N2(grid_poset(2, 3));
    REQUIRE(r.witness);
    CHECK(nmu_check(grid_poset(2, 3), *r.witness, LabelingMode::Permutations).holds);
    CHECK_THROWS_AS(brute_force_N2(chain_poset(8)), SizeLimitError);
}

TEST_CASE("variant predicates") {
    const CoverPair g = grid_cover_pair(2, 3);
    CHECK(no_chain_containment(g));
    CHECK(small_intersections(g));
    const CoverPair nested{ChainCover{{{0, 1, 2}}}, ChainCover{{{0, 1}, {2}}}};
    CHECK_FALSE(no_chain_containment(nested));
    CHECK_FALSE(small_intersections(nested));
}

TEST_CASE("oracle results do not depend on workers") {
    OracleOptions o;
    o.max_n = 5;
    o.variants = true;
    o.jobs = 1;
    const auto a = oracle_compare(o);
    o.jobs = 3;
    const auto b = oracle_compare(o);
    CHECK(a.mismatches.empty());
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].key == b.records[i].key);
        CHECK(a.records[i].theorem_n2 == b.records[i].theorem_n2);
        CHECK(a.records[i].brute_witness.has_value() == b.records[i].brute_witness.has_value());
    }
    o.max_n = 8;
    CHECK_THROWS_AS(oracle_compare(o), SizeLimitError);
}

TEST_CASE("SplitMix64 streams") {
    SplitMix64 a(42, 7), b(42, 7), c(42, 8);
    const auto x = a.next();
    CHECK(x == b.next());
    CHECK(x != c.next());
    std::vector<int> hits(5, 0);
    SplitMix64 r(1, 0);
    for (int t = 0; t < 5000; ++t) ++hits[r.below(5)];
    for (int h : hits) CHECK(h > 850);
}

TEST_CASE("double-sort distributions") {
    // Sorting a chain yields its only linear extension.
    const Poset c = chain_poset(4);
    const CoverPair cp{ChainCover{{{0, 1, 2, 3}}}, ChainCover{{{0, 1, 2, 3}}}};
    const auto hc = sample_extension_distribution(c, cp, 300, 5);
    CHECK(hc.counts.size() == 1);
    CHECK(hc.counts.begin()->second == 300);

    // On the 2x2 grid the row-then-column sort puts
    // min(max(row 0), max(row 1)) on element 1.
    const Poset g = grid_poset(2, 2);
    std::map<int, std::uint64_t> expect;
    std::vector<int> l{1, 2, 3, 4};
    do ++expect[std::min(std::max(l[0], l[1]), std::max(l[2], l[3]))];
    while (std::next_permutation(l.begin(), l.end()));
    const auto h = sample_extension_distribution(g, grid_cover_pair(2, 2), 0, 0, true);
    CHECK(h.trials == 24);
    REQUIRE(h.counts.size() == 2);
    for (const auto& [ranking, count] : h.counts) {
        CHECK(is_linear_extension(g, ranking));
        CHECK(count == expect[ranking[1]]);
    }
    CHECK(expect[2] == 8);

    const auto s1 = sample_extension_distribution(grid_poset(2, 3), grid_cover_pair(2, 3), 500, 99);
    const auto s2 = sample_extension_distribution(grid_poset(2, 3), grid_cover_pair(2, 3), 500, 99);
    CHECK(s1.counts == s2.counts);

    const CoverPair bad{ChainCover{{{0, 1}, {2}}}, ChainCover{{{0}, {1, 2}}}};
    CHECK_THROWS_AS(sample_extension_distribution(chain_poset(3), bad, 10, 1), InvalidCoverError);
}
