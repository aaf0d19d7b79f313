// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "nmu/classifier.hpp"
#include "nmu/cylinder.hpp"
#include "nmu/io.hpp"
#include "nmu/oracle.hpp"

using namespace nmu;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

void fail(Outcome& o, const std::string& why) {
    if (o.pass) o.detail = why;
    o.pass = false;
}

std::vector<int> flatten(std::vector<std::vector<int>> rows) {
    std::vector<int> out;
    for (const auto& r : rows) out.insert(out.end(), r.begin(), r.end());
    return out;
}

Outcome sort_example() {
    Outcome o;
    const CoverPair g = grid_cover_pair(3, 4);
    const auto input = flatten({{4, 9, 7, 8}, {12, 5, 1, 10}, {2, 6, 11, 3}});
    const auto rows = chain_sort(g.first, input);
    const auto cols = chain_sort(g.second, rows);
    if (rows != flatten({{4, 7, 8, 9}, {1, 5, 10, 12}, {2, 3, 6, 11}})) fail(o, "row sort differs");
    if (cols != flatten({{1, 3, 6, 9}, {2, 5, 8, 11}, {4, 7, 10, 12}})) fail(o, "column sort differs");
    return o;
}

Outcome grids() {
    Outcome o;
    for (int m = 1; m <= 4; ++m)
        for (int n = 1; n <= 4; ++n) {
            const Poset p = grid_poset(m, n);
            const CoverPair pair = grid_cover_pair(m, n);
            if (!nmu_check(p, pair, LabelingMode::ZeroOne).holds)
                fail(o, std::to_string(m) + "x" + std::to_string(n) + " fails in zero-one mode");
            if (m <= 3 && n <= 3 && !nmu_check(p, pair, LabelingMode::Permutations).holds)
                fail(o, std::to_string(m) + "x" + std::to_string(n) + " fails in permutations mode");
        }
    return o;
}

Outcome small_connected() {
    Outcome o;
    int count = 0;
    for (const auto& c : enumerate_posets(3, true)) {
        ++count;
        if (!classify_N2(c.poset).in_n2) fail(o, "classifier rejects " + describe(c.poset));
        if (!brute_force_N2(c.poset).found) fail(o, "brute force rejects " + describe(c.poset));
    }
    if (count != 5) fail(o, "expected 5 connected posets, got " + std::to_string(count));
    if (o.pass) o.detail = "5 posets";
    return o;
}

Outcome claw() {
    Outcome o;
    const std::vector<Cover> cv{{0, 1}, {0, 2}, {0, 3}};
    const Poset p(4, cv);
    const auto r = classify_N2(p);
    if (r.in_n2) fail(o, "classifier accepts the claw");
    if (!r.obstruction || r.obstruction->kind != ObstructionKind::DegreeBound) fail(o, "wrong obstruction");
    if (brute_force_N2(p).found) fail(o, "brute force accepts the claw");
    return o;
}

Outcome oracle_six() {
    Outcome o;
    OracleOptions opt;
    opt.max_n = 6;
    opt.jobs = 8;
    const auto report = oracle_compare(opt);
    if (report.records.size() != 1 + 2 + 5 + 16 + 63 + 318) fail(o, "wrong number of posets");
    if (!report.mismatches.empty()) fail(o, std::to_string(report.mismatches.size()) + " mismatches");
    if (o.pass) o.detail = std::to_string(report.records.size()) + " posets, 0 mismatches";
    return o;
}

Outcome zero_one_principle() {
    Outcome o;
    std::uint64_t pairs = 0;
    for (const auto& c : enumerate_posets(5, false)) {
        const auto covers = enumerate_chain_covers(c.poset);
        for (std::size_t i = 0; i < covers.size(); ++i)
            for (std::size_t j = i; j < covers.size(); ++j) {
                const CoverPair pair{covers[i], covers[j]};
                const auto a = nmu_check(c.poset, pair, LabelingMode::ZeroOne);
                const auto b = nmu_check(c.poset, pair, LabelingMode::Permutations);
                ++pairs;
                if (a.holds != b.holds) fail(o, "verdicts differ on " + describe(c.poset));
            }
    }
    if (o.pass) o.detail = std::to_string(pairs) + " pairs";
    return o;
}

Outcome cylinder_windows() {
    Outcome o;
    std::uint64_t windows = 0;
    for (int n = 2; n <= 5; ++n)
        for (int k = 1; k < n; ++k)
            for (const auto& cells : enumerate_windows(k, n, 8)) {
                const CylWindow w = window_poset(k, n, cells);
                ++windows;
                if (!nmu_check(w.poset(), canonical_cover_pair(w), LabelingMode::ZeroOne).holds)
                    fail(o, "window fails on Cyl_" + std::to_string(k) + "," + std::to_string(n));
            }
    if (o.pass) o.detail = std::to_string(windows) + " windows";
    return o;
}

Outcome go_around() {
    Outcome o;
    // On Cyl_{3,4} the cycle (1,0) -> (2,0) -> (0,1) -> (1,1) closes with
    // the step (1,0) -> (1,1).
    const CylWindow w = window_poset(3, 4, {{0, 1}, {1, 1}, {1, 0}, {2, 0}});
    auto at = [&](long long i, long long j) { return *w.element_at(cyl_canonical(3, 4, i, j)); };
    Diamond d;
    d.bottom = at(1, 0);
    d.top = at(1, 1);
    d.chain_a = {at(1, 0), at(2, 0), at(0, 1), at(1, 1)};
    d.chain_b = {at(1, 0), at(1, 1)};
    if (!goes_around(w, d)) fail(o, "Cyl_{3,4} cycle not detected");

    int rectangles = 0;
    for (int n = 2; n <= 7; ++n)
        for (int k = 1; k < n; ++k)
            for (int rows = 1; rows <= k; ++rows)
                for (int cols = 1; cols <= n - k; ++cols) {
                    std::vector<CylCoord> cells;
                    for (int i = 0; i < rows; ++i)
                        for (int j = 0; j < cols; ++j) cells.push_back({i, j});
                    const CylWindow r = window_poset(k, n, cells);
                    ++rectangles;
                    for (const auto& dd : find_diamonds(r.poset(), false))
                        if (goes_around(r, dd)) fail(o, "rectangle diamond goes around");
                }
    if (o.pass) o.detail = std::to_string(rectangles) + " rectangles";
    return o;
}

// Diamond x < a1 < a2 < a3 < y, x < b1 < b2 < b3 < y with a chain of
// `below` elements under x and `above` elements over y.
struct Family {
    Poset poset;
    CoverPair type_one;
};

Family sharp_family(int below, int above) {
    std::vector<Cover> cv{{0, 1}, {1, 2}, {2, 3}, {3, 7}, {0, 4}, {4, 5}, {5, 6}, {6, 7}};
    int n = 8;
    Chain bottom, top;
    for (int t = 0, prev = 0; t < below; ++t, prev = n - 1) {
        cv.push_back({n, prev});
        bottom.insert(bottom.begin(), n++);
    }
    for (int t = 0, prev = 7; t < above; ++t, prev = n - 1) {
        cv.push_back({prev, n});
        top.push_back(n++);
    }
    auto join = [](Chain a, const Chain& b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };
    Family f{Poset(n, cv), {}};
    f.type_one.first.chains = {join(bottom, {0, 1, 2, 3}), join({4, 5, 6, 7}, top)};
    f.type_one.second.chains = {join(bottom, {0, 4, 5, 6}), join({1, 2, 3, 7}, top)};
    return f;
}

Outcome sharpness() {
    Outcome o;
    std::string summary;
    for (int below = 0; below <= 3; ++below)
        for (int above = 0; above <= 3; ++above) {
            const int longest = std::max(below, above);
            if (longest < 2) continue;
            const Family f = sharp_family(below, above);
            const auto diamonds = find_diamonds(f.poset, false);
            if (diamonds.size() != 1) {
                fail(o, "family should have one diamond");
                continue;
            }
            const Diamond& d = diamonds[0];
            const bool pair_holds = nmu_check(f.poset, f.type_one, LabelingMode::ZeroOne).holds;
            const bool bound = typeI_bound_check(d);
            const bool theorem = classify_N2(f.poset).in_n2;
            const auto brute = brute_force_N2(f.poset, 14);
            const auto type_one = brute_force_search(
                f.poset, [&](const CoverPair& pair) { return diamond_type(pair, d) == DiamondType::TypeI; }, 14);
            const std::string tag = "C=" + std::to_string(below) + ",D=" + std::to_string(above);
            if (longest == 2) {
                if (!pair_holds) fail(o, tag + ": Type I pair fails");
                if (!bound) fail(o, tag + ": bound check rejects");
                if (!brute.found) fail(o, tag + ": brute force finds no witness");
                if (!type_one.found) fail(o, tag + ": no Type I witness");
            } else {
                if (pair_holds) fail(o, tag + ": Type I pair holds");
                if (bound) fail(o, tag + ": bound check accepts");
                if (type_one.found) fail(o, tag + ": Type I witness found");
            }
            if (theorem != brute.found) fail(o, tag + ": classifier and brute force disagree");
            summary += " " + tag + (brute.found ? ":N2" : ":not");
        }
    if (o.pass) o.detail = "membership" + summary;
    return o;
}

Outcome convex_closure() {
    Outcome o;
    std::vector<Classification> members;
    std::vector<Poset> posets;
    for (const auto& c : enumerate_posets(7, true)) {
        auto r = classify_N2(c.poset);
        if (r.in_n2 && r.witness_verified.value_or(false) && c.poset.size() >= 3) {
            members.push_back(std::move(r));
            posets.push_back(c.poset);
        }
    }
    std::mt19937_64 rng(2024);
    int tested = 0, attempts = 0;
    while (tested < 100 && attempts < 100000) {
        ++attempts;
        const std::size_t idx = rng() % posets.size();
        const Poset& p = posets[idx];
        const Mask subset = rng() & p.all();
        if (!subset || subset == p.all() || !is_convex(p, subset)) continue;
        std::vector<Element> elems;
        for (Element e = 0; e < p.size(); ++e)
            if ((subset >> e) & 1u) elems.push_back(e);
        const Poset q = p.induced(elems);
        const CoverPair pair = restrict_pair(*members[idx].witness_pair, elems, p.size());
        ++tested;
        if (!nmu_check(q, pair, LabelingMode::Permutations).holds) fail(o, "restriction fails on " + describe(p));
    }
    if (tested < 100) fail(o, "only " + std::to_string(tested) + " subposets sampled");
    if (o.pass) o.detail = std::to_string(tested) + " subposets";
    return o;
}

Outcome doubleprime() {
    Outcome o;
    int posets = 0, members = 0, literal_disagree = 0;
    for (const auto& c : enumerate_posets(6, false)) {
        ++posets;
        const bool theorem = classify_N2_doubleprime(c.poset);
        const bool brute = brute_force_search(c.poset, small_intersections).found;
        members += brute;
        if (theorem != brute) fail(o, "disagree on " + describe(c.poset));
        // Unsplit embeddability alone, which ignores wrapping windows.
        const bool literal = classify_N2(c.poset).in_n2 && components_embed_unsplit(c.poset);
        literal_disagree += literal != brute;
    }
    o.detail = std::to_string(posets) + " posets, " + std::to_string(members) + " members; " +
               std::to_string(literal_disagree) + " disagreements for unsplit embeddability alone";
    return o;
}

Outcome determinism() {
    Outcome o;
    OracleOptions opt;
    opt.max_n = 6;
    opt.variants = true;
    std::string reference;
    for (int jobs : {1, 4, 8}) {
        opt.jobs = jobs;
        const auto report = oracle_compare(opt);
        const std::string out = records_jsonl(report) + summary_json(report, opt).dump(2);
        if (reference.empty())
            reference = out;
        else if (out != reference)
            fail(o, "output differs with " + std::to_string(jobs) + " workers");
    }
    if (o.pass) o.detail = std::to_string(reference.size()) + " bytes";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 sort example", sort_example},
        {"2 grids", grids},
        {"3 small connected posets", small_connected},
        {"4 claw", claw},
        {"5 oracle n<=6", oracle_six},
        {"6 zero-one principle", zero_one_principle},
        {"7 cylinder windows", cylinder_windows},
        {"8 go-around detection", go_around},
        {"9 Type I sharpness", sharpness},
        {"10 convex closure", convex_closure},
        {"11 N2'' equivalence", doubleprime},
        {"12 oracle determinism", determinism},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            fail(o, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %-26s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), secs, o.detail.c_str());
        failed += !o.pass;
    }
    std::fflush(stdout);
    return failed ? 1 : 0;
}
