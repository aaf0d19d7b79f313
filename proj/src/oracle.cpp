#include "nmu/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <numeric>
#include <set>
#include <thread>

namespace nmu {

namespace {

// Label-invariant colors, refined by the multisets of neighbor colors until
// the partition stops splitting.
std::vector<int> refined_colors(const Poset& p) {
    const int n = p.size();
    // Ordering by below-set size visits every element after those below it.
    std::vector<int> height(n, 0);
    std::vector<Element> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Element a, Element b) {
        return std::popcount(p.strictly_below(a)) < std::popcount(p.strictly_below(b));
    });
    for (Element e : order)
        for (Element d : p.lower_covers(e)) height[e] = std::max(height[e], height[d] + 1);

    using Sig = std::vector<int>;
    std::vector<Sig> sig(n);
    for (Element e = 0; e < n; ++e)
        sig[e] = {height[e], std::popcount(p.strictly_below(e)), std::popcount(p.strictly_above(e)),
                  static_cast<int>(p.lower_covers(e).size()), static_cast<int>(p.upper_covers(e).size())};
    auto rank = [&](const std::vector<Sig>& s) {
        std::vector<Sig> distinct(s);
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        std::vector<int> out(n);
        for (Element e = 0; e < n; ++e)
            out[e] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), s[e]) - distinct.begin());
        return std::pair{out, static_cast<int>(distinct.size())};
    };
    auto [color, classes] = rank(sig);
    while (true) {
        std::vector<Sig> next(n);
        for (Element e = 0; e < n; ++e) {
            Sig up, down;
            for (Element f : p.upper_covers(e)) up.push_back(color[f]);
            for (Element f : p.lower_covers(e)) down.push_back(color[f]);
            std::sort(up.begin(), up.end());
            std::sort(down.begin(), down.end());
            next[e] = {color[e], -1};
            next[e].insert(next[e].end(), up.begin(), up.end());
            next[e].push_back(-2);
            next[e].insert(next[e].end(), down.begin(), down.end());
        }
        auto [c2, k2] = rank(next);
        if (k2 == classes) break;
        color = std::move(c2);
        classes = k2;
    }
    return color;
}

// Byte e of the key is the strict up-set of the e-th element, in positions.
std::string key_for(const Poset& p, const std::vector<Element>& seq) {
    const int n = p.size();
    std::vector<int> pos(n);
    for (int t = 0; t < n; ++t) pos[seq[t]] = t;
    std::string key(1, static_cast<char>(n));
    for (int t = 0; t < n; ++t) {
        unsigned row = 0;
        Mask above = p.strictly_above(seq[t]);
        while (above) {
            row |= 1u << pos[std::countr_zero(above)];
            above &= above - 1;
        }
        key.push_back(static_cast<char>(row));
    }
    return key;
}

}  // namespace

CanonicalPoset canonical_form(const Poset& p) {
    const int n = p.size();
    if (n > 8) throw SizeLimitError("canonical form supports at most 8 elements");
    const auto color = refined_colors(p);
    std::vector<Element> seq(n);
    std::iota(seq.begin(), seq.end(), 0);
    std::sort(seq.begin(), seq.end(), [&](Element a, Element b) {
        return color[a] != color[b] ? color[a] < color[b] : a < b;
    });
    // Blocks of equal color are permuted independently (odometer over
    // next_permutation), which covers every color-preserving ordering.
    std::vector<std::pair<int, int>> blocks;
    for (int t = 0; t < n;) {
        int u = t;
        while (u < n && color[seq[u]] == color[seq[t]]) ++u;
        blocks.emplace_back(t, u);
        t = u;
    }
    std::string best = key_for(p, seq);
    std::vector<Element> best_seq = seq;
    while (true) {
        std::size_t b = 0;
        for (; b < blocks.size(); ++b) {
            auto [lo, hi] = blocks[b];
            if (std::next_permutation(seq.begin() + lo, seq.begin() + hi)) break;
        }
        if (b == blocks.size()) break;
        std::string k = key_for(p, seq);
        if (k < best) {
            best = std::move(k);
            best_seq = seq;
        }
    }
    std::vector<Element> perm(n);
    for (int t = 0; t < n; ++t) perm[best_seq[t]] = t;
    return {p.relabeled(perm), best};
}

std::string key_hex(const std::string& key) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (unsigned char c : key) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 15]);
    }
    return out;
}

std::vector<CanonicalPoset> enumerate_posets(int max_n, bool connected_only) {
    if (max_n > 8) throw SizeLimitError("poset enumeration supports at most 8 elements");
    std::vector<CanonicalPoset> all;
    std::vector<CanonicalPoset> level;
    if (max_n >= 1) level.push_back(canonical_form(Poset(1, {})));
    for (int n = 1; n <= max_n; ++n) {
        for (const auto& c : level)
            if (!connected_only || c.poset.connected()) all.push_back(c);
        if (n == max_n) break;
        // Every poset on n+1 elements arises from one on n elements by
        // adding a maximal element above a down-set.
        std::map<std::string, Poset> next;
        for (const auto& c : level) {
            const Poset& q = c.poset;
            for (Mask d = 0; d < bit(n); ++d) {
                bool down_closed = true;
                for (Mask rest = d; rest && down_closed; rest &= rest - 1)
                    down_closed = (q.strictly_below(std::countr_zero(rest)) & ~d) == 0;
                if (!down_closed) continue;
                std::vector<Mask> above(n + 1, 0);
                for (Element e = 0; e < n; ++e)
                    above[e] = q.strictly_above(e) | (((d >> e) & 1u) ? bit(n) : 0);
                auto canon = canonical_form(Poset::from_strict_above(above));
                next.try_emplace(std::move(canon.key), std::move(canon.poset));
            }
        }
        level.clear();
        for (auto& [k, q] : next) level.push_back({std::move(q), k});
    }
    return all;
}

std::vector<ChainCover> enumerate_chain_covers(const Poset& p, int max_elements) {
    const int n = p.size();
    if (n > max_elements) throw SizeLimitError("too many elements for chain cover enumeration");
    // Choose for each element its successor along its chain (or none); a
    // successor may be taken by at most one element.
    std::vector<ChainCover> out;
    std::vector<Element> next(n, -1);
    std::vector<bool> taken(n, false);
    std::function<void(Element)> rec = [&](Element e) {
        if (e == n) {
            ChainCover c;
            for (Element s = 0; s < n; ++s) {
                if (taken[s]) continue;
                Chain chain;
                for (Element cur = s; cur >= 0; cur = next[cur]) chain.push_back(cur);
                c.chains.push_back(std::move(chain));
            }
            out.push_back(std::move(c));
            return;
        }
        next[e] = -1;
        rec(e + 1);
        for (Element f : p.upper_covers(e)) {
            if (taken[f]) continue;
            taken[f] = true;
            next[e] = f;
            rec(e + 1);
            taken[f] = false;
        }
        next[e] = -1;
    };
    rec(0);
    return out;
}

BruteForceResult brute_force_search(const Poset& p, const std::function<bool(const CoverPair&)>& accept,
                                    int max_elements) {
    if (p.size() > max_elements) throw SizeLimitError("too many elements for brute force");
    BruteForceResult res;
    const auto covers = enumerate_chain_covers(p, max_elements);
    const std::size_t edges = p.covers().size();
    const Mask full = edges == 64 ? ~Mask{0} : bit(static_cast<int>(edges)) - 1;
    std::vector<Mask> masks;
    std::vector<ZeroOneSorter> sorters;
    for (const auto& c : covers) {
        masks.push_back(c.edge_mask(p));
        sorters.emplace_back(c);
    }
    for (std::size_t i = 0; i < covers.size(); ++i)
        for (std::size_t j = i; j < covers.size(); ++j) {
            if ((masks[i] | masks[j]) != full) continue;
            ++res.pairs_tested;
            if (!nmu_holds_zero_one(sorters[i], sorters[j], p.size())) continue;
            CoverPair pair{covers[i], covers[j]};
            if (!accept(pair)) continue;
            res.found = true;
            res.witness = std::move(pair);
            return res;
        }
    return res;
}

BruteForceResult brute_force_N2(const Poset& p, int max_elements) {
    return brute_force_search(p, [](const CoverPair&) { return true; }, max_elements);
}

namespace {

Mask chain_mask(const Chain& c) {
    Mask m = 0;
    for (Element e : c) m |= bit(e);
    return m;
}

}  // namespace

bool no_chain_containment(const CoverPair& pair) {
    for (const Chain& a : pair.first.chains)
        for (const Chain& b : pair.second.chains) {
            const Mask ma = chain_mask(a), mb = chain_mask(b);
            if ((ma & ~mb) == 0 || (mb & ~ma) == 0) return false;
        }
    return true;
}

bool small_intersections(const CoverPair& pair) {
    for (const Chain& a : pair.first.chains)
        for (const Chain& b : pair.second.chains)
            if (std::popcount(chain_mask(a) & chain_mask(b)) > 1) return false;
    return true;
}

namespace {

OracleRecord evaluate(const CanonicalPoset& c, const OracleOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    OracleRecord r;
    r.size = c.poset.size();
    r.key = key_hex(c.key);
    r.poset = c.poset;
    r.connected = c.poset.connected();
    ClassifyOptions copts = options.classify;
    copts.variants = copts.variants || options.variants;
    r.classification = classify_N2(c.poset, copts);
    r.theorem_n2 = r.classification.in_n2;
    r.theorem_n2_prime = r.classification.in_n2_prime;
    r.theorem_n2_doubleprime = r.classification.in_n2_doubleprime;
    if (options.brute_force) {
        auto bf = brute_force_N2(c.poset);
        r.brute_n2 = bf.found;
        r.brute_witness = bf.witness;
        if (options.variants) {
            r.brute_n2_prime = bf.found && brute_force_search(c.poset, no_chain_containment).found;
            r.brute_n2_doubleprime = bf.found && brute_force_search(c.poset, small_intersections).found;
        }
    } else {
        r.brute_n2 = r.theorem_n2;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace

OracleReport oracle_compare(const OracleOptions& options) {
    if (options.max_n > 7 && options.brute_force)
        throw SizeLimitError("brute force is limited to posets of at most 7 elements");
    const auto posets = enumerate_posets(options.max_n, options.connected_only);
    OracleReport report;
    report.records.resize(posets.size());
    const int jobs = std::max(1, options.jobs);
    std::atomic<std::size_t> cursor{0};
    auto work = [&] {
        for (std::size_t i; (i = cursor.fetch_add(1)) < posets.size();)
            report.records[i] = evaluate(posets[i], options);
    };
    if (jobs == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(work);
    }
    for (std::size_t i = 0; i < report.records.size(); ++i)
        if (!report.records[i].agrees()) report.mismatches.push_back(i);
    return report;
}

SplitMix64::SplitMix64(std::uint64_t seed, std::uint64_t stream) : state_(seed) {
    state_ ^= stream * 0xD1B54A32D192ED03ull;
    next();
}

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
    // Rejection keeps the draw exactly uniform.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do x = next();
    while (x >= limit);
    return x % bound;
}

ExtensionHistogram sample_extension_distribution(const Poset& p, const CoverPair& pair,
                                                 std::uint64_t trials, std::uint64_t seed,
                                                 bool exhaustive) {
    const auto verdict = nmu_check(p, pair, LabelingMode::ZeroOne);
    if (!verdict.holds) throw InvalidCoverError("cover pair does not have the non-messing-up property");
    const int n = p.size();
    ExtensionHistogram h;
    h.seed = seed;
    h.exhaustive = exhaustive;
    std::vector<int> labels(n);
    auto record = [&] {
        auto sorted = double_sort(pair, 0, std::span<const int>(labels));
        ++h.counts[sorted];
        ++h.trials;
    };
    if (exhaustive) {
        if (n > 10) throw SizeLimitError("exhaustive sampling supports at most 10 elements");
        std::iota(labels.begin(), labels.end(), 1);
        do record();
        while (std::next_permutation(labels.begin(), labels.end()));
        return h;
    }
    for (std::uint64_t t = 0; t < trials; ++t) {
        SplitMix64 rng(seed, t);
        std::iota(labels.begin(), labels.end(), 1);
        for (int i = n - 1; i > 0; --i) std::swap(labels[i], labels[rng.below(i + 1)]);
        record();
    }
    return h;
}

}  // namespace nmu
