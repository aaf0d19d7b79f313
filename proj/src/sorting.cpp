#include "nmu/sorting.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <numeric>
#include <thread>

namespace nmu {

namespace {

std::string id(Element e) { return std::to_string(e + 1); }

constexpr int kZeroOneLimit = 30;
constexpr int kPermutationLimit = 12;

}  // namespace

ChainCover ChainCover::normalized() const {
    ChainCover out{chains};
    std::sort(out.chains.begin(), out.chains.end());
    return out;
}

Mask ChainCover::edge_mask(const Poset& p) const {
    const auto& cv = p.covers();
    if (cv.size() > 64) throw SizeLimitError("edge sets are limited to 64 cover relations");
    Mask m = 0;
    for (const Chain& chain : chains)
        for (std::size_t t = 0; t + 1 < chain.size(); ++t) {
            auto it = std::lower_bound(cv.begin(), cv.end(), Cover{chain[t], chain[t + 1]});
            if (it != cv.end() && *it == Cover{chain[t], chain[t + 1]}) m |= bit(it - cv.begin());
        }
    return m;
}

CoverPair grid_cover_pair(int rows, int cols) {
    CoverPair pair;
    for (int r = 0; r < rows; ++r) {
        Chain c;
        for (int col = 0; col < cols; ++col) c.push_back(r * cols + col);
        pair.first.chains.push_back(std::move(c));
    }
    for (int col = 0; col < cols; ++col) {
        Chain c;
        for (int r = 0; r < rows; ++r) c.push_back(r * cols + col);
        pair.second.chains.push_back(std::move(c));
    }
    return pair;
}

void validate_chain_cover(const Poset& p, const ChainCover& c) {
    Mask seen = 0;
    for (const Chain& chain : c.chains) {
        if (chain.empty()) throw NotCoveringError("empty chain in cover");
        for (std::size_t t = 0; t < chain.size(); ++t) {
            const Element e = chain[t];
            if (e < 0 || e >= p.size())
                throw Error("chain element " + id(e) + " is not in the poset");
            if ((seen >> e) & 1u) throw OverlapError("element " + id(e) + " lies on two chains");
            seen |= bit(e);
            if (t > 0 && !p.covers(chain[t - 1], e))
                throw NotSaturatedError("step " + id(chain[t - 1]) + " -> " + id(e) +
                                        " is not a cover relation");
        }
    }
    if (seen != p.all()) {
        std::string missing;
        for (Element e = 0; e < p.size(); ++e)
            if (!((seen >> e) & 1u)) missing += (missing.empty() ? "" : " ") + id(e);
        throw NotCoveringError("elements not on any chain: " + missing);
    }
}

bool is_chain_cover(const Poset& p, const ChainCover& c) {
    try {
        validate_chain_cover(p, c);
        return true;
    } catch (const Error&) {
        return false;
    }
}

std::vector<EdgeColor> edge_colors(const Poset& p, const CoverPair& pair) {
    const Mask red = pair.first.edge_mask(p);
    const Mask blue = pair.second.edge_mask(p);
    std::vector<EdgeColor> out(p.covers().size(), EdgeColor::None);
    for (std::size_t t = 0; t < out.size(); ++t) {
        const bool r = (red >> t) & 1u, b = (blue >> t) & 1u;
        out[t] = r && b ? EdgeColor::Double : r ? EdgeColor::Red : b ? EdgeColor::Blue : EdgeColor::None;
    }
    return out;
}

bool edge_coverage(const Poset& p, const CoverPair& pair) {
    if (p.covers().size() > 64) throw SizeLimitError("more than 64 cover relations");
    const std::size_t e = p.covers().size();
    const Mask all = e == 64 ? ~Mask{0} : (bit(static_cast<int>(e)) - 1);
    return (pair.first.edge_mask(p) | pair.second.edge_mask(p)) == all;
}

std::string to_string(LabelingMode m) {
    return m == LabelingMode::Permutations ? "permutations" : "zero-one";
}

ZeroOneSorter::ZeroOneSorter(const ChainCover& c) {
    for (const Chain& chain : c.chains) {
        Packed pk;
        pk.members = 0;
        pk.top.push_back(0);
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
            pk.members |= bit(*it);
            pk.top.push_back(pk.members);
        }
        chains_.push_back(std::move(pk));
    }
}

Mask ZeroOneSorter::sort(Mask labels) const {
    Mask out = labels;
    for (const Packed& pk : chains_) {
        out &= ~pk.members;
        out |= pk.top[std::popcount(labels & pk.members)];
    }
    return out;
}

bool nmu_holds_zero_one(const ZeroOneSorter& a, const ZeroOneSorter& b, int n) {
    const Mask end = Mask{1} << n;
    for (Mask l = 0; l < end; ++l) {
        const Mask sa = a.sort(l);
        if (!a.sorted(b.sort(sa))) return false;
        const Mask sb = b.sort(l);
        if (!b.sorted(a.sort(sb))) return false;
    }
    return true;
}

namespace {

Cover first_unsorted_edge(const ChainCover& c, std::span<const int> labels) {
    for (const Chain& chain : c.chains)
        for (std::size_t t = 0; t + 1 < chain.size(); ++t)
            if (labels[chain[t + 1]] < labels[chain[t]]) return {chain[t], chain[t + 1]};
    return {-1, -1};
}

// Returns the first failing index in [lo, hi) or hi. A worker abandons its
// range once `best` holds a failure at a smaller index.
template <typename Probe>
std::uint64_t scan(std::uint64_t lo, std::uint64_t hi, const Probe& probe,
                   std::atomic<std::uint64_t>& best) {
    for (std::uint64_t i = lo; i < hi; ++i) {
        if ((i & 1023) == 0 && best.load(std::memory_order_relaxed) < i) return hi;
        if (!probe(i)) {
            std::uint64_t cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
            return i;
        }
    }
    return hi;
}

template <typename Probe>
std::uint64_t first_failure(std::uint64_t total, int jobs, const Probe& probe) {
    std::atomic<std::uint64_t> best{total};
    jobs = std::max(1, jobs);
    if (jobs == 1 || total < 4096) {
        scan(0, total, probe, best);
        return best.load();
    }
    // Small blocks handed out in order keep early failures cheap to find.
    const std::uint64_t block = std::max<std::uint64_t>(1024, total / (64 * jobs));
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const std::uint64_t lo = next.fetch_add(block);
                if (lo >= total || lo > best.load()) return;
                scan(lo, std::min(total, lo + block), probe, best);
            }
        });
    for (auto& t : pool) t.join();
    return best.load();
}

std::vector<int> nth_permutation(int n, std::uint64_t index) {
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 1);
    std::vector<std::uint64_t> fact(n + 1, 1);
    for (int i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;
    std::vector<int> out;
    for (int i = n; i >= 1; --i) {
        const std::uint64_t q = index / fact[i - 1];
        index %= fact[i - 1];
        out.push_back(pool[q]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(q));
    }
    return out;
}

// Which cover (0 or 1, or -1 for none) fails first on a labeling.
int failing_cover(const CoverPair& pair, std::span<const int> labels) {
    for (int i = 0; i < 2; ++i) {
        auto twice = double_sort(pair, i, labels);
        if (!is_sorted_along(pair[i], std::span<const int>(twice))) return i;
    }
    return -1;
}

}  // namespace

NmuVerdict nmu_check(const Poset& p, const CoverPair& pair, LabelingMode mode, int jobs) {
    for (const ChainCover* c : {&pair.first, &pair.second}) {
        try {
            validate_chain_cover(p, *c);
        } catch (const Error& e) {
            throw InvalidCoverError(e.what());
        }
    }
    NmuVerdict v;
    v.mode = mode;
    if (!edge_coverage(p, pair)) {
        v.reason = VerdictReason::EdgeCoverage;
        return v;
    }
    const int n = p.size();
    std::uint64_t total = 0;
    std::uint64_t fail = 0;
    std::vector<int> witness;
    if (mode == LabelingMode::ZeroOne) {
        if (n > kZeroOneLimit)
            throw SizeLimitError("zero-one verification is limited to " +
                                 std::to_string(kZeroOneLimit) + " elements");
        const ZeroOneSorter a(pair.first), b(pair.second);
        total = std::uint64_t{1} << n;
        fail = first_failure(total, jobs, [&](std::uint64_t l) {
            return a.sorted(b.sort(a.sort(l))) && b.sorted(a.sort(b.sort(l)));
        });
        if (fail < total) {
            witness.resize(n);
            for (Element e = 0; e < n; ++e) witness[e] = static_cast<int>((fail >> e) & 1u);
        }
    } else {
        if (n > kPermutationLimit)
            throw SizeLimitError("permutation verification is limited to " +
                                 std::to_string(kPermutationLimit) + " elements");
        total = 1;
        for (int i = 2; i <= n; ++i) total *= static_cast<std::uint64_t>(i);
        // Contiguous ranges per worker; each worker steps with next_permutation.
        const int workers = total < 4096 ? 1 : std::max(1, jobs);
        std::atomic<std::uint64_t> best{total};
        auto run = [&](std::uint64_t lo, std::uint64_t hi) {
            std::vector<int> labels = nth_permutation(n, lo);
            for (std::uint64_t i = lo; i < hi; ++i) {
                if ((i & 1023) == 0 && best.load() < i) return;
                if (failing_cover(pair, labels) >= 0) {
                    std::uint64_t cur = best.load();
                    while (i < cur && !best.compare_exchange_weak(cur, i)) {
                    }
                    return;
                }
                std::next_permutation(labels.begin(), labels.end());
            }
        };
        if (workers == 1) {
            run(0, total);
        } else {
            std::vector<std::thread> pool;
            const std::uint64_t step = (total + workers - 1) / workers;
            for (int w = 0; w < workers; ++w)
                pool.emplace_back(run, std::min(total, w * step), std::min(total, (w + 1) * step));
            for (auto& t : pool) t.join();
        }
        fail = best.load();
        if (fail < total) witness = nth_permutation(n, fail);
    }
    if (fail == total) {
        v.holds = true;
        v.labelings_checked = total;
        return v;
    }
    v.reason = VerdictReason::Counterexample;
    v.labelings_checked = fail + 1;
    Counterexample cx;
    cx.labels = witness;
    const int i = failing_cover(pair, witness);
    cx.first_sorted = i + 1;
    auto twice = double_sort(pair, i, std::span<const int>(witness));
    cx.edge = first_unsorted_edge(pair[i], twice);
    v.counterexample = std::move(cx);
    return v;
}

ChainCover restrict_cover(const ChainCover& c, std::span<const Element> subset, int universe) {
    std::vector<int> index(universe, -1);
    for (std::size_t t = 0; t < subset.size(); ++t) index[subset[t]] = static_cast<int>(t);
    ChainCover out;
    for (const Chain& chain : c.chains) {
        Chain piece;
        for (Element e : chain) {
            if (index[e] >= 0) {
                piece.push_back(index[e]);
            } else if (!piece.empty()) {
                out.chains.push_back(std::move(piece));
                piece.clear();
            }
        }
        if (!piece.empty()) out.chains.push_back(std::move(piece));
    }
    return out;
}

CoverPair restrict_pair(const CoverPair& pair, std::span<const Element> subset, int universe) {
    return {restrict_cover(pair.first, subset, universe),
            restrict_cover(pair.second, subset, universe)};
}

}  // namespace nmu
