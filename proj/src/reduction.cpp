#include "nmu/reduction.hpp"

#include <algorithm>
#include <bit>

namespace nmu {

Poset split_element(const Poset& q, Element x, int s) {
    if (x < 0 || x >= q.size()) throw Error("split element outside the poset");
    if (s < 1) throw Error("split size must be positive");
    const int n = q.size();
    const Element top = s == 1 ? x : n + s - 2;
    std::vector<Cover> covers;
    for (auto [u, v] : q.covers()) {
        if (u == x)
            covers.emplace_back(top, v);
        else
            covers.emplace_back(u, v);
    }
    Element prev = x;
    for (int t = 1; t < s; ++t) {
        const Element cur = n + t - 1;
        covers.emplace_back(prev, cur);
        prev = cur;
    }
    return Poset(n + s - 1, covers);
}

namespace {

std::vector<Element> pipe_successor(const Poset& p) {
    std::vector<Element> next(p.size(), -1);
    for (auto [u, v] : p.covers())
        if (p.upper_covers(u).size() == 1 && p.lower_covers(v).size() == 1) next[u] = v;
    return next;
}

}  // namespace

std::vector<Chain> maximal_pipes(const Poset& p) {
    const auto next = pipe_successor(p);
    std::vector<bool> has_prev(p.size(), false);
    for (Element e : next)
        if (e >= 0) has_prev[e] = true;
    std::vector<Chain> pipes;
    for (Element e = 0; e < p.size(); ++e) {
        if (has_prev[e]) continue;
        Chain c;
        for (Element cur = e; cur >= 0; cur = next[cur]) c.push_back(cur);
        pipes.push_back(std::move(c));
    }
    return pipes;
}

SplitMap reduce_by_segments(const Poset& p, const std::vector<Chain>& segments) {
    std::vector<int> owner(p.size(), -1);
    for (std::size_t x = 0; x < segments.size(); ++x)
        for (std::size_t t = 0; t < segments[x].size(); ++t) {
            const Element e = segments[x][t];
            if (owner[e] >= 0) throw Error("segments overlap");
            owner[e] = static_cast<int>(x);
            if (t > 0) {
                const Element d = segments[x][t - 1];
                if (!p.covers(d, e) || p.upper_covers(d).size() != 1 || p.lower_covers(e).size() != 1)
                    throw Error("segment is not part of a pipe");
            }
        }
    if (std::find(owner.begin(), owner.end(), -1) != owner.end())
        throw Error("segments do not cover the poset");
    std::vector<Cover> covers;
    for (std::size_t x = 0; x < segments.size(); ++x)
        for (Element w : p.upper_covers(segments[x].back())) covers.emplace_back(x, owner[w]);
    SplitMap out;
    out.base = Poset(static_cast<int>(segments.size()), covers);
    out.image_chain = segments;
    for (const Chain& c : segments) out.s.push_back(static_cast<int>(c.size()));
    return out;
}

namespace {

// Cut bits index pipe edges in pipe order.
std::vector<Chain> segments_for(const std::vector<Chain>& pipes, Mask cuts) {
    std::vector<Chain> segs;
    int edge = 0;
    for (const Chain& pipe : pipes) {
        Chain cur{pipe.front()};
        for (std::size_t t = 1; t < pipe.size(); ++t, ++edge) {
            if ((cuts >> edge) & 1u) {
                segs.push_back(std::move(cur));
                cur.clear();
            }
            cur.push_back(pipe[t]);
        }
        segs.push_back(std::move(cur));
    }
    return segs;
}

}  // namespace

ReductionWitness most_reduced(const Poset& p) {
    ReductionWitness w;
    w.original = p;
    w.split = reduce_by_segments(p, maximal_pipes(p));
    w.reduced = w.split.base;
    return w;
}

bool for_each_reduction(const Poset& p, std::size_t limit,
                        const std::function<bool(const SplitMap&)>& fn) {
    const auto pipes = maximal_pipes(p);
    int edges = 0;
    for (const Chain& c : pipes) edges += static_cast<int>(c.size()) - 1;
    std::size_t produced = 0;
    const Mask end = bit(edges);  // edges < 64 for posets of at most 64 elements
    for (int cuts = 0; cuts <= edges; ++cuts) {
        // Subsets with `cuts` bits set, in increasing order (Gosper's hack).
        for (Mask set = bit(cuts) - 1; set < end;) {
            if (produced == limit) return false;
            ++produced;
            if (!fn(reduce_by_segments(p, segments_for(pipes, set)))) return true;
            if (set == 0) break;
            const Mask low = set & (~set + 1);
            const Mask ripple = set + low;
            set = (((ripple ^ set) >> 2) / low) | ripple;
        }
    }
    return true;
}

std::uint64_t count_reductions(const Poset& p) {
    int edges = 0;
    for (const Chain& c : maximal_pipes(p)) edges += static_cast<int>(c.size()) - 1;
    return edges >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << edges);
}

Poset expand(const SplitMap& split, int original_size) {
    std::vector<Cover> covers;
    for (const Chain& c : split.image_chain)
        for (std::size_t t = 0; t + 1 < c.size(); ++t) covers.emplace_back(c[t], c[t + 1]);
    for (auto [x, y] : split.base.covers())
        covers.emplace_back(split.image_chain[x].back(), split.image_chain[y].front());
    return Poset(original_size, covers);
}

CoverPair induced_coloring(const CoverPair& reduced_pair, const SplitMap& split) {
    for (const ChainCover* c : {&reduced_pair.first, &reduced_pair.second}) {
        try {
            validate_chain_cover(split.base, *c);
        } catch (const Error& e) {
            throw InvalidCoverError(e.what());
        }
    }
    auto lift = [&](const ChainCover& c) {
        ChainCover out;
        for (const Chain& chain : c.chains) {
            Chain full;
            for (Element x : chain)
                full.insert(full.end(), split.image_chain[x].begin(), split.image_chain[x].end());
            out.chains.push_back(std::move(full));
        }
        return out;
    };
    return {lift(reduced_pair.first), lift(reduced_pair.second)};
}

}  // namespace nmu
