#include "nmu/poset.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace nmu {

namespace {

std::string pair_text(Element u, Element v) {
    return "(" + std::to_string(u + 1) + ", " + std::to_string(v + 1) + ")";
}

}  // namespace

Poset::Poset(int n, std::span<const Cover> covers) : n_(n) {
    if (n < 0) throw Error("negative element count");
    if (n > kMaxElements)
        throw SizeLimitError("posets are limited to " + std::to_string(kMaxElements) + " elements");
    up_.assign(n, {});
    down_.assign(n, {});
    for (auto [u, v] : covers) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw Error("cover " + pair_text(u, v) + " references an element outside 1.." +
                        std::to_string(n));
        if (u == v) throw CycleError("cover " + pair_text(u, v) + " is a loop");
        covers_.emplace_back(u, v);
    }
    std::sort(covers_.begin(), covers_.end());
    if (auto dup = std::adjacent_find(covers_.begin(), covers_.end()); dup != covers_.end())
        throw DuplicateCoverError("cover " + pair_text(dup->first, dup->second) + " listed twice");
    for (auto [u, v] : covers_) {
        up_[u].push_back(v);
        down_[v].push_back(u);
    }
    derive_order();
    for (auto [u, v] : covers_) {
        if (open_interval(u, v) != 0) {
            Element w = std::countr_zero(open_interval(u, v));
            throw NotReducedError("cover " + pair_text(u, v) + " is implied through element " +
                                  std::to_string(w + 1));
        }
    }
}

void Poset::derive_order() {
    // Kahn's algorithm; leftover vertices sit on a cycle.
    std::vector<int> indeg(n_);
    for (int v = 0; v < n_; ++v) indeg[v] = static_cast<int>(down_[v].size());
    std::vector<Element> order;
    order.reserve(n_);
    for (int v = 0; v < n_; ++v)
        if (indeg[v] == 0) order.push_back(v);
    for (std::size_t h = 0; h < order.size(); ++h)
        for (Element w : up_[order[h]])
            if (--indeg[w] == 0) order.push_back(w);
    if (static_cast<int>(order.size()) != n_) {
        for (int v = 0; v < n_; ++v)
            if (indeg[v] > 0)
                throw CycleError("cover relations contain a cycle through element " +
                                 std::to_string(v + 1));
    }
    above_.assign(n_, 0);
    below_.assign(n_, 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        for (Element w : up_[*it]) above_[*it] |= bit(w) | above_[w];
    for (Element v : order)
        for (Element w : down_[v]) below_[v] |= bit(w) | below_[w];
}

Poset Poset::from_strict_above(std::span<const Mask> above) {
    const int n = static_cast<int>(above.size());
    std::vector<Cover> covers;
    for (int u = 0; u < n; ++u) {
        Mask rest = above[u];
        while (rest) {
            Element v = std::countr_zero(rest);
            rest &= rest - 1;
            bool direct = true;
            Mask mids = above[u];
            while (mids && direct) {
                Element w = std::countr_zero(mids);
                mids &= mids - 1;
                if ((above[w] >> v) & 1u) direct = false;
            }
            if (direct) covers.emplace_back(u, v);
        }
    }
    return Poset(n, covers);
}

bool Poset::covers(Element a, Element b) const {
    return std::binary_search(covers_.begin(), covers_.end(), Cover{a, b});
}

std::vector<std::vector<Element>> Poset::components() const {
    std::vector<int> comp(n_, -1);
    std::vector<std::vector<Element>> out;
    for (int s = 0; s < n_; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<Element> members{s};
        comp[s] = static_cast<int>(out.size());
        for (std::size_t h = 0; h < members.size(); ++h) {
            Element v = members[h];
            for (const auto* nbrs : {&up_[v], &down_[v]})
                for (Element w : *nbrs)
                    if (comp[w] < 0) {
                        comp[w] = comp[s];
                        members.push_back(w);
                    }
        }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

Poset Poset::induced(std::span<const Element> subset) const {
    std::vector<int> index(n_, -1);
    for (std::size_t t = 0; t < subset.size(); ++t) index[subset[t]] = static_cast<int>(t);
    std::vector<Mask> above(subset.size(), 0);
    for (std::size_t t = 0; t < subset.size(); ++t) {
        Mask rest = above_[subset[t]];
        while (rest) {
            Element w = std::countr_zero(rest);
            rest &= rest - 1;
            if (index[w] >= 0) above[t] |= bit(index[w]);
        }
    }
    return from_strict_above(above);
}

Poset Poset::relabeled(std::span<const Element> perm) const {
    std::vector<Cover> covers;
    covers.reserve(covers_.size());
    for (auto [u, v] : covers_) covers.emplace_back(perm[u], perm[v]);
    return Poset(n_, covers);
}

Poset build_poset(int n, std::span<const Cover> covers) { return Poset(n, covers); }

Poset grid_poset(int rows, int cols) {
    std::vector<Cover> covers;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            const Element e = r * cols + c;
            if (c + 1 < cols) covers.emplace_back(e, e + 1);
            if (r + 1 < rows) covers.emplace_back(e, e + cols);
        }
    return Poset(rows * cols, covers);
}

Poset chain_poset(int n) {
    std::vector<Cover> covers;
    for (int e = 0; e + 1 < n; ++e) covers.emplace_back(e, e + 1);
    return Poset(n, covers);
}

Poset antichain_poset(int n) { return Poset(n, {}); }

bool is_convex(const Poset& p, Mask subset) {
    Mask rest = subset;
    while (rest) {
        Element x = std::countr_zero(rest);
        rest &= rest - 1;
        // Everything above x and below some member must be a member.
        Mask between = 0;
        Mask ups = p.strictly_above(x) & subset;
        while (ups) {
            Element y = std::countr_zero(ups);
            ups &= ups - 1;
            between |= p.open_interval(x, y);
        }
        if (between & ~subset) return false;
    }
    return true;
}

bool is_convex(const Poset& p, std::span<const Element> subset) {
    Mask m = 0;
    for (Element e : subset) m |= bit(e);
    return is_convex(p, m);
}

Mask Diamond::elements() const {
    Mask m = 0;
    for (const Chain* c : {&chain_a, &chain_b, &bottom_chain, &top_chain})
        for (Element e : *c) m |= bit(e);
    return m;
}

namespace {

void saturated_chains(const Poset& p, Element from, Element to, Chain& path,
                      std::vector<Chain>& out) {
    if (from == to) {
        out.push_back(path);
        return;
    }
    for (Element w : p.upper_covers(from)) {
        if (w != to && !p.less(w, to)) continue;
        path.push_back(w);
        saturated_chains(p, w, to, path, out);
        path.pop_back();
    }
}

Chain walk_down(const Poset& p, Element x) {
    Chain below;
    Element cur = x;
    while (p.lower_covers(cur).size() == 1) {
        cur = p.lower_covers(cur).front();
        below.push_back(cur);
    }
    std::reverse(below.begin(), below.end());
    return below;
}

Chain walk_up(const Poset& p, Element y) {
    Chain above;
    Element cur = y;
    while (p.upper_covers(cur).size() == 1) {
        cur = p.upper_covers(cur).front();
        above.push_back(cur);
    }
    return above;
}

}  // namespace

std::vector<Diamond> find_diamonds(const Poset& p, bool four_element_only) {
    std::vector<Diamond> out;
    const int n = p.size();
    for (Element x = 0; x < n; ++x) {
        if (p.upper_covers(x).size() < 2) continue;
        for (Element y = 0; y < n; ++y) {
            if (!p.less(x, y) || p.covers(x, y)) continue;
            if (p.lower_covers(y).size() < 2) continue;
            const Mask interval = p.open_interval(x, y) | bit(x) | bit(y);
            if (four_element_only && std::popcount(interval) != 4) continue;
            std::vector<Chain> paths;
            Chain path{x};
            saturated_chains(p, x, y, path, paths);
            for (std::size_t i = 0; i < paths.size(); ++i) {
                for (std::size_t j = i + 1; j < paths.size(); ++j) {
                    const Chain& a = paths[i];
                    const Chain& b = paths[j];
                    Mask ma = 0, mb = 0;
                    for (Element e : a) ma |= bit(e);
                    for (Element e : b) mb |= bit(e);
                    if ((ma & mb) != (bit(x) | bit(y))) continue;
                    if ((ma | mb) != interval) continue;
                    int inner_covers = 0;
                    for (auto [u, v] : p.covers())
                        if (((interval >> u) & 1u) && ((interval >> v) & 1u)) ++inner_covers;
                    if (inner_covers != static_cast<int>(a.size() + b.size()) - 2) continue;
                    Diamond d;
                    d.bottom = x;
                    d.top = y;
                    d.chain_a = a;
                    d.chain_b = b;
                    d.bottom_chain = walk_down(p, x);
                    d.top_chain = walk_up(p, y);
                    out.push_back(std::move(d));
                }
            }
        }
    }
    return out;
}

bool degree_bounds_ok(const Poset& p) {
    for (Element e = 0; e < p.size(); ++e)
        if (p.upper_covers(e).size() > 2 || p.lower_covers(e).size() > 2) return false;
    return true;
}

void for_each_linear_extension(const Poset& p, const std::function<void(const Ranking&)>& fn) {
    const int n = p.size();
    Ranking labels(n, 0);
    std::vector<int> pending(n);
    for (Element e = 0; e < n; ++e) pending[e] = static_cast<int>(p.lower_covers(e).size());
    std::function<void(int)> place = [&](int depth) {
        if (depth == n) {
            fn(labels);
            return;
        }
        for (Element e = 0; e < n; ++e) {
            if (labels[e] != 0 || pending[e] != 0) continue;
            labels[e] = depth + 1;
            for (Element w : p.upper_covers(e)) --pending[w];
            place(depth + 1);
            for (Element w : p.upper_covers(e)) ++pending[w];
            labels[e] = 0;
        }
    };
    place(0);
}

std::vector<Ranking> linear_extensions(const Poset& p) {
    std::vector<Ranking> out;
    for_each_linear_extension(p, [&](const Ranking& r) { out.push_back(r); });
    return out;
}

std::uint64_t count_linear_extensions(const Poset& p) {
    // Dynamic programming over down-sets.
    const int n = p.size();
    if (n > 24) throw SizeLimitError("linear extension counting is limited to 24 elements");
    std::vector<std::uint64_t> ways(std::size_t{1} << n, 0);
    ways[0] = 1;
    for (std::size_t s = 0; s < ways.size(); ++s) {
        if (!ways[s]) continue;
        for (Element e = 0; e < n; ++e) {
            if ((s >> e) & 1u) continue;
            if ((p.strictly_below(e) & ~Mask{s}) != 0) continue;
            ways[s | (std::size_t{1} << e)] += ways[s];
        }
    }
    return ways.back();
}

bool is_linear_extension(const Poset& p, std::span<const int> labels) {
    const int n = p.size();
    if (static_cast<int>(labels.size()) != n)
        throw NotBijectiveError("labeling has " + std::to_string(labels.size()) +
                                " entries for a poset of " + std::to_string(n));
    std::vector<bool> seen(n + 1, false);
    for (int l : labels) {
        if (l < 1 || l > n || seen[l])
            throw NotBijectiveError("labels are not a permutation of 1.." + std::to_string(n));
        seen[l] = true;
    }
    return std::all_of(p.covers().begin(), p.covers().end(),
                       [&](const Cover& c) { return labels[c.first] < labels[c.second]; });
}

std::string describe(const Poset& p) {
    std::ostringstream os;
    os << "poset on " << p.size() << " elements:";
    for (auto [u, v] : p.covers()) os << ' ' << u + 1 << '<' << v + 1;
    return os.str();
}

}  // namespace nmu
