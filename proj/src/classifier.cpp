#include "nmu/classifier.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace nmu {

CoverPair Embedding::cover_pair() const {
    const CylWindow w = window();
    std::vector<Element> back(assign.size());
    for (std::size_t e = 0; e < assign.size(); ++e) back[*w.element_at(assign[e])] = static_cast<Element>(e);
    auto map = [&](const ChainCover& c) {
        ChainCover out;
        for (const Chain& chain : c.chains) {
            Chain mapped;
            for (Element x : chain) mapped.push_back(back[x]);
            out.chains.push_back(std::move(mapped));
        }
        return out.normalized();
    };
    const CoverPair wp = canonical_cover_pair(w);
    return {map(wp.first), map(wp.second)};
}

void for_each_embedding(const Poset& q, const std::function<bool(const Embedding&)>& fn) {
    const int m = q.size();
    if (m == 0) return;
    if (!q.connected()) throw Error("cylinder embeddings are searched per connected component");

    std::vector<Element> order{0};
    std::vector<Element> parent(m, -1);
    std::vector<bool> seen(m, false);
    seen[0] = true;
    for (std::size_t h = 0; h < order.size(); ++h) {
        const Element v = order[h];
        std::vector<Element> nbrs = q.upper_covers(v);
        nbrs.insert(nbrs.end(), q.lower_covers(v).begin(), q.lower_covers(v).end());
        std::sort(nbrs.begin(), nbrs.end());
        for (Element w : nbrs)
            if (!seen[w]) {
                seen[w] = true;
                parent[w] = v;
                order.push_back(w);
            }
    }

    Embedding emb;
    emb.assign.assign(m, CylCoord{});
    bool keep_going = true;

    std::function<void(int)> place = [&](int idx) {
        if (!keep_going) return;
        if (idx == m) {
            try {
                (void)window_poset(emb.k, emb.n, emb.assign);
            } catch (const NotConvexError&) {
                return;
            }
            keep_going = fn(emb);
            return;
        }
        const Element e = order[idx];
        const Element p = parent[e];
        const CylCoord at = emb.assign[p];
        std::vector<CylCoord> options;
        if (q.covers(p, e)) {
            options = {cyl_canonical(emb.k, emb.n, at.i + 1, at.j), cyl_canonical(emb.k, emb.n, at.i, at.j + 1)};
        } else {
            options = {cyl_canonical(emb.k, emb.n, at.i - 1, at.j), cyl_canonical(emb.k, emb.n, at.i, at.j - 1)};
        }
        std::sort(options.begin(), options.end());
        options.erase(std::unique(options.begin(), options.end()), options.end());
        for (const CylCoord& c : options) {
            bool fits = true;
            for (int t = 0; t < idx && fits; ++t) {
                const Element g = order[t];
                const CylCoord cg = emb.assign[g];
                if (cg == c) fits = false;
                else if (q.less(g, e) != cyl_leq(emb.k, emb.n, cg, c)) fits = false;
                else if (q.less(e, g) != cyl_leq(emb.k, emb.n, c, cg)) fits = false;
            }
            if (!fits) continue;
            emb.assign[e] = c;
            place(idx + 1);
            if (!keep_going) return;
        }
    };

    for (int n = 2; n <= 2 * m && keep_going; ++n)
        for (int k = 1; k < n && keep_going; ++k) {
            if (k > m || n - k > m) continue;
            emb.k = k;
            emb.n = n;
            emb.assign[0] = CylCoord{0, 0};
            place(1);
        }
}

std::optional<Embedding> embed_convex_cylinder(const Poset& q) {
    std::optional<Embedding> found;
    for_each_embedding(q, [&](const Embedding& e) {
        found = e;
        return false;
    });
    return found;
}

namespace {

bool violates(const SplitMap& split, const Diamond& d) {
    const int w = split.s[d.bottom], z = split.s[d.top];
    const int x = split.s[d.chain_a[1]], y = split.s[d.chain_b[1]];
    return std::max(w, z) > std::min(x, y);
}

TcViolation violation_of(const SplitMap& split, const Diamond& d) {
    return {d, split.s[d.bottom], split.s[d.chain_a[1]], split.s[d.chain_b[1]], split.s[d.top]};
}

Diamond to_window(const Diamond& d, const Embedding& emb, const CylWindow& w) {
    auto map = [&](const Chain& c) {
        Chain out;
        for (Element e : c) out.push_back(*w.element_at(emb.assign[e]));
        return out;
    };
    Diamond wd;
    wd.bottom = *w.element_at(emb.assign[d.bottom]);
    wd.top = *w.element_at(emb.assign[d.top]);
    wd.chain_a = map(d.chain_a);
    wd.chain_b = map(d.chain_b);
    return wd;
}

}  // namespace

TcReport technical_condition(const SplitMap& split, const Embedding& emb) {
    TcReport report;
    const CylWindow w = emb.window();
    for (const Diamond& d : find_diamonds(split.base, true)) {
        if (goes_around(w, to_window(d, emb, w)))
            report.around.push_back(d);
        else if (violates(split, d))
            report.violations.push_back(violation_of(split, d));
    }
    return report;
}

std::string to_string(DiamondType t) {
    switch (t) {
        case DiamondType::TypeI: return "TypeI";
        case DiamondType::TypeII: return "TypeII";
        default: return "Undetermined";
    }
}

namespace {

bool some_chain_contains(const ChainCover& c, Mask wanted) {
    for (const Chain& chain : c.chains) {
        Mask m = 0;
        for (Element e : chain) m |= bit(e);
        if ((m & wanted) == wanted) return true;
    }
    return false;
}

Mask mask_of(const Chain& c) {
    Mask m = 0;
    for (Element e : c) m |= bit(e);
    return m;
}

}  // namespace

DiamondType diamond_type(const CoverPair& pair, const Diamond& d, bool* ambiguous) {
    const Mask a = mask_of(d.chain_a), b = mask_of(d.chain_b);
    const Mask x = bit(d.bottom), y = bit(d.top);
    auto type_one = [&](const ChainCover& red, const ChainCover& blue) {
        return some_chain_contains(red, a & ~y) && some_chain_contains(blue, b & ~y) &&
               some_chain_contains(red, b & ~x) && some_chain_contains(blue, a & ~x);
    };
    auto type_two = [&](const ChainCover& red, const ChainCover& blue) {
        return some_chain_contains(red, a) && some_chain_contains(blue, b);
    };
    const bool one = type_one(pair.first, pair.second) || type_one(pair.second, pair.first);
    const bool two = type_two(pair.first, pair.second) || type_two(pair.second, pair.first);
    if (ambiguous) *ambiguous = one && two;
    if (one) return DiamondType::TypeI;
    if (two) return DiamondType::TypeII;
    return DiamondType::Undetermined;
}

bool typeI_bound_check(const Diamond& d) {
    const auto longest = std::max(d.bottom_chain.size(), d.top_chain.size());
    const auto a = static_cast<long long>(d.chain_a.size());
    const auto b = static_cast<long long>(d.chain_b.size());
    return static_cast<long long>(longest) < std::min(a - 2, b - 2);
}

std::vector<Chain> maximal_branch_chains(const SplitMap& split, const CoverPair& pair) {
    const Poset& q = split.base;
    std::set<Cover> diamond_edges;
    for (const Diamond& d : find_diamonds(q, false)) {
        if (diamond_type(pair, d) != DiamondType::TypeI) continue;
        for (const Chain* c : {&d.chain_a, &d.chain_b})
            for (std::size_t t = 0; t + 1 < c->size(); ++t) diamond_edges.insert({(*c)[t], (*c)[t + 1]});
    }
    std::vector<std::vector<Element>> up(q.size());
    std::vector<bool> has_down(q.size(), false);
    for (const Cover& c : q.covers()) {
        if (diamond_edges.count(c)) continue;
        up[c.first].push_back(c.second);
        has_down[c.second] = true;
    }
    std::vector<Chain> out;
    Chain path;
    std::function<void(Element)> walk = [&](Element v) {
        path.push_back(v);
        if (up[v].empty()) {
            if (path.size() >= 2) out.push_back(path);
        } else {
            for (Element w : up[v]) walk(w);
        }
        path.pop_back();
    };
    for (Element v = 0; v < q.size(); ++v)
        if (!has_down[v] && !up[v].empty()) walk(v);
    return out;
}

std::string to_string(ObstructionKind k) {
    switch (k) {
        case ObstructionKind::DegreeBound: return "DegreeBound";
        case ObstructionKind::NoEmbedding: return "NoEmbedding";
        case ObstructionKind::TechnicalCondition: return "TechnicalCondition";
        default: return "BruteForceCounterexample";
    }
}

namespace {

struct ComponentResult {
    bool in_n2 = false;
    std::optional<ComponentWitness> witness;
    std::optional<Obstruction> obstruction;
    bool truncated = false;
};

ComponentResult classify_component(const Poset& q, const ClassifyOptions& options) {
    ComponentResult r;
    for (Element e = 0; e < q.size(); ++e)
        if (q.upper_covers(e).size() > 2 || q.lower_covers(e).size() > 2) {
            Obstruction ob;
            ob.kind = ObstructionKind::DegreeBound;
            ob.element = e;
            ob.detail = "an element is covered by or covers more than two elements";
            r.obstruction = ob;
            return r;
        }

    std::optional<TcViolation> first_violation;
    std::size_t index = 0;
    const bool complete = for_each_reduction(q, options.reduction_limit, [&](const SplitMap& split) {
        const bool fallback = index++ > 0;
        for_each_embedding(split.base, [&](const Embedding& emb) {
            if (options.technical_condition) {
                TcReport rep = technical_condition(split, emb);
                if (!rep.ok()) {
                    if (!first_violation) first_violation = rep.violations.front();
                    return true;
                }
            }
            ComponentWitness w;
            w.split = split;
            w.embedding = emb;
            w.pair = induced_coloring(emb.cover_pair(), split);
            w.from_fallback = fallback;
            r.witness = std::move(w);
            return false;
        });
        return !r.witness;
    });
    r.truncated = !complete;
    if (r.witness) {
        r.in_n2 = true;
        return r;
    }
    Obstruction ob;
    if (first_violation) {
        ob.kind = ObstructionKind::TechnicalCondition;
        ob.violation = first_violation;
        ob.detail = "every embedding leaves a planar diamond with max{s(w),s(z)} > min{s(x),s(y)}";
    } else {
        ob.kind = ObstructionKind::NoEmbedding;
        ob.detail = "no reduction embeds as a convex cylinder window";
    }
    r.obstruction = ob;
    return r;
}

bool prime_condition(const SplitMap& split, const CoverPair& reduced_pair) {
    const Poset& q = split.base;
    for (Element e = 0; e < q.size(); ++e)
        if (q.upper_covers(e).size() + q.lower_covers(e).size() < 2) return false;
    for (const Chain& c : maximal_branch_chains(split, reduced_pair))
        if (c.size() != 2) return false;
    return true;
}

bool component_prime(const ComponentWitness& w, const ClassifyOptions& options) {
    bool ok = false;
    for_each_embedding(w.split.base, [&](const Embedding& emb) {
        if (options.technical_condition && !technical_condition(w.split, emb).ok()) return true;
        ok = prime_condition(w.split, emb.cover_pair());
        return !ok;
    });
    return ok;
}

ChainCover to_global(const ChainCover& local, const std::vector<Element>& members) {
    ChainCover out;
    for (const Chain& c : local.chains) {
        Chain g;
        for (Element e : c) g.push_back(members[e]);
        out.chains.push_back(std::move(g));
    }
    return out;
}

}  // namespace

Classification classify_N2(const Poset& p, const ClassifyOptions& options) {
    Classification out;
    out.in_n2 = true;
    out.in_n2_doubleprime = true;
    CoverPair whole;
    bool verified = true;
    bool any_verified = false;
    const auto comps = p.components();
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        const Poset q = p.induced(comps[ci]);
        ComponentResult r = classify_component(q, options);
        if (r.truncated)
            out.notes.push_back("component " + std::to_string(ci) + ": reduction search truncated at " +
                                std::to_string(options.reduction_limit));
        if (options.variants && out.in_n2_doubleprime && !embeds_with_simple_crossings(q))
            out.in_n2_doubleprime = false;
        if (!r.in_n2) {
            out.in_n2 = false;
            if (!out.obstruction) {
                out.obstruction = *r.obstruction;
                out.obstruction->component = static_cast<int>(ci);
                if (out.obstruction->element >= 0)
                    out.obstruction->element = comps[ci][out.obstruction->element];
            }
            continue;
        }
        ComponentWitness w = std::move(*r.witness);
        w.elements = comps[ci];
        if (w.from_fallback)
            out.notes.push_back("component " + std::to_string(ci) +
                                ": most reduced poset failed; a partial re-expansion succeeded");
        if (q.size() <= options.verify_cutoff) {
            any_verified = true;
            if (!nmu_check(q, w.pair, LabelingMode::ZeroOne).holds) {
                verified = false;
                out.notes.push_back("component " + std::to_string(ci) +
                                    ": induced witness fails the zero-one check");
            }
        }
        const ChainCover a = to_global(w.pair.first, w.elements);
        const ChainCover b = to_global(w.pair.second, w.elements);
        whole.first.chains.insert(whole.first.chains.end(), a.chains.begin(), a.chains.end());
        whole.second.chains.insert(whole.second.chains.end(), b.chains.begin(), b.chains.end());
        out.witnesses.push_back(std::move(w));
    }
    if (!options.variants) out.in_n2_doubleprime = false;
    if (out.in_n2) {
        out.witness_pair = CoverPair{whole.first.normalized(), whole.second.normalized()};
        if (any_verified) out.witness_verified = verified;
        out.in_n2_prime = options.variants &&
                          std::all_of(out.witnesses.begin(), out.witnesses.end(),
                                      [&](const ComponentWitness& w) { return component_prime(w, options); });
    } else {
        out.witnesses.clear();
    }
    return out;
}

bool classify_N2_prime(const Poset& p) { return classify_N2(p).in_n2_prime; }

bool rows_meet_columns_once(const Embedding& emb) {
    const CoverPair pair = emb.cover_pair();
    for (const Chain& r : pair.first.chains)
        for (const Chain& c : pair.second.chains) {
            int common = 0;
            for (Element e : r) common += std::count(c.begin(), c.end(), e);
            if (common > 1) return false;
        }
    return true;
}

bool embeds_with_simple_crossings(const Poset& q) {
    bool found = false;
    for_each_embedding(q, [&](const Embedding& emb) {
        found = rows_meet_columns_once(emb);
        return !found;
    });
    return found;
}

bool components_embed_unsplit(const Poset& p) {
    for (const auto& comp : p.components())
        if (!embed_convex_cylinder(p.induced(comp))) return false;
    return true;
}

bool classify_N2_doubleprime(const Poset& p) {
    for (const auto& comp : p.components())
        if (!embeds_with_simple_crossings(p.induced(comp))) return false;
    return true;
}

}  // namespace nmu
