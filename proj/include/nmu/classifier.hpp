#pragma once

// Deciding membership in N2 and its two refinements from the structure of
// a poset: reduce pipes, embed the reduced poset as a convex cylinder
// window, and check the split-size condition on planar four-element
// diamonds. Witness chain covers are induced from the window's rows and
// columns.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nmu/cylinder.hpp"
#include "nmu/poset.hpp"
#include "nmu/reduction.hpp"
#include "nmu/sorting.hpp"

namespace nmu {

struct Embedding {
    int k = 1;
    int n = 2;
    std::vector<CylCoord> assign;  // per element of the embedded poset

    CylWindow window() const { return window_poset(k, n, assign); }
    // The window's row/column covers expressed in the embedded poset's ids.
    CoverPair cover_pair() const;
};

// Calls fn for every embedding of a connected poset into some Cyl_{k,n}
// with 1 <= k < n, k <= |Q|, n - k <= |Q|, in order of (n, k) and then of
// the coordinates given to elements in breadth-first order from element 0,
// which sits at (0, 0). Stops early when fn returns false.
void for_each_embedding(const Poset& q, const std::function<bool(const Embedding&)>& fn);

std::optional<Embedding> embed_convex_cylinder(const Poset& q);

struct TcViolation {
    Diamond diamond;  // four elements: bottom, chain_a[1], chain_b[1], top
    int s_bottom = 1;
    int s_a = 1;
    int s_b = 1;
    int s_top = 1;
};

struct TcReport {
    std::vector<TcViolation> violations;
    std::vector<Diamond> around;  // exempt: they go around the cylinder
    bool ok() const { return violations.empty(); }
};

// max{s(w), s(z)} <= min{s(x), s(y)} for four-element diamonds w < x, y < z
// of the reduced poset that do not go around the cylinder.
TcReport technical_condition(const SplitMap& split, const Embedding& emb);

enum class DiamondType { TypeI, TypeII, Undetermined };

std::string to_string(DiamondType t);

// Type I is tried first; `ambiguous` is set when both patterns match.
DiamondType diamond_type(const CoverPair& pair, const Diamond& d, bool* ambiguous = nullptr);

bool typeI_bound_check(const Diamond& d);

// Maximal saturated chains of at least two elements none of whose edges
// lies on a Type I diamond of split.base under `pair`.
std::vector<Chain> maximal_branch_chains(const SplitMap& split, const CoverPair& pair);

enum class ObstructionKind { DegreeBound, NoEmbedding, TechnicalCondition, BruteForceCounterexample };

std::string to_string(ObstructionKind k);

struct Obstruction {
    ObstructionKind kind = ObstructionKind::NoEmbedding;
    int component = 0;
    Element element = -1;                  // DegreeBound: offending element (poset ids)
    std::optional<TcViolation> violation;  // TechnicalCondition: in reduced ids
    std::string detail;
};

struct ComponentWitness {
    std::vector<Element> elements;  // component members, poset ids
    SplitMap split;                 // over component-local ids
    Embedding embedding;            // of split.base
    CoverPair pair;                 // component-local ids
    bool from_fallback = false;     // found on a reduction other than the most reduced one
};

struct Classification {
    bool in_n2 = false;
    bool in_n2_prime = false;
    bool in_n2_doubleprime = false;
    std::vector<ComponentWitness> witnesses;
    std::optional<CoverPair> witness_pair;  // whole poset, poset ids
    std::optional<Obstruction> obstruction;
    // Set when the witness pair was re-checked in zero-one mode.
    std::optional<bool> witness_verified;
    std::vector<std::string> notes;
};

struct ClassifyOptions {
    bool technical_condition = true;  // false only for fault-injection tests
    int verify_cutoff = 16;           // zero-one re-check of witnesses up to this size
    std::size_t reduction_limit = 4096;
    bool variants = true;             // also decide N2' and N2''
};

// A window can wrap so that one row and one column share two cells; its
// canonical pair then has an intersection of size two.
bool rows_meet_columns_once(const Embedding& emb);

// Some embedding of the connected poset q has rows_meet_columns_once.
bool embeds_with_simple_crossings(const Poset& q);

// Every component embeds as a convex window without splitting. Wrapping
// windows make this weaker than N2'' membership.
bool components_embed_unsplit(const Poset& p);

Classification classify_N2(const Poset& p, const ClassifyOptions& options = {});
bool classify_N2_prime(const Poset& p);
// Every component embeds without splitting with rows meeting columns at
// most once.
bool classify_N2_doubleprime(const Poset& p);

}  // namespace nmu
