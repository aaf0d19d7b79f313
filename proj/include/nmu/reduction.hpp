#pragma once

// Splitting elements into chains and the inverse contraction of pipes.
//
// A pipe is a saturated chain v_1 < ... < v_m in which v_{t+1} is the only
// upper cover of v_t and v_t the only lower cover of v_{t+1}. Contracting a
// pipe to one element undoes a split, and every reduction of a poset is a
// choice of consecutive segments along its maximal pipes.

#include <cstdint>
#include <functional>
#include <vector>

#include "nmu/poset.hpp"
#include "nmu/sorting.hpp"

namespace nmu {

struct SplitMap {
    Poset base;
    std::vector<int> s;                    // s[x] = |image_chain[x]|
    std::vector<Chain> image_chain;        // elements of the split poset, bottom to top
};

struct ReductionWitness {
    Poset original;
    Poset reduced;
    SplitMap split;
};

// x becomes x_1 < ... < x_s: x_1 keeps id x, x_2..x_s get ids n..n+s-2.
// Lower covers of x attach to x_1, upper covers to x_s.
Poset split_element(const Poset& q, Element x, int s);

// Maximal pipes (singletons included), each bottom to top, ordered by
// bottom element.
std::vector<Chain> maximal_pipes(const Poset& p);

ReductionWitness most_reduced(const Poset& p);

// Contracts each listed segment; segments must partition the elements into
// consecutive runs of maximal pipes. Base element x is the segment listed
// x-th.
SplitMap reduce_by_segments(const Poset& p, const std::vector<Chain>& segments);

// Every reduction of p, fewest base elements first (the most reduced one
// comes first); at most `limit` are produced. Returns false when truncated.
bool for_each_reduction(const Poset& p, std::size_t limit,
                        const std::function<bool(const SplitMap&)>& fn);

std::uint64_t count_reductions(const Poset& p);

// Rebuilds the split poset over the ids in image_chain.
Poset expand(const SplitMap& split, int original_size);

// Colors edges of the split poset like their reduced images; pipe edges
// land in both covers. Throws InvalidCoverError when reduced_pair is not a
// pair of chain covers of split.base.
CoverPair induced_coloring(const CoverPair& reduced_pair, const SplitMap& split);

}  // namespace nmu
