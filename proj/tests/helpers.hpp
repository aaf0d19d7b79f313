#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "nmu/poset.hpp"

namespace testing {

// Random order on n elements: a relation above a random permutation,
// closed transitively.
inline nmu::Poset random_poset(int n, double density, std::mt19937& rng) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::bernoulli_distribution coin(density);
    std::vector<nmu::Mask> above(n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (coin(rng)) above[perm[a]] |= nmu::bit(perm[b]);
    for (int a = n - 1; a >= 0; --a)
        for (int b = a + 1; b < n; ++b)
            if ((above[perm[a]] >> perm[b]) & 1u) above[perm[a]] |= above[perm[b]];
    return nmu::Poset::from_strict_above(above);
}

inline nmu::Poset make(int n, std::vector<nmu::Cover> covers) { return nmu::Poset(n, covers); }

}  // namespace testing
