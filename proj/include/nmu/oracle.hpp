#pragma once

// Exhaustive machinery for small posets: isomorphism-free generation,
// chain cover enumeration, the definitional N2 search, classifier
// cross-validation, and sampling of the double-sort output distribution.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nmu/classifier.hpp"
#include "nmu/poset.hpp"
#include "nmu/sorting.hpp"

namespace nmu {

struct CanonicalPoset {
    Poset poset;       // relabeled into canonical order
    std::string key;   // equal keys <=> isomorphic posets
};

// Minimal cover-matrix bit string over all orderings compatible with a
// refined element invariant. Up to 8 elements.
CanonicalPoset canonical_form(const Poset& p);

// Key as lowercase hex, e.g. for records.
std::string key_hex(const std::string& key);

// One representative per isomorphism class with 1..max_n elements, ordered
// by size and then key. Throws SizeLimitError above 8.
std::vector<CanonicalPoset> enumerate_posets(int max_n, bool connected_only);

// Each partition of the elements into saturated chains exactly once.
std::vector<ChainCover> enumerate_chain_covers(const Poset& p, int max_elements = 8);

struct BruteForceResult {
    bool found = false;
    std::optional<CoverPair> witness;  // first in (i, j) order over enumerate_chain_covers
    std::uint64_t pairs_tested = 0;    // pairs with full edge coverage that were checked
};

// First unordered pair of chain covers (i <= j) with edge coverage that
// passes the zero-one check and satisfies `accept`.
BruteForceResult brute_force_search(const Poset& p, const std::function<bool(const CoverPair&)>& accept,
                                    int max_elements = 7);

BruteForceResult brute_force_N2(const Poset& p, int max_elements = 7);

// No chain of one cover inside a chain of the other.
bool no_chain_containment(const CoverPair& pair);
// Every pair of chains from different covers shares at most one element.
bool small_intersections(const CoverPair& pair);

struct OracleRecord {
    int size = 0;
    std::string key;
    Poset poset;
    bool connected = true;
    bool theorem_n2 = false;
    bool brute_n2 = false;
    bool theorem_n2_prime = false;
    bool theorem_n2_doubleprime = false;
    std::optional<bool> brute_n2_prime;
    std::optional<bool> brute_n2_doubleprime;
    Classification classification;
    std::optional<CoverPair> brute_witness;
    double seconds = 0;

    bool agrees() const {
        return theorem_n2 == brute_n2 && (!brute_n2_prime || *brute_n2_prime == theorem_n2_prime) &&
               (!brute_n2_doubleprime || *brute_n2_doubleprime == theorem_n2_doubleprime);
    }
};

struct OracleOptions {
    int max_n = 6;
    bool connected_only = false;
    int jobs = 1;
    bool variants = false;  // also brute-force N2' and N2''
    bool brute_force = true;
    ClassifyOptions classify;
};

struct OracleReport {
    std::vector<OracleRecord> records;    // canonical order
    std::vector<std::size_t> mismatches;  // indices into records
};

// Throws SizeLimitError when max_n > 7 with brute force enabled.
OracleReport oracle_compare(const OracleOptions& options);

// Counter-based generator: the k-th output of stream (seed, index) is a
// pure function of the three values.
class SplitMix64 {
public:
    SplitMix64(std::uint64_t seed, std::uint64_t stream);
    std::uint64_t next();
    std::uint64_t below(std::uint64_t bound);  // uniform in [0, bound)

private:
    std::uint64_t state_;
};

struct ExtensionHistogram {
    std::map<Ranking, std::uint64_t> counts;  // double-sorted ranking -> occurrences
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    bool exhaustive = false;
};

// Each trial draws a uniform permutation labeling (stream = trial index),
// sorts by pair.first then pair.second, and records the result. Exhaustive
// mode replaces sampling with all n! labelings. Throws InvalidCoverError
// unless the pair passes the zero-one check.
ExtensionHistogram sample_extension_distribution(const Poset& p, const CoverPair& pair,
                                                 std::uint64_t trials, std::uint64_t seed,
                                                 bool exhaustive = false);

}  // namespace nmu
