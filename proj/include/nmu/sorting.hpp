#pragma once

// Chain covers, chain sorting, and the exhaustive non-messing-up check.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nmu/poset.hpp"

namespace nmu {

class OverlapError : public Error { using Error::Error; };
class NotSaturatedError : public Error { using Error::Error; };
class NotCoveringError : public Error { using Error::Error; };
class InvalidCoverError : public Error { using Error::Error; };

// Chains are listed from minimum to maximum.
struct ChainCover {
    std::vector<Chain> chains;

    // Chains ordered by their first element; used for canonical comparison.
    ChainCover normalized() const;
    Mask edge_mask(const Poset& p) const;

    friend bool operator==(const ChainCover&, const ChainCover&) = default;
};

enum class EdgeColor { None, Red, Blue, Double };

// Unordered pair; `first` is red and `second` is blue.
struct CoverPair {
    ChainCover first;
    ChainCover second;

    CoverPair swapped() const { return {second, first}; }
    const ChainCover& operator[](int i) const { return i == 0 ? first : second; }

    friend bool operator==(const CoverPair& a, const CoverPair& b) {
        const auto a1 = a.first.normalized(), a2 = a.second.normalized();
        const auto b1 = b.first.normalized(), b2 = b.second.normalized();
        return (a1 == b1 && a2 == b2) || (a1 == b2 && a2 == b1);
    }
};

// Rows and columns of grid_poset(rows, cols), in that order.
CoverPair grid_cover_pair(int rows, int cols);

// Throws OverlapError, NotSaturatedError, NotCoveringError.
void validate_chain_cover(const Poset& p, const ChainCover& c);
bool is_chain_cover(const Poset& p, const ChainCover& c);

// Color per cover relation, in the order of p.covers().
std::vector<EdgeColor> edge_colors(const Poset& p, const CoverPair& pair);

bool edge_coverage(const Poset& p, const CoverPair& pair);

// The cover must be valid for the labeling's element range. Elements off
// every chain keep their labels.
template <typename T>
std::vector<T> chain_sort(const ChainCover& c, std::span<const T> labels) {
    std::vector<T> out(labels.begin(), labels.end());
    std::vector<T> buf;
    for (const Chain& chain : c.chains) {
        buf.clear();
        for (Element e : chain) buf.push_back(labels[e]);
        std::sort(buf.begin(), buf.end());
        for (std::size_t t = 0; t < chain.size(); ++t) out[chain[t]] = buf[t];
    }
    return out;
}

template <typename T>
std::vector<T> chain_sort(const ChainCover& c, const std::vector<T>& labels) {
    return chain_sort(c, std::span<const T>(labels));
}

template <typename T>
bool is_sorted_along(const ChainCover& c, std::span<const T> labels) {
    for (const Chain& chain : c.chains)
        for (std::size_t t = 0; t + 1 < chain.size(); ++t)
            if (labels[chain[t + 1]] < labels[chain[t]]) return false;
    return true;
}

template <typename T>
bool is_sorted_along(const ChainCover& c, const std::vector<T>& labels) {
    return is_sorted_along(c, std::span<const T>(labels));
}

enum class LabelingMode { Permutations, ZeroOne };

std::string to_string(LabelingMode m);

struct Counterexample {
    std::vector<int> labels;  // indexed by element
    int first_sorted = 1;     // 1 or 2: the cover sorted first and then found unsorted
    Cover edge{-1, -1};       // an edge of that cover left out of order
};

enum class VerdictReason { Holds, EdgeCoverage, Counterexample };

struct NmuVerdict {
    bool holds = false;
    VerdictReason reason = VerdictReason::Holds;
    std::optional<Counterexample> counterexample;
    std::uint64_t labelings_checked = 0;
    LabelingMode mode = LabelingMode::ZeroOne;
};

// Labelings are visited in a fixed order (bitmask order for zero-one,
// lexicographic permutation order otherwise) and within a labeling the
// first cover is tested before the second; the first failure is reported
// and labelings_checked counts up to and including it, for any `jobs`.
// Throws InvalidCoverError when either cover is not a chain cover.
NmuVerdict nmu_check(const Poset& p, const CoverPair& pair, LabelingMode mode, int jobs = 1);

// Double sort: cover i (0 or 1) first, then the other.
template <typename T>
std::vector<T> double_sort(const CoverPair& pair, int first, std::span<const T> labels) {
    auto once = chain_sort(pair[first], labels);
    return chain_sort(pair[1 - first], std::span<const T>(once));
}

// Restriction to a subset: chains are cut at missing elements and the
// fragments re-indexed in the order of `subset` (element t of the
// restriction is subset[t]).
ChainCover restrict_cover(const ChainCover& c, std::span<const Element> subset, int universe);
CoverPair restrict_pair(const CoverPair& pair, std::span<const Element> subset, int universe);

// Bit-parallel zero-one sorting for posets of at most 30 elements; reused
// by the brute-force search, which needs raw speed.
class ZeroOneSorter {
public:
    explicit ZeroOneSorter(const ChainCover& c);
    Mask sort(Mask labels) const;
    bool sorted(Mask labels) const { return sort(labels) == labels; }

private:
    struct Packed {
        Mask members;
        std::vector<Mask> top;  // top[c]: the c highest members of the chain
    };
    std::vector<Packed> chains_;
};

// Fast yes/no form of the zero-one check (no counterexample bookkeeping).
bool nmu_holds_zero_one(const ZeroOneSorter& a, const ZeroOneSorter& b, int n);

}  // namespace nmu
