#pragma once

// Finite posets stored as Hasse diagrams with derived order relations.
//
// Elements are dense indices 0..n-1 inside the library (the text formats
// and the CLI use 1-based ids). Strict up/down sets are kept as 64-bit
// masks, so a poset holds at most 64 elements.

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nmu {

using Element = int;
using Mask = std::uint64_t;
using Cover = std::pair<Element, Element>;
using Chain = std::vector<Element>;

inline constexpr int kMaxElements = 64;

inline Mask bit(Element e) { return Mask{1} << e; }

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CycleError : public Error { using Error::Error; };
class NotReducedError : public Error { using Error::Error; };
class DuplicateCoverError : public Error { using Error::Error; };
class NotBijectiveError : public Error { using Error::Error; };
class SizeLimitError : public Error { using Error::Error; };

class Poset {
public:
    Poset() = default;

    // Validates the cover list; throws CycleError, NotReducedError,
    // DuplicateCoverError, or Error for out-of-range ids.
    Poset(int n, std::span<const Cover> covers);

    // Transitive reduction of an order given by strict up-sets.
    static Poset from_strict_above(std::span<const Mask> above);

    int size() const { return n_; }
    bool empty() const { return n_ == 0; }
    Mask all() const { return n_ == 64 ? ~Mask{0} : (bit(n_) - 1); }

    // Sorted lexicographically.
    const std::vector<Cover>& covers() const { return covers_; }
    const std::vector<Element>& upper_covers(Element e) const { return up_[e]; }
    const std::vector<Element>& lower_covers(Element e) const { return down_[e]; }

    Mask strictly_above(Element e) const { return above_[e]; }
    Mask strictly_below(Element e) const { return below_[e]; }

    bool less(Element a, Element b) const { return (above_[a] >> b) & 1u; }
    bool leq(Element a, Element b) const { return a == b || less(a, b); }
    bool comparable(Element a, Element b) const { return leq(a, b) || leq(b, a); }
    bool covers(Element a, Element b) const;

    // Elements strictly between a and b.
    Mask open_interval(Element a, Element b) const { return above_[a] & below_[b]; }

    // Connected components of the Hasse diagram, each sorted, ordered by
    // smallest element.
    std::vector<std::vector<Element>> components() const;
    bool connected() const { return components().size() <= 1; }

    // Subposet on the listed elements (in the listed order): element t of
    // the result is subset[t].
    Poset induced(std::span<const Element> subset) const;

    // Result has element perm[e] where this has e.
    Poset relabeled(std::span<const Element> perm) const;

    friend bool operator==(const Poset& a, const Poset& b) {
        return a.n_ == b.n_ && a.covers_ == b.covers_;
    }

private:
    int n_ = 0;
    std::vector<Cover> covers_;
    std::vector<std::vector<Element>> up_;
    std::vector<std::vector<Element>> down_;
    std::vector<Mask> above_;
    std::vector<Mask> below_;

    void derive_order();
};

Poset build_poset(int n, std::span<const Cover> covers);

// m x n grid (product of chains); element r*n + c sits at row r, column c.
Poset grid_poset(int rows, int cols);
Poset chain_poset(int n);
Poset antichain_poset(int n);

bool is_convex(const Poset& p, Mask subset);
bool is_convex(const Poset& p, std::span<const Element> subset);

// Union of two saturated chains from `bottom` to `top` meeting only at the
// endpoints, whose union is convex and carries no cover relations besides
// the chains' own edges. bottom_chain lists elements from the lowest up to
// the one covered by `bottom`; top_chain from the one covering `top` upward.
struct Diamond {
    Element bottom = -1;
    Element top = -1;
    Chain chain_a;
    Chain chain_b;
    Chain bottom_chain;
    Chain top_chain;

    Mask elements() const;
    bool four_element() const { return chain_a.size() == 3 && chain_b.size() == 3; }
};

std::vector<Diamond> find_diamonds(const Poset& p, bool four_element_only);

bool degree_bounds_ok(const Poset& p);

// Labels are 1..n indexed by element; extensions are produced in
// lexicographic order of the element sequence they list.
using Ranking = std::vector<int>;

void for_each_linear_extension(const Poset& p, const std::function<void(const Ranking&)>& fn);
std::vector<Ranking> linear_extensions(const Poset& p);
std::uint64_t count_linear_extensions(const Poset& p);

// Throws NotBijectiveError unless labels are a permutation of 1..n.
bool is_linear_extension(const Poset& p, std::span<const int> labels);

std::string describe(const Poset& p);

}  // namespace nmu
