#pragma once

// The cylinder poset Cyl_{k,n}: Z^2 modulo the translation (-k, n-k),
// ordered by domination of representatives.
//
// Every class has a unique representative with 0 <= i < k. When k == 1 or
// n - k == 1 the cylinder is a total order; one of the two unit steps
// out of a cell is then not a cover, so window covers are always taken from
// the genuine order rather than from unit steps.

#include <compare>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nmu/poset.hpp"
#include "nmu/sorting.hpp"

namespace nmu {

class BadParamsError : public Error { using Error::Error; };

struct CylCoord {
    long long i = 0;
    long long j = 0;
    friend auto operator<=>(const CylCoord&, const CylCoord&) = default;
};

class NotConvexError : public Error {
public:
    NotConvexError(const std::string& what, CylCoord low, CylCoord mid, CylCoord high)
        : Error(what), low(low), mid(mid), high(high) {}
    // low < mid < high with low, high in the window and mid outside.
    CylCoord low, mid, high;
};

void check_cyl_params(int k, int n);

CylCoord cyl_canonical(int k, int n, long long i, long long j);
inline CylCoord cyl_canonical(int k, int n, CylCoord c) { return cyl_canonical(k, n, c.i, c.j); }

// a <= b in Cyl_{k,n}: some shift t gives a <= b + t(-k, n-k) in Z^2. The
// admissible t form an interval, so this is decided in closed form.
bool cyl_leq(int k, int n, CylCoord a, CylCoord b);

// Canonical classes of (i+1, j) and (i, j+1).
std::pair<CylCoord, CylCoord> cyl_covers(int k, int n, CylCoord a);

bool cyl_is_cover(int k, int n, CylCoord a, CylCoord b);

// All classes z with a <= z <= b, canonical and sorted.
std::vector<CylCoord> cyl_interval(int k, int n, CylCoord a, CylCoord b);

class CylWindow {
public:
    int k() const { return k_; }
    int n() const { return n_; }
    // Canonical and sorted; element e of poset() is cells()[e].
    const std::vector<CylCoord>& cells() const { return cells_; }
    const Poset& poset() const { return poset_; }
    CylCoord coord_of(Element e) const { return cells_[e]; }
    std::optional<Element> element_at(CylCoord c) const;

private:
    friend CylWindow window_poset(int k, int n, std::vector<CylCoord> cells);
    int k_ = 1;
    int n_ = 2;
    std::vector<CylCoord> cells_;
    Poset poset_;
};

// Cells are canonicalized; duplicates throw Error, a non-convex set throws
// NotConvexError.
CylWindow window_poset(int k, int n, std::vector<CylCoord> cells);

// first: rows (chains of j-steps); second: columns (chains of i-steps).
CoverPair canonical_cover_pair(const CylWindow& w);

// Lifts both chains of the diamond from a preimage of its bottom along unit
// steps and compares the two lifts of its top. The chains only need to be
// unit-step paths between window cells, so edge-graph cycles on degenerate
// cylinders can be tested too.
bool goes_around(const CylWindow& w, const Diamond& d);

// Convex windows with at most max_cells cells whose cells are connected by
// unit steps, one per translation class, each sorted.
std::vector<std::vector<CylCoord>> enumerate_windows(int k, int n, int max_cells);

}  // namespace nmu
