#include "nmu/cylinder.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace nmu {

namespace {

long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

std::string text(CylCoord c) {
    return "(" + std::to_string(c.i) + ", " + std::to_string(c.j) + ")";
}

// Shifts t with a <= b + t(-k, n-k) in Z^2.
std::pair<long long, long long> shift_range(int k, int n, CylCoord a, CylCoord b) {
    return {ceil_div(a.j - b.j, n - k), floor_div(b.i - a.i, k)};
}

}  // namespace

void check_cyl_params(int k, int n) {
    if (k < 1 || k >= n)
        throw BadParamsError("cylinder parameters need 1 <= k < n, got k=" + std::to_string(k) +
                             ", n=" + std::to_string(n));
}

CylCoord cyl_canonical(int k, int n, long long i, long long j) {
    check_cyl_params(k, n);
    const long long t = floor_div(i, k);
    return {i - t * k, j + t * (n - k)};
}

bool cyl_leq(int k, int n, CylCoord a, CylCoord b) {
    check_cyl_params(k, n);
    auto [lo, hi] = shift_range(k, n, a, b);
    return lo <= hi;
}

std::pair<CylCoord, CylCoord> cyl_covers(int k, int n, CylCoord a) {
    return {cyl_canonical(k, n, a.i + 1, a.j), cyl_canonical(k, n, a.i, a.j + 1)};
}

bool cyl_is_cover(int k, int n, CylCoord a, CylCoord b) {
    a = cyl_canonical(k, n, a);
    b = cyl_canonical(k, n, b);
    if (a == b || !cyl_leq(k, n, a, b)) return false;
    return cyl_interval(k, n, a, b).size() == 2;
}

std::vector<CylCoord> cyl_interval(int k, int n, CylCoord a, CylCoord b) {
    a = cyl_canonical(k, n, a);
    b = cyl_canonical(k, n, b);
    std::vector<CylCoord> out;
    auto [lo, hi] = shift_range(k, n, a, b);
    for (long long t = lo; t <= hi; ++t) {
        const CylCoord top{b.i - t * k, b.j + t * (n - k)};
        for (long long i = a.i; i <= top.i; ++i)
            for (long long j = a.j; j <= top.j; ++j) out.push_back(cyl_canonical(k, n, i, j));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<Element> CylWindow::element_at(CylCoord c) const {
    c = cyl_canonical(k_, n_, c);
    auto it = std::lower_bound(cells_.begin(), cells_.end(), c);
    if (it == cells_.end() || *it != c) return std::nullopt;
    return static_cast<Element>(it - cells_.begin());
}

CylWindow window_poset(int k, int n, std::vector<CylCoord> cells) {
    check_cyl_params(k, n);
    for (auto& c : cells) c = cyl_canonical(k, n, c);
    std::sort(cells.begin(), cells.end());
    if (auto dup = std::adjacent_find(cells.begin(), cells.end()); dup != cells.end())
        throw Error("cell " + text(*dup) + " listed twice");
    if (static_cast<int>(cells.size()) > kMaxElements)
        throw SizeLimitError("windows are limited to " + std::to_string(kMaxElements) + " cells");
    const int m = static_cast<int>(cells.size());
    std::vector<Mask> above(m, 0);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            if (a == b || !cyl_leq(k, n, cells[a], cells[b])) continue;
            above[a] |= bit(b);
            for (const CylCoord& z : cyl_interval(k, n, cells[a], cells[b]))
                if (!std::binary_search(cells.begin(), cells.end(), z))
                    throw NotConvexError("cell " + text(z) + " lies between " + text(cells[a]) +
                                             " and " + text(cells[b]) + " but is not in the window",
                                         cells[a], z, cells[b]);
        }
    CylWindow w;
    w.k_ = k;
    w.n_ = n;
    w.cells_ = std::move(cells);
    w.poset_ = Poset::from_strict_above(above);
    return w;
}

namespace {

ChainCover step_chains(const CylWindow& w, bool along_j) {
    const Poset& p = w.poset();
    const int m = p.size();
    std::vector<Element> next(m, -1);
    std::vector<bool> has_prev(m, false);
    for (Element e = 0; e < m; ++e) {
        const auto [si, sj] = cyl_covers(w.k(), w.n(), w.coord_of(e));
        auto f = w.element_at(along_j ? sj : si);
        if (f && p.covers(e, *f)) {
            next[e] = *f;
            has_prev[*f] = true;
        }
    }
    ChainCover c;
    for (Element e = 0; e < m; ++e) {
        if (has_prev[e]) continue;
        Chain chain;
        for (Element cur = e; cur >= 0; cur = next[cur]) chain.push_back(cur);
        c.chains.push_back(std::move(chain));
    }
    return c;
}

}  // namespace

CoverPair canonical_cover_pair(const CylWindow& w) {
    return {step_chains(w, true), step_chains(w, false)};
}

namespace {

CylCoord lift(const CylWindow& w, CylCoord start, const Chain& chain) {
    CylCoord at = start;
    for (std::size_t t = 1; t < chain.size(); ++t) {
        const CylCoord target = w.coord_of(chain[t]);
        const CylCoord step_i{at.i + 1, at.j};
        const CylCoord step_j{at.i, at.j + 1};
        if (cyl_canonical(w.k(), w.n(), step_i) == target)
            at = step_i;
        else if (cyl_canonical(w.k(), w.n(), step_j) == target)
            at = step_j;
        else
            throw Error("diamond chain step " + text(w.coord_of(chain[t - 1])) + " -> " +
                        text(target) + " is not a unit step");
    }
    return at;
}

}  // namespace

bool goes_around(const CylWindow& w, const Diamond& d) {
    const CylCoord start = w.coord_of(d.bottom);
    return lift(w, start, d.chain_a) != lift(w, start, d.chain_b);
}

namespace {

std::vector<CylCoord> normalize(int k, int n, const std::vector<CylCoord>& cells) {
    std::vector<CylCoord> best;
    for (const CylCoord& anchor : cells) {
        std::vector<CylCoord> moved;
        moved.reserve(cells.size());
        for (const CylCoord& c : cells)
            moved.push_back(cyl_canonical(k, n, c.i - anchor.i, c.j - anchor.j));
        std::sort(moved.begin(), moved.end());
        if (best.empty() || moved < best) best = std::move(moved);
    }
    return best;
}

bool convex_cells(int k, int n, const std::vector<CylCoord>& cells) {
    for (const CylCoord& a : cells)
        for (const CylCoord& b : cells) {
            if (a == b || !cyl_leq(k, n, a, b)) continue;
            for (const CylCoord& z : cyl_interval(k, n, a, b))
                if (!std::binary_search(cells.begin(), cells.end(), z)) return false;
        }
    return true;
}

}  // namespace

std::vector<std::vector<CylCoord>> enumerate_windows(int k, int n, int max_cells) {
    check_cyl_params(k, n);
    std::vector<std::vector<CylCoord>> out;
    if (max_cells < 1) return out;
    std::set<std::vector<CylCoord>> level{{CylCoord{0, 0}}};
    for (int size = 1;; ++size) {
        for (const auto& cells : level)
            if (convex_cells(k, n, cells)) out.push_back(cells);
        if (size == max_cells) break;
        std::set<std::vector<CylCoord>> grown;
        for (const auto& cells : level)
            for (const CylCoord& c : cells)
                for (auto [di, dj] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
                    const CylCoord nb = cyl_canonical(k, n, c.i + di, c.j + dj);
                    if (std::binary_search(cells.begin(), cells.end(), nb)) continue;
                    auto bigger = cells;
                    bigger.push_back(nb);
                    grown.insert(normalize(k, n, bigger));
                }
        if (grown.empty()) break;
        level = std::move(grown);
    }
    return out;
}

}  // namespace nmu
