#pragma once

// Generalized Weyl chambers: the decomposition of the coweight space by the
// generalized-root hyperplanes, extreme rays of the resulting cones, and
// semigroup (Hilbert-basis style) generators of chamber intersected with the
// lattice. Desk scale: rank <= 4, a handful of hyperplanes.

#include "coulombkit/errors.hpp"
#include "coulombkit/lattice.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace ck {

namespace cone {

// rational kernel basis of the row space of `rows` (n columns)
inline std::vector<std::vector<Rational>> kernel_basis(const std::vector<IntVec>& rows, int n) {
    std::vector<std::vector<Rational>> m;
    for (const auto& r : rows) {
        std::vector<Rational> row(n);
        for (int j = 0; j < n; ++j) row[j] = Rational(r[j]);
        m.push_back(row);
    }
    std::vector<int> pivot_of_col(n, -1);
    std::size_t row = 0;
    for (int col = 0; col < n && row < m.size(); ++col) {
        std::size_t p = row;
        while (p < m.size() && m[p][col] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[row], m[p]);
        for (std::size_t r2 = 0; r2 < m.size(); ++r2) {
            if (r2 == row || m[r2][col] == 0) continue;
            Rational f = m[r2][col] / m[row][col];
            for (int c2 = 0; c2 < n; ++c2) m[r2][c2] -= f * m[row][c2];
        }
        pivot_of_col[col] = (int)row;
        ++row;
    }
    std::vector<std::vector<Rational>> basis;
    for (int col = 0; col < n; ++col) {
        if (pivot_of_col[col] >= 0) continue;
        std::vector<Rational> v(n, Rational(0));
        v[col] = 1;
        for (int c2 = 0; c2 < n; ++c2) {
            int pr = pivot_of_col[c2];
            if (pr >= 0) v[c2] = -m[pr][col] / m[pr][c2];
        }
        basis.push_back(v);
    }
    return basis;
}

inline int rank_of(const std::vector<IntVec>& rows, int n) {
    return n - (int)kernel_basis(rows, n).size();
}

inline IntVec to_primitive_integer(const std::vector<Rational>& v) {
    BigInt den_lcm = 1;
    for (const auto& x : v) den_lcm = lcm_int(den_lcm, denominator(x));
    std::vector<BigInt> w(v.size());
    BigInt g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        w[i] = numerator(v[i]) * (den_lcm / denominator(v[i]));
        g = gcd_int(g, w[i] < 0 ? BigInt(-w[i]) : w[i]);
    }
    IntVec out(v.size(), 0);
    if (g == 0) return out;
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = (long long)(w[i] / g);
    return out;
}

inline long long dot(const IntVec& a, const IntVec& b) {
    long long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// A polyhedral cone {x : row . x >= 0 for all rows}.
struct Cone {
    std::vector<IntVec> rows;
    int n = 0;

    bool contains(const IntVec& x) const {
        for (const auto& r : rows)
            if (dot(r, x) < 0) return false;
        return true;
    }

    std::vector<IntVec> lineality() const {
        std::vector<IntVec> out;
        for (const auto& v : kernel_basis(rows, n)) out.push_back(to_primitive_integer(v));
        return out;
    }

    bool pointed() const { return lineality().empty(); }

    // Extreme rays of a pointed cone: directions whose tight constraint set
    // has rank n-1, found from kernels of (n-1)-subsets of the rows.
    std::vector<IntVec> extreme_rays() const {
        std::vector<IntVec> out;
        std::set<IntVec> seen;
        if (n == 1) {
            for (long long s : {1ll, -1ll}) {
                IntVec v{s};
                if (contains(v) && seen.insert(v).second) out.push_back(v);
            }
            return out;
        }
        std::vector<std::size_t> idx(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) idx[i] = i;
        std::vector<std::size_t> subset;
        std::function<void(std::size_t)> rec = [&](std::size_t start) {
            if ((int)subset.size() == n - 1) {
                std::vector<IntVec> sub;
                for (auto i : subset) sub.push_back(rows[i]);
                auto ker = kernel_basis(sub, n);
                if (ker.size() != 1) return;
                IntVec r = to_primitive_integer(ker[0]);
                for (int sgn : {1, -1}) {
                    IntVec v = r;
                    if (sgn < 0)
                        for (auto& c : v) c = -c;
                    if (!contains(v) || seen.count(v)) continue;
                    // extremality: tight rows span a hyperplane
                    std::vector<IntVec> tight;
                    for (const auto& row : rows)
                        if (dot(row, v) == 0) tight.push_back(row);
                    if (rank_of(tight, n) == n - 1) {
                        seen.insert(v);
                        out.push_back(v);
                    }
                }
                return;
            }
            for (std::size_t i = start; i < rows.size(); ++i) {
                subset.push_back(idx[i]);
                rec(i + 1);
                subset.pop_back();
            }
        };
        rec(0);
        std::sort(out.begin(), out.end());
        return out;
    }

    // pointed and full-dimensional iff the extreme rays span R^n
    bool full_dimensional_pointed() const {
        auto rays = extreme_rays();
        return rank_of(rays, n) == n;
    }
};

}  // namespace cone

struct Chamber {
    std::vector<int> signs;          // one entry per hyperplane, +1 or -1
    std::vector<Coweight> rays;      // extreme rays (pointed chambers)
    std::vector<Coweight> generators;  // semigroup generators of chamber cap Y
};

struct ChamberDecomposition {
    std::vector<Weight> hyperplanes;  // primitive normals, canonical sign
    std::vector<Chamber> chambers;
};

namespace detail_chambers {

inline std::vector<IntVec> box_lattice_points(int n, long long radius) {
    std::vector<IntVec> out;
    IntVec cur(n, -radius);
    while (true) {
        out.push_back(cur);
        int i = 0;
        while (i < n && ++cur[i] > radius) cur[i++] = -radius;
        if (i == n) break;
    }
    return out;
}

// minimal generators of the semigroup (cone cap Z^n) among the lattice
// points of the cone within the given box
inline std::vector<IntVec> greedy_generators(const cone::Cone& c, long long radius) {
    std::vector<IntVec> pts;
    for (const auto& p : box_lattice_points(c.n, radius)) {
        bool zero = std::all_of(p.begin(), p.end(), [](long long x) { return x == 0; });
        if (!zero && c.contains(p)) pts.push_back(p);
    }
    std::sort(pts.begin(), pts.end(), [](const IntVec& a, const IntVec& b) {
        long long na = 0, nb = 0;
        for (auto x : a) na += x < 0 ? -x : x;
        for (auto x : b) nb += x < 0 ? -x : x;
        if (na != nb) return na < nb;
        return a < b;
    });
    std::vector<IntVec> gens;
    for (const auto& p : pts) {
        bool reducible = false;
        for (const auto& g : gens) {
            IntVec q(c.n);
            for (int i = 0; i < c.n; ++i) q[i] = p[i] - g[i];
            bool zero = std::all_of(q.begin(), q.end(), [](long long x) { return x == 0; });
            if (!zero && c.contains(q)) {
                reducible = true;
                break;
            }
        }
        if (!reducible) gens.push_back(p);
    }
    return gens;
}

// every cone lattice point in the box must be an N-combination of gens
inline bool saturation_check(const cone::Cone& c, const std::vector<IntVec>& gens,
                             long long radius) {
    std::set<IntVec> reachable;
    IntVec zero(c.n, 0);
    std::vector<IntVec> frontier = {zero};
    reachable.insert(zero);
    auto in_box = [&](const IntVec& p) {
        for (auto x : p)
            if (x < -radius || x > radius) return false;
        return true;
    };
    while (!frontier.empty()) {
        std::vector<IntVec> next;
        for (const auto& p : frontier) {
            for (const auto& g : gens) {
                IntVec q(c.n);
                for (int i = 0; i < c.n; ++i) q[i] = p[i] + g[i];
                if (!in_box(q)) continue;
                if (reachable.insert(q).second) next.push_back(q);
            }
        }
        frontier = std::move(next);
    }
    for (const auto& p : box_lattice_points(c.n, radius))
        if (c.contains(p) && !reachable.count(p))
            return false;
    return true;
}

}  // namespace detail_chambers

// Decompose Y by the generalized-root hyperplanes into full-dimensional sign
// chambers, with semigroup generators verified up to the test radius.
inline ChamberDecomposition chamber_decomposition(const RootDatum& rd, const MatterContent& matter,
                                                  long long test_radius = 3) {
    if (rd.rank() > 4) throw UnsupportedError("chamber decomposition: rank > 4 not supported");
    ChamberDecomposition out;
    out.hyperplanes = generalized_root_hyperplanes(rd, matter);
    int n = rd.rank();
    std::size_t k = out.hyperplanes.size();
    if (k == 0) {
        // no hyperplanes: the single chamber is all of Y
        Chamber ch;
        cone::Cone c{{}, n};
        long long radius = 1;
        while (true) {
            auto gens = detail_chambers::greedy_generators(c, radius);
            if (detail_chambers::saturation_check(c, gens, test_radius)) {
                for (const auto& g : gens) ch.generators.push_back(Coweight{g});
                break;
            }
            if (++radius > 6) throw InvariantError("chamber generators: saturation failed");
        }
        out.chambers.push_back(std::move(ch));
        return out;
    }
    for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
        std::vector<int> signs(k);
        cone::Cone c;
        c.n = n;
        for (std::size_t i = 0; i < k; ++i) {
            signs[i] = (mask >> i) & 1 ? 1 : -1;
            IntVec row = out.hyperplanes[i].coords;
            if (signs[i] < 0)
                for (auto& x : row) x = -x;
            c.rows.push_back(row);
        }
        bool pointed = c.pointed();
        std::vector<IntVec> rays;
        if (pointed) {
            rays = c.extreme_rays();
            if (cone::rank_of(rays, n) != n) continue;  // not full-dimensional
        } else {
            // full-dimensional iff some box point is strictly inside
            bool strict = false;
            for (const auto& p : detail_chambers::box_lattice_points(n, 4)) {
                bool all = true;
                for (const auto& row : c.rows)
                    if (cone::dot(row, p) <= 0) all = false;
                if (all) {
                    strict = true;
                    break;
                }
            }
            if (!strict) continue;
        }
        Chamber ch;
        ch.signs = signs;
        for (const auto& r : rays) ch.rays.push_back(Coweight{r});
        long long radius = 1;
        for (const auto& r : rays) {
            long long m = 0;
            for (auto x : r) m = std::max(m, x < 0 ? -x : x);
            radius = std::max(radius, m);
        }
        while (true) {
            auto gens = detail_chambers::greedy_generators(c, radius);
            if (detail_chambers::saturation_check(c, gens, test_radius)) {
                for (const auto& g : gens) ch.generators.push_back(Coweight{g});
                break;
            }
            if (++radius > 6) throw InvariantError("chamber generators: saturation failed");
        }
        out.chambers.push_back(std::move(ch));
    }
    return out;
}

// Express a lattice point of a chamber as an N-combination of the chamber
// generators, by breadth-first search over partial sums q. A partial sum is
// viable only when the remainder target - q still lies in the chamber cone,
// which both prunes and guarantees termination (the viable set is the
// lattice of a compact polytope when the chamber is pointed).
inline std::optional<std::vector<std::pair<Coweight, long long>>> express_in_generators(
    const ChamberDecomposition& decomp, std::size_t chamber_index, const Coweight& target) {
    const Chamber& ch = decomp.chambers[chamber_index];
    int n = (int)target.coords.size();
    cone::Cone c;
    c.n = n;
    for (std::size_t i = 0; i < decomp.hyperplanes.size(); ++i) {
        IntVec row = decomp.hyperplanes[i].coords;
        if (!ch.signs.empty() && ch.signs[i] < 0)
            for (auto& x : row) x = -x;
        c.rows.push_back(row);
    }
    if (!c.contains(target.coords)) return std::nullopt;

    std::map<IntVec, std::pair<IntVec, std::size_t>> parent;
    IntVec zero(n, 0);
    std::vector<IntVec> frontier = {zero};
    parent[zero] = {zero, SIZE_MAX};
    std::size_t guard = 2000000;
    while (!frontier.empty() && !parent.count(target.coords)) {
        std::vector<IntVec> next;
        for (const auto& p : frontier) {
            for (std::size_t gi = 0; gi < ch.generators.size(); ++gi) {
                IntVec q(n), rest(n);
                for (int i = 0; i < n; ++i) {
                    q[i] = p[i] + ch.generators[gi].coords[i];
                    rest[i] = target.coords[i] - q[i];
                }
                if (!c.contains(rest)) continue;
                if (parent.count(q)) continue;
                if (--guard == 0) throw InvariantError("express_in_generators: search blew up");
                parent[q] = {p, gi};
                next.push_back(q);
            }
        }
        frontier = std::move(next);
    }
    if (!parent.count(target.coords)) return std::nullopt;
    std::map<std::size_t, long long> counts;
    IntVec cur = target.coords;
    while (cur != zero) {
        auto [prev, gi] = parent.at(cur);
        counts[gi] += 1;
        cur = prev;
    }
    std::vector<std::pair<Coweight, long long>> out;
    for (const auto& [gi, c2] : counts) out.emplace_back(ch.generators[gi], c2);
    return out;
}

}  // namespace ck
