#pragma once

// Root data given by explicit simple root/coroot vectors, Weyl group
// enumeration by breadth-first closure, orbits with shortest-word witnesses,
// generalized roots and the fixed-point reduction to a hyperplane.
//
// Weights live in X = Z^rank, coweights in Y = Z^rank, paired by the dot
// product. A Weyl element stores its action on both lattices: if M is the
// matrix on Y, the matrix on X is the contragredient (M^{-1})^T, so that
// <w.chi, w.lambda> = <chi, lambda>.

#include "coulombkit/errors.hpp"
#include "coulombkit/rational.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ck {

using IntVec = std::vector<long long>;
using IntMat = std::vector<IntVec>;  // row-major

struct Weight {
    IntVec coords;
    bool operator==(const Weight& o) const { return coords == o.coords; }
    bool operator<(const Weight& o) const { return coords < o.coords; }
    bool is_zero() const {
        return std::all_of(coords.begin(), coords.end(), [](long long c) { return c == 0; });
    }
};

struct Coweight {
    IntVec coords;
    bool operator==(const Coweight& o) const { return coords == o.coords; }
    bool operator<(const Coweight& o) const { return coords < o.coords; }
    bool is_zero() const {
        return std::all_of(coords.begin(), coords.end(), [](long long c) { return c == 0; });
    }
};

inline long long pairing(const Weight& chi, const Coweight& lambda) {
    if (chi.coords.size() != lambda.coords.size())
        throw SchemaError("pairing: dimension mismatch");
    long long s = 0;
    for (std::size_t i = 0; i < chi.coords.size(); ++i) s += chi.coords[i] * lambda.coords[i];
    return s;
}

inline IntMat identity_matrix(int n) {
    IntMat m(n, IntVec(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IntVec mat_apply(const IntMat& m, const IntVec& v) {
    IntVec out(m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

inline IntMat mat_mul(const IntMat& a, const IntMat& b) {
    std::size_t n = a.size();
    IntMat out(n, IntVec(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            if (a[i][k])
                for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

struct WeylElement {
    IntMat on_coweights;      // action on Y
    IntMat on_weights;        // contragredient action on X
    std::vector<int> word;    // reduced word in simple reflections (lex-least)

    Coweight act(const Coweight& l) const { return Coweight{mat_apply(on_coweights, l.coords)}; }
    Weight act(const Weight& x) const { return Weight{mat_apply(on_weights, x.coords)}; }
    bool is_identity() const { return word.empty(); }
};

struct MatterEntry {
    Weight weight;
    long long mult = 1;
};

// Multiset of nonzero torus weights. normalize() drops zero weights and
// merges duplicates; all operations assume normalized input.
struct MatterContent {
    std::vector<MatterEntry> entries;

    // returns the number of dropped zero-weight dimensions
    long long normalize() {
        long long dropped = 0;
        std::map<Weight, long long> merged;
        for (const auto& e : entries) {
            if (e.mult <= 0) throw SchemaError("matter multiplicity must be positive");
            if (e.weight.is_zero()) {
                dropped += e.mult;
            } else {
                merged[e.weight] += e.mult;
            }
        }
        entries.clear();
        for (const auto& [w, m] : merged) entries.push_back({w, m});
        return dropped;
    }

    long long total_dim() const {
        long long d = 0;
        for (const auto& e : entries) d += e.mult;
        return d;
    }

    bool operator==(const MatterContent& o) const {
        if (entries.size() != o.entries.size()) return false;
        for (std::size_t i = 0; i < entries.size(); ++i)
            if (!(entries[i].weight == o.entries[i].weight) || entries[i].mult != o.entries[i].mult)
                return false;
        return true;
    }
};

struct RootPair {
    Weight root;
    Coweight coroot;
};

class RootDatum {
public:
    static constexpr std::size_t kDefaultWeylCap = 10080;

    RootDatum(int rank, std::vector<Weight> simple_roots, std::vector<Coweight> simple_coroots,
              std::string name = "", std::size_t weyl_cap = kDefaultWeylCap)
        : rank_(rank),
          simple_roots_(std::move(simple_roots)),
          simple_coroots_(std::move(simple_coroots)),
          name_(std::move(name)) {
        validate_cartan();
        enumerate_weyl(weyl_cap);
        enumerate_roots();
    }

    int rank() const { return rank_; }
    const std::string& name() const { return name_; }
    std::size_t num_simple() const { return simple_roots_.size(); }
    const std::vector<Weight>& simple_roots() const { return simple_roots_; }
    const std::vector<Coweight>& simple_coroots() const { return simple_coroots_; }
    const std::vector<WeylElement>& weyl_elements() const { return elements_; }
    std::size_t weyl_order() const { return elements_.size(); }
    const WeylElement& identity() const { return elements_[0]; }

    const std::vector<RootPair>& positive_root_pairs() const { return positive_roots_; }

    std::vector<Weight> positive_roots() const {
        std::vector<Weight> out;
        for (const auto& rp : positive_roots_) out.push_back(rp.root);
        return out;
    }

    std::vector<Weight> all_roots() const {
        std::vector<Weight> out;
        for (const auto& rp : positive_roots_) {
            out.push_back(rp.root);
            IntVec neg = rp.root.coords;
            for (auto& c : neg) c = -c;
            out.push_back(Weight{neg});
        }
        return out;
    }

    // 2*rho = sum of positive roots (rho itself may be half-integral)
    IntVec two_rho() const {
        IntVec s(rank_, 0);
        for (const auto& rp : positive_roots_)
            for (int i = 0; i < rank_; ++i) s[i] += rp.root.coords[i];
        return s;
    }

    bool is_dominant(const Coweight& l) const {
        for (const auto& a : simple_roots_)
            if (pairing(a, l) < 0) return false;
        return true;
    }

    // Full Weyl orbit together with, per orbit point, the shortest-word
    // (lex tie-break) witness w with w(lambda) = point.
    std::vector<std::pair<Coweight, WeylElement>> weyl_orbit(const Coweight& lambda) const {
        std::map<Coweight, const WeylElement*> best;
        for (const auto& w : elements_) {
            Coweight p = w.act(lambda);
            auto it = best.find(p);
            if (it == best.end() || shorter_word(w.word, it->second->word)) best[p] = &w;
        }
        std::vector<std::pair<Coweight, WeylElement>> out;
        for (const auto& [p, w] : best) out.emplace_back(p, *w);
        return out;
    }

    std::pair<Coweight, WeylElement> dominant_representative(const Coweight& lambda) const {
        std::optional<std::pair<Coweight, const WeylElement*>> best;
        for (const auto& w : elements_) {
            Coweight p = w.act(lambda);
            if (!is_dominant(p)) continue;
            if (!best || shorter_word(w.word, best->second->word)) best = {p, &w};
        }
        // a dominant representative always exists
        return {best->first, *best->second};
    }

    std::vector<const WeylElement*> stabilizer(const Coweight& lambda) const {
        std::vector<const WeylElement*> out;
        for (const auto& w : elements_)
            if (w.act(lambda) == lambda) out.push_back(&w);
        return out;
    }

    // Simple reflections fixing lambda; they generate the stabilizer when
    // lambda is dominant.
    std::vector<std::size_t> stabilizer_simple_reflections(const Coweight& lambda) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < simple_roots_.size(); ++i)
            if (pairing(simple_roots_[i], lambda) == 0) out.push_back(i);
        return out;
    }

    const WeylElement& simple_reflection(std::size_t i) const { return elements_[simple_refl_[i]]; }

    // mu <= lambda in the dominance order: lambda - mu is a nonnegative
    // integer combination of simple coroots.
    bool dominance_leq(const Coweight& mu, const Coweight& lambda) const;

    bool operator==(const RootDatum& o) const {
        return rank_ == o.rank_ && simple_roots_ == o.simple_roots_ &&
               simple_coroots_ == o.simple_coroots_;
    }

private:
    static bool shorter_word(const std::vector<int>& a, const std::vector<int>& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }

    void validate_cartan() const {
        if (rank_ <= 0) throw SchemaError("rank must be positive");
        if (simple_roots_.size() != simple_coroots_.size())
            throw SchemaError("simple roots and coroots must come in pairs");
        for (const auto& a : simple_roots_)
            if ((int)a.coords.size() != rank_) throw SchemaError("simple root of wrong length");
        for (const auto& a : simple_coroots_)
            if ((int)a.coords.size() != rank_) throw SchemaError("simple coroot of wrong length");
        for (std::size_t i = 0; i < simple_roots_.size(); ++i) {
            for (std::size_t j = 0; j < simple_coroots_.size(); ++j) {
                long long c = pairing(simple_roots_[j], simple_coroots_[i]);
                if (i == j && c != 2) throw SchemaError("Cartan matrix diagonal entry must be 2");
                if (i != j && c > 0) throw SchemaError("Cartan matrix off-diagonal entry must be <= 0");
            }
        }
    }

    void enumerate_weyl(std::size_t cap) {
        int n = rank_;
        std::size_t s = simple_roots_.size();
        std::vector<IntMat> refl_y(s), refl_x(s);
        for (std::size_t i = 0; i < s; ++i) {
            // s_i(lambda) = lambda - <alpha_i, lambda> alpha_i^vee
            IntMat my = identity_matrix(n), mx = identity_matrix(n);
            for (int r = 0; r < n; ++r) {
                for (int c = 0; c < n; ++c) {
                    my[r][c] -= simple_coroots_[i].coords[r] * simple_roots_[i].coords[c];
                    mx[r][c] -= simple_roots_[i].coords[r] * simple_coroots_[i].coords[c];
                }
            }
            refl_y[i] = my;
            refl_x[i] = mx;
        }

        std::map<IntMat, std::size_t> index_of;
        elements_.push_back({identity_matrix(n), identity_matrix(n), {}});
        index_of[elements_[0].on_coweights] = 0;
        std::vector<std::size_t> frontier = {0};
        while (!frontier.empty()) {
            // collect the next level, keeping the lex-least word per element
            std::map<IntMat, WeylElement> next;
            for (std::size_t idx : frontier) {
                const WeylElement parent = elements_[idx];
                for (std::size_t i = 0; i < s; ++i) {
                    WeylElement w;
                    w.on_coweights = mat_mul(refl_y[i], parent.on_coweights);
                    w.on_weights = mat_mul(refl_x[i], parent.on_weights);
                    w.word = parent.word;
                    w.word.insert(w.word.begin(), (int)i);
                    if (index_of.count(w.on_coweights)) continue;
                    auto it = next.find(w.on_coweights);
                    if (it == next.end() || w.word < it->second.word) next[w.on_coweights] = w;
                }
            }
            frontier.clear();
            for (auto& [m, w] : next) {
                if (elements_.size() >= cap)
                    throw BadTheoryError("Weyl group enumeration exceeded cap; root datum not of finite type");
                index_of[m] = elements_.size();
                frontier.push_back(elements_.size());
                elements_.push_back(std::move(w));
            }
        }
        simple_refl_.resize(s, 0);
        for (std::size_t i = 0; i < s; ++i) simple_refl_[i] = index_of.at(refl_y[i]);
    }

    void enumerate_roots() {
        // close (root, coroot) pairs under all simple reflections
        std::set<std::pair<IntVec, IntVec>> seen;
        std::vector<RootPair> frontier;
        for (std::size_t i = 0; i < simple_roots_.size(); ++i) {
            frontier.push_back({simple_roots_[i], simple_coroots_[i]});
            seen.insert({simple_roots_[i].coords, simple_coroots_[i].coords});
        }
        std::vector<RootPair> all(frontier);
        while (!frontier.empty()) {
            std::vector<RootPair> next;
            for (const auto& rp : frontier) {
                for (std::size_t i = 0; i < simple_roots_.size(); ++i) {
                    const WeylElement& si = elements_[simple_refl_[i]];
                    RootPair img{si.act(rp.root), si.act(rp.coroot)};
                    if (seen.insert({img.root.coords, img.coroot.coords}).second) {
                        next.push_back(img);
                        all.push_back(img);
                    }
                }
            }
            frontier = std::move(next);
        }
        for (const auto& rp : all)
            if (is_positive_root(rp.root)) positive_roots_.push_back(rp);
        std::sort(positive_roots_.begin(), positive_roots_.end(),
                  [](const RootPair& a, const RootPair& b) { return a.root.coords < b.root.coords; });
    }

    // alpha is positive iff it is a nonnegative rational combination of the
    // simple roots; solved exactly by Gaussian elimination.
    bool is_positive_root(const Weight& alpha) const {
        std::size_t s = simple_roots_.size();
        // matrix with columns = simple roots, rhs = alpha
        std::vector<std::vector<Rational>> m(rank_, std::vector<Rational>(s + 1));
        for (int r = 0; r < rank_; ++r) {
            for (std::size_t c = 0; c < s; ++c) m[r][c] = Rational(simple_roots_[c].coords[r]);
            m[r][s] = Rational(alpha.coords[r]);
        }
        std::vector<int> pivot_col_of_row;
        std::size_t row = 0;
        for (std::size_t col = 0; col < s && row < (std::size_t)rank_; ++col) {
            std::size_t p = row;
            while (p < (std::size_t)rank_ && m[p][col] == 0) ++p;
            if (p == (std::size_t)rank_) {
                pivot_col_of_row.push_back(-1);
                continue;
            }
            std::swap(m[row], m[p]);
            for (std::size_t r2 = 0; r2 < (std::size_t)rank_; ++r2) {
                if (r2 == row || m[r2][col] == 0) continue;
                Rational f = m[r2][col] / m[row][col];
                for (std::size_t c2 = col; c2 <= s; ++c2) m[r2][c2] -= f * m[row][c2];
            }
            pivot_col_of_row.push_back((int)col);
            ++row;
        }
        // consistency: rows below the pivots must have zero rhs
        for (std::size_t r2 = row; r2 < (std::size_t)rank_; ++r2)
            if (m[r2][s] != 0) return false;
        // simple roots are independent for finite type, so the solution is unique
        std::size_t rr = 0;
        for (std::size_t col = 0; col < s; ++col) {
            if (rr < pivot_col_of_row.size() && pivot_col_of_row[rr] == (int)col) {
                if (m[rr][s] / m[rr][col] < 0) return false;
                ++rr;
            }
        }
        return true;
    }

    int rank_;
    std::vector<Weight> simple_roots_;
    std::vector<Coweight> simple_coroots_;
    std::string name_;
    std::vector<WeylElement> elements_;
    std::vector<std::size_t> simple_refl_;
    std::vector<RootPair> positive_roots_;
};

inline bool RootDatum::dominance_leq(const Coweight& mu, const Coweight& lambda) const {
    IntVec diff(rank_);
    for (int i = 0; i < rank_; ++i) diff[i] = lambda.coords[i] - mu.coords[i];
    if (std::all_of(diff.begin(), diff.end(), [](long long c) { return c == 0; })) return true;
    if (simple_coroots_.empty()) return false;
    // solve diff = sum c_i * coroot_i with c_i rational >= 0, then demand integrality
    std::size_t s = simple_coroots_.size();
    std::vector<std::vector<Rational>> m(rank_, std::vector<Rational>(s + 1));
    for (int r = 0; r < rank_; ++r) {
        for (std::size_t c = 0; c < s; ++c) m[r][c] = Rational(simple_coroots_[c].coords[r]);
        m[r][s] = Rational(diff[r]);
    }
    std::size_t row = 0;
    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
    for (std::size_t col = 0; col < s && row < (std::size_t)rank_; ++col) {
        std::size_t p = row;
        while (p < (std::size_t)rank_ && m[p][col] == 0) ++p;
        if (p == (std::size_t)rank_) continue;
        std::swap(m[row], m[p]);
        for (std::size_t r2 = 0; r2 < (std::size_t)rank_; ++r2) {
            if (r2 == row || m[r2][col] == 0) continue;
            Rational f = m[r2][col] / m[row][col];
            for (std::size_t c2 = col; c2 <= s; ++c2) m[r2][c2] -= f * m[row][c2];
        }
        pivots.emplace_back(row, col);
        ++row;
    }
    for (std::size_t r2 = row; r2 < (std::size_t)rank_; ++r2)
        if (m[r2][s] != 0) return false;
    for (auto [r, c] : pivots) {
        Rational v = m[r][s] / m[r][c];
        if (v < 0 || denominator(v) != 1) return false;
    }
    return true;
}

// A generalized root is a nonzero matter weight (type I) or a root (type II).
inline std::vector<Weight> generalized_roots(const RootDatum& rd, const MatterContent& matter) {
    std::set<Weight> out;
    for (const auto& e : matter.entries)
        if (!e.weight.is_zero()) out.insert(e.weight);
    for (const auto& a : rd.all_roots()) out.insert(a);
    return {out.begin(), out.end()};
}

// primitive normal with canonical sign (first nonzero coordinate positive)
inline Weight primitive_normal(const Weight& w) {
    BigInt g = 0;
    for (long long c : w.coords) g = gcd_int(g, BigInt(c < 0 ? -c : c));
    IntVec v = w.coords;
    if (g > 1)
        for (auto& c : v) c /= (long long)g;
    for (long long c : v) {
        if (c > 0) break;
        if (c < 0) {
            for (auto& x : v) x = -x;
            break;
        }
    }
    return Weight{v};
}

inline std::vector<Weight> generalized_root_hyperplanes(const RootDatum& rd,
                                                        const MatterContent& matter) {
    std::set<Weight> out;
    for (const auto& w : generalized_roots(rd, matter)) out.insert(primitive_normal(w));
    return {out.begin(), out.end()};
}

inline bool proportional(const Weight& a, const Weight& b) {
    // both nonzero; a = q*b for some rational q
    std::size_t n = a.coords.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (a.coords[i] * b.coords[j] != a.coords[j] * b.coords[i]) return false;
    return true;
}

// Fixed-point theory of a generic point on a single generalized-root
// hyperplane: keep the roots and matter weights proportional to the normal.
inline std::pair<RootDatum, MatterContent> fixed_point_theory(const RootDatum& rd,
                                                              const MatterContent& matter,
                                                              const Weight& hyperplane) {
    bool found = false;
    for (const auto& g : generalized_roots(rd, matter))
        if (proportional(g, hyperplane)) found = true;
    if (!found) throw UnsupportedError("hyperplane is not a generalized-root hyperplane");

    std::vector<Weight> roots;
    std::vector<Coweight> coroots;
    for (const auto& rp : rd.positive_root_pairs()) {
        if (proportional(rp.root, hyperplane)) {
            roots.push_back(rp.root);
            coroots.push_back(rp.coroot);
        }
    }
    MatterContent m2;
    for (const auto& e : matter.entries)
        if (proportional(e.weight, hyperplane)) m2.entries.push_back(e);
    m2.normalize();
    RootDatum rd2(rd.rank(), roots, coroots, rd.name() + "|fixed");
    return {rd2, m2};
}

// ---- named presets ----------------------------------------------------

inline RootDatum torus(int rank) {
    return RootDatum(rank, {}, {}, "torus(" + std::to_string(rank) + ")");
}

inline RootDatum sl2() { return RootDatum(1, {Weight{{2}}}, {Coweight{{1}}}, "SL2"); }

inline RootDatum pgl2() { return RootDatum(1, {Weight{{1}}}, {Coweight{{2}}}, "PGL2"); }

inline RootDatum gl(int n) {
    std::vector<Weight> roots;
    std::vector<Coweight> coroots;
    for (int i = 0; i + 1 < n; ++i) {
        IntVec v(n, 0);
        v[i] = 1;
        v[i + 1] = -1;
        roots.push_back(Weight{v});
        coroots.push_back(Coweight{v});
    }
    return RootDatum(n, roots, coroots, "GL(" + std::to_string(n) + ")");
}

inline RootDatum a2() {
    return RootDatum(2, {Weight{{2, -1}}, Weight{{-1, 2}}},
                     {Coweight{{1, 0}}, Coweight{{0, 1}}}, "A2");
}

}  // namespace ck
