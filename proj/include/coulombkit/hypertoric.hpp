#pragma once

// Toric hyper-Kaehler Coulomb branches from a short exact sequence
//
//   0 -> Z^{d-n} --alpha--> Z^d --beta--> Z^n -> 0,
//
// realized two ways: as the torus theory with matter given by the rows of
// alpha, and as the Hamiltonian reduction of C^{2d} = Spec C[x_i, y_i] by
// the dual flavor torus (invariant monomials of beta-charge zero, cut by the
// moment ideal generated by sum_i beta_{ji} x_i y_i). The brute-force graded
// dimension of the reduction is the oracle validating the monopole series.

#include "coulombkit/algebra.hpp"
#include "coulombkit/errors.hpp"
#include "coulombkit/lattice.hpp"
#include "coulombkit/poly.hpp"
#include "coulombkit/series.hpp"

#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace ck {

struct LatticeSequence {
    IntMat alpha;  // d rows, d-n columns
    IntMat beta;   // n rows, d columns

    std::size_t d() const { return alpha.size(); }
    std::size_t gauge_rank() const { return alpha.empty() ? 0 : alpha[0].size(); }
    std::size_t flavor_rank() const { return beta.size(); }
};

namespace detail_hypertoric {

// Smith normal form diagonal of an integer matrix (destructive helper).
inline std::vector<long long> smith_diagonal(IntMat m) {
    std::vector<long long> out;
    std::size_t rows = m.size();
    if (rows == 0) return out;
    std::size_t cols = m[0].size();
    std::size_t r = 0, c = 0;
    while (r < rows && c < cols) {
        // find a nonzero pivot
        std::size_t pr = r, pc = c;
        bool found = false;
        for (std::size_t i = r; i < rows && !found; ++i)
            for (std::size_t j = c; j < cols && !found; ++j)
                if (m[i][j] != 0) {
                    pr = i;
                    pc = j;
                    found = true;
                }
        if (!found) break;
        std::swap(m[r], m[pr]);
        for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][c], m[i][pc]);
        // reduce until the pivot divides its row and column
        bool again = true;
        while (again) {
            again = false;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (m[i][c] == 0) continue;
                long long f = m[i][c] / m[r][c];
                for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
                if (m[i][c] != 0) {
                    std::swap(m[r], m[i]);
                    again = true;
                }
            }
            for (std::size_t j = c + 1; j < cols; ++j) {
                if (m[r][j] == 0) continue;
                long long f = m[r][j] / m[r][c];
                for (std::size_t i = 0; i < rows; ++i) m[i][j] -= f * m[i][c];
                if (m[r][j] != 0) {
                    for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][c], m[i][j]);
                    again = true;
                }
            }
        }
        out.push_back(m[r][c] < 0 ? -m[r][c] : m[r][c]);
        ++r;
        ++c;
    }
    return out;
}

}  // namespace detail_hypertoric

inline void validate_sequence(const LatticeSequence& seq) {
    std::size_t d = seq.d(), g = seq.gauge_rank(), n = seq.flavor_rank();
    if (d == 0 || g == 0 || g > d || n + g != d)
        throw SchemaError("lattice sequence: rank alpha + rank beta must equal d");
    for (const auto& row : seq.alpha)
        if (row.size() != g) throw SchemaError("lattice sequence: ragged alpha");
    for (const auto& row : seq.beta)
        if (row.size() != d) throw SchemaError("lattice sequence: ragged beta");
    // beta . alpha = 0
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < g; ++j) {
            long long s = 0;
            for (std::size_t k = 0; k < d; ++k) s += seq.beta[i][k] * seq.alpha[k][j];
            if (s != 0) throw SchemaError("lattice sequence: beta . alpha != 0");
        }
    }
    // alpha injective with torsion-free cokernel: all Smith divisors 1
    auto sd = detail_hypertoric::smith_diagonal(seq.alpha);
    if (sd.size() != g) throw SchemaError("lattice sequence: alpha is not injective");
    for (long long x : sd)
        if (x != 1) throw SchemaError("lattice sequence: cokernel of alpha has torsion");
    // beta surjective over Q (rank n)
    auto sb = detail_hypertoric::smith_diagonal(seq.beta);
    if (sb.size() != n) throw SchemaError("lattice sequence: beta has deficient rank");
}

// The torus gauge theory of the sequence: rank d-n with matter the rows of
// alpha.
inline std::pair<RootDatum, MatterContent> induced_theory(const LatticeSequence& seq) {
    validate_sequence(seq);
    MatterContent m;
    for (const auto& row : seq.alpha) m.entries.push_back({Weight{row}, 1});
    m.normalize();
    return {torus((int)seq.gauge_rank()), m};
}

namespace detail_hypertoric {

// Monomials x^p y^q of fixed total degree with beta-charge zero, in a
// deterministic order.
inline std::vector<std::pair<IntVec, IntVec>> invariant_monomials(const LatticeSequence& seq,
                                                                  long long degree) {
    std::size_t d = seq.d();
    std::vector<std::pair<IntVec, IntVec>> out;
    IntVec exps(2 * d, 0);
    // enumerate compositions of `degree` into 2d parts
    std::function<void(std::size_t, long long)> rec = [&](std::size_t i, long long left) {
        if (i == 2 * d) {
            if (left != 0) return;
            IntVec p(exps.begin(), exps.begin() + d), q(exps.begin() + d, exps.end());
            for (std::size_t j = 0; j < seq.flavor_rank(); ++j) {
                long long charge = 0;
                for (std::size_t k = 0; k < d; ++k)
                    charge += seq.beta[j][k] * (p[k] - q[k]);
                if (charge != 0) return;
            }
            out.emplace_back(p, q);
            return;
        }
        for (long long e = 0; e <= left; ++e) {
            exps[i] = e;
            rec(i + 1, left - e);
        }
        exps[i] = 0;
    };
    rec(0, degree);
    return out;
}

}  // namespace detail_hypertoric

// Graded dimensions of the Hamiltonian reduction: invariant monomials of each
// degree modulo the moment relations, by exact linear algebra. Exponents are
// doubled (degree-k monomials sit at t^k, i.e. e2 = 2k).
inline TruncatedSeries reduction_oracle(const LatticeSequence& seq, long order2) {
    validate_sequence(seq);
    if (order2 > 40) throw UnsupportedError("reduction oracle: truncation too large for brute force");
    TruncatedSeries out(order2);
    std::size_t n = seq.flavor_rank();

    std::vector<std::pair<IntVec, IntVec>> prev;  // degree k-2 invariant monomials
    std::vector<std::pair<IntVec, IntVec>> prev_unused;
    for (long long k = 0; 2 * k <= order2; ++k) {
        auto monos = detail_hypertoric::invariant_monomials(seq, k);
        std::map<std::pair<IntVec, IntVec>, std::size_t> index;
        for (std::size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;

        std::vector<std::map<std::size_t, Rational>> rows;
        if (k >= 2) {
            auto lower = detail_hypertoric::invariant_monomials(seq, k - 2);
            for (const auto& [p, q] : lower) {
                for (std::size_t j = 0; j < n; ++j) {
                    std::map<std::size_t, Rational> row;
                    for (std::size_t i = 0; i < seq.d(); ++i) {
                        if (seq.beta[j][i] == 0) continue;
                        IntVec p2 = p, q2 = q;
                        ++p2[i];
                        ++q2[i];
                        row[index.at({p2, q2})] += Rational(seq.beta[j][i]);
                    }
                    if (!row.empty()) rows.push_back(std::move(row));
                }
            }
        }
        // rank by ordered Gaussian elimination on sparse rows
        std::map<std::size_t, std::map<std::size_t, Rational>> pivots;  // col -> row
        std::size_t rank = 0;
        for (auto& row : rows) {
            while (!row.empty()) {
                auto lead = row.begin();
                auto it = pivots.find(lead->first);
                if (it == pivots.end()) break;
                Rational f = lead->second / it->second.at(lead->first);
                for (const auto& [c, v] : it->second) {
                    auto jt = row.find(c);
                    if (jt == row.end()) {
                        row.emplace(c, -f * v);
                    } else {
                        jt->second -= f * v;
                        if (jt->second == 0) row.erase(jt);
                    }
                }
            }
            if (!row.empty()) {
                pivots.emplace(row.begin()->first, row);
                ++rank;
            }
        }
        out.add(2 * k, Rational((long long)monos.size() - (long long)rank));
    }
    return out;
}

// The dictionary of the torus relation: r^lambda corresponds to
// z^lambda = prod x_i^{max(alpha_i l, 0)} y_i^{max(-alpha_i l, 0)}, and the
// Cartan coordinate t_j to the invariant quadric (c u)_j with u_i = x_i y_i
// and c a rational left inverse of alpha. Checks that
// z^l z^m - a_{l,m} z^{l+m} lies in the moment ideal, degree by degree.
inline bool relation_dictionary_check(const LatticeSequence& seq, const Coweight& l,
                                      const Coweight& m) {
    validate_sequence(seq);
    std::size_t d = seq.d(), g = seq.gauge_rank(), n = seq.flavor_rank();
    std::size_t nv = 2 * d;  // variables x_1..x_d, y_1..y_d

    auto alpha_pair = [&](std::size_t i, const Coweight& w) {
        long long s = 0;
        for (std::size_t j = 0; j < g; ++j) s += seq.alpha[i][j] * w.coords[j];
        return s;
    };
    auto zmono = [&](const Coweight& w) {
        Exponents e(nv, 0);
        for (std::size_t i = 0; i < d; ++i) {
            long long a = alpha_pair(i, w);
            if (a > 0) e[i] = (unsigned)a;
            if (a < 0) e[d + i] = (unsigned)(-a);
        }
        Poly p(nv);
        p.add_term(e, Rational(1));
        return p;
    };

    // left inverse of alpha over Q: c = (alpha^T alpha)^{-1} alpha^T
    std::vector<std::vector<Rational>> ata(g, std::vector<Rational>(g, Rational(0)));
    for (std::size_t a = 0; a < g; ++a)
        for (std::size_t b = 0; b < g; ++b)
            for (std::size_t i = 0; i < d; ++i)
                ata[a][b] += Rational(seq.alpha[i][a] * seq.alpha[i][b]);
    // invert ata by Gauss-Jordan
    std::vector<std::vector<Rational>> inv(g, std::vector<Rational>(g, Rational(0)));
    for (std::size_t i = 0; i < g; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < g; ++col) {
        std::size_t p = col;
        while (p < g && ata[p][col] == 0) ++p;
        if (p == g) throw InvariantError("relation check: alpha^T alpha singular");
        std::swap(ata[col], ata[p]);
        std::swap(inv[col], inv[p]);
        Rational piv = ata[col][col];
        for (std::size_t j = 0; j < g; ++j) {
            ata[col][j] /= piv;
            inv[col][j] /= piv;
        }
        for (std::size_t r = 0; r < g; ++r) {
            if (r == col || ata[r][col] == 0) continue;
            Rational f = ata[r][col];
            for (std::size_t j = 0; j < g; ++j) {
                ata[r][j] -= f * ata[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    // t_j -> sum_i c[j][i] x_i y_i with c = inv * alpha^T
    std::vector<Poly> t_image(g, Poly(nv));
    for (std::size_t j = 0; j < g; ++j) {
        for (std::size_t i = 0; i < d; ++i) {
            Rational cji(0);
            for (std::size_t a = 0; a < g; ++a) cji += inv[j][a] * Rational(seq.alpha[i][a]);
            if (cji == 0) continue;
            Exponents e(nv, 0);
            e[i] = 1;
            e[d + i] = 1;
            t_image[j].add_term(e, cji);
        }
    }

    // a_{l,m} = prod_i xi_i^{d(xi_i(l), xi_i(m))} mapped through the dictionary
    Poly a_img = Poly::constant(nv, 1);
    for (std::size_t i = 0; i < d; ++i) {
        long long dl = alpha_pair(i, l), dm = alpha_pair(i, m);
        long long dd = d_of(dl, dm);
        if (dd == 0) continue;
        Poly xi_img(nv);
        for (std::size_t j = 0; j < g; ++j)
            if (seq.alpha[i][j] != 0) xi_img += t_image[j] * Rational(seq.alpha[i][j]);
        a_img *= xi_img.pow((unsigned)dd);
    }

    Coweight sum{IntVec(g, 0)};
    for (std::size_t j = 0; j < g; ++j) sum.coords[j] = l.coords[j] + m.coords[j];
    Poly residue = zmono(l) * zmono(m) - a_img * zmono(sum);
    if (residue.is_zero()) return true;
    if (!residue.is_homogeneous()) return false;
    long long k = residue.total_degree();

    // ideal membership at degree k: residue in span{ q_j * monomial }
    auto monos = detail_hypertoric::invariant_monomials(seq, k);
    std::map<std::pair<IntVec, IntVec>, std::size_t> index;
    for (std::size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;
    std::vector<std::map<std::size_t, Rational>> rows;
    if (k >= 2) {
        auto lower = detail_hypertoric::invariant_monomials(seq, k - 2);
        for (const auto& [p, q] : lower) {
            for (std::size_t j = 0; j < n; ++j) {
                std::map<std::size_t, Rational> row;
                for (std::size_t i = 0; i < d; ++i) {
                    if (seq.beta[j][i] == 0) continue;
                    IntVec p2 = p, q2 = q;
                    ++p2[i];
                    ++q2[i];
                    row[index.at({p2, q2})] += Rational(seq.beta[j][i]);
                }
                if (!row.empty()) rows.push_back(std::move(row));
            }
        }
    }
    std::map<std::size_t, Rational> target;
    bool ok_index = true;
    residue.for_each_term([&](const Exponents& e, const Rational& c) {
        IntVec p(d), q(d);
        for (std::size_t i = 0; i < d; ++i) {
            p[i] = e[i];
            q[i] = e[d + i];
        }
        auto it = index.find({p, q});
        if (it == index.end()) ok_index = false;
        else target[it->second] += c;
    });
    if (!ok_index) return false;  // residue not beta-invariant: cannot be in the ideal

    // eliminate: is target in the row span?
    std::map<std::size_t, std::map<std::size_t, Rational>> pivots;
    for (auto& row : rows) {
        while (!row.empty()) {
            auto lead = row.begin();
            auto it = pivots.find(lead->first);
            if (it == pivots.end()) break;
            Rational f = lead->second / it->second.at(lead->first);
            for (const auto& [c, v] : it->second) {
                auto jt = row.find(c);
                if (jt == row.end()) {
                    row.emplace(c, -f * v);
                } else {
                    jt->second -= f * v;
                    if (jt->second == 0) row.erase(jt);
                }
            }
        }
        if (!row.empty()) pivots.emplace(row.begin()->first, row);
    }
    while (!target.empty()) {
        auto lead = target.begin();
        auto it = pivots.find(lead->first);
        if (it == pivots.end()) return false;
        Rational f = lead->second / it->second.at(lead->first);
        for (const auto& [c, v] : it->second) {
            auto jt = target.find(c);
            if (jt == target.end()) {
                target.emplace(c, -f * v);
            } else {
                jt->second -= f * v;
                if (jt->second == 0) target.erase(jt);
            }
        }
    }
    return true;
}

}  // namespace ck
