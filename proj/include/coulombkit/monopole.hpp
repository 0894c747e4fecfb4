#pragma once

// Monopole-formula Hilbert series: the graded dimension
//
//   H(t) = sum over dominant coweights of t^(2 Delta(lambda)) P_G(t; lambda),
//
// with Delta(lambda) = -sum_{alpha in Delta+} |<alpha,lambda>|
//                      + (1/2) sum_chi |<chi,lambda>| dim N(chi)
// and P_G(t; lambda) the Molien series of the stabilizer Weyl group acting on
// the Cartan subalgebra (deg t = 2).
//
// The sum is attempted only for good-or-ugly theories: Delta must have
// positive slope along every extreme ray of every generalized chamber of the
// dominant cone, which also yields a certified box bound on the contributing
// coweights. Bad theories are rejected loudly.

#include "coulombkit/chambers.hpp"
#include "coulombkit/errors.hpp"
#include "coulombkit/lattice.hpp"
#include "coulombkit/series.hpp"

#include <optional>
#include <thread>
#include <vector>

namespace ck {

inline long long d_lambda(const Coweight& lambda, const MatterContent& matter,
                          const RootDatum& rd) {
    (void)rd;
    long long s = 0;
    for (const auto& e : matter.entries) {
        long long k = pairing(e.weight, lambda);
        if (k < 0) s += -k * e.mult;
    }
    return s;
}

// 2 * Delta(lambda); Delta itself lies in (1/2) Z.
inline long long delta2(const Coweight& lambda, const MatterContent& matter,
                        const RootDatum& rd) {
    long long s = 0;
    for (const auto& e : matter.entries) {
        long long k = pairing(e.weight, lambda);
        s += (k < 0 ? -k : k) * e.mult;
    }
    for (const auto& rp : rd.positive_root_pairs()) {
        long long k = pairing(rp.root, lambda);
        s -= 2 * (k < 0 ? -k : k);
    }
    return s;
}

// The exponent by which the homological grading of the component of lambda
// differs from the Delta grading; constant on pi_1 classes.
inline long long homological_shift(const Coweight& lambda, const MatterContent& matter) {
    long long s = 0;
    for (const auto& e : matter.entries) s += pairing(e.weight, lambda) * e.mult;
    return -s;
}

namespace detail_molien {

// det(1 - s w) as coefficients in s, where w acts on the Cartan subalgebra;
// expanded over permutations (rank <= 4).
inline std::vector<Rational> char_poly(const IntMat& m) {
    int n = (int)m.size();
    std::vector<Rational> out(n + 1, Rational(0));
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    do {
        // sign of the permutation
        int sgn = 1;
        std::vector<bool> seen(n, false);
        for (int i = 0; i < n; ++i) {
            if (seen[i]) continue;
            int len = 0, j = i;
            while (!seen[j]) {
                seen[j] = true;
                j = perm[j];
                ++len;
            }
            if (len % 2 == 0) sgn = -sgn;
        }
        // product of (delta_{i,perm(i)} - s m[i][perm(i)])
        std::vector<Rational> prod = {Rational(1)};
        for (int i = 0; i < n; ++i) {
            Rational c0 = i == perm[i] ? Rational(1) : Rational(0);
            Rational c1 = Rational(-m[i][perm[i]]);
            std::vector<Rational> next(prod.size() + 1, Rational(0));
            for (std::size_t k = 0; k < prod.size(); ++k) {
                next[k] += prod[k] * c0;
                next[k + 1] += prod[k] * c1;
            }
            prod = std::move(next);
        }
        for (std::size_t k = 0; k < prod.size(); ++k)
            if (prod[k] != 0) out[k] += Rational(sgn) * prod[k];
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace detail_molien

// Molien series of the stabilizer of lambda acting on the Cartan subalgebra,
// with deg t = 2: (1/|W_lambda|) sum_w 1/det(1 - t^2 w).
inline TruncatedSeries levi_series(const Coweight& lambda, const RootDatum& rd, long order2) {
    auto stab = rd.stabilizer(lambda);
    TruncatedSeries sum = TruncatedSeries::zero(order2);
    for (const auto* w : stab) {
        auto cp = detail_molien::char_poly(w->on_coweights);
        TruncatedSeries den = TruncatedSeries::zero(order2);
        for (std::size_t k = 0; k < cp.size(); ++k)
            if (cp[k] != 0) den.add(4 * (long)k, cp[k]);  // s = t^2 is 4 half-units
        sum = sum + den.inverse();
    }
    sum *= Rational(1, (long long)stab.size());
    return sum;
}

struct MonopoleRequest {
    MatterContent matter;
    long order2 = 0;  // track exponents <= order2 in t^(1/2) units
    std::optional<std::vector<long long>> flavor_charges;  // one per matter entry
    int threads = 1;
};

struct HilbertSeries {
    TruncatedSeries series{0};
    std::optional<RefinedSeries> refined;
    long long coweights_summed = 0;
    bool good_or_ugly = false;
};

namespace detail_monopole {

// The generalized chambers of the dominant cone. Throws BadTheoryError as
// soon as Delta fails to grow along some ray; otherwise returns a box bound
// B such that every dominant lambda with 2*Delta(lambda) <= delta2_bound has
// |lambda_i| <= B.
inline long long certify_and_bound(const RootDatum& rd, const MatterContent& matter,
                                   long long delta2_bound) {
    int n = rd.rank();
    std::vector<IntVec> dominance;
    for (const auto& a : rd.simple_roots()) dominance.push_back(a.coords);
    auto hyps = generalized_root_hyperplanes(rd, matter);
    std::size_t k = hyps.size();
    long long box = 0;
    bool any_chamber = false;
    for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
        cone::Cone c;
        c.n = n;
        c.rows = dominance;
        for (std::size_t i = 0; i < k; ++i) {
            IntVec row = hyps[i].coords;
            if (!((mask >> i) & 1))
                for (auto& x : row) x = -x;
            c.rows.push_back(row);
        }
        auto lin = c.lineality();
        if (!lin.empty()) {
            // Delta is linear on the chamber and vanishes nowhere on a line
            // only if it is somewhere nonpositive
            throw BadTheoryError(
                "the dominant cone contains a line on which Delta cannot grow");
        }
        auto rays = c.extreme_rays();
        if (cone::rank_of(rays, n) != n) continue;  // lower-dimensional cell
        any_chamber = true;
        for (const auto& r : rays) {
            long long d2 = delta2(Coweight{r}, matter, rd);
            if (d2 <= 0)
                throw BadTheoryError("Delta does not grow along a dominant ray");
            long long rn = 0;
            for (auto x : r) rn = std::max(rn, x < 0 ? -x : x);
            // Delta(lambda) >= (d2 / (2 rn)) * |lambda|_inf on this chamber
            long long b = (delta2_bound * rn) / d2 + 1;
            box = std::max(box, b);
        }
    }
    if (!any_chamber) {
        // rank 0 slice of the dominant cone: only lambda = 0 contributes
        return 0;
    }
    return box;
}

}  // namespace detail_monopole

inline HilbertSeries monopole_series(const RootDatum& rd, const MonopoleRequest& req) {
    if (req.order2 < 0) throw SchemaError("monopole series: truncation must be nonnegative");
    MatterContent matter = req.matter;
    matter.normalize();
    if (req.flavor_charges && req.flavor_charges->size() != matter.entries.size())
        throw SchemaError("monopole series: flavor charge per matter entry expected");

    long long delta2_bound = req.order2 / 2;  // term exponent is 2*delta2 half-units
    long long box = detail_monopole::certify_and_bound(rd, matter, delta2_bound);

    // enumerate dominant coweights in the certified box
    std::vector<Coweight> lambdas;
    IntVec cur(rd.rank(), -box);
    if (rd.rank() >= 1) {
        while (true) {
            Coweight l{cur};
            if (rd.is_dominant(l) && delta2(l, matter, rd) <= delta2_bound) lambdas.push_back(l);
            int i = 0;
            while (i < rd.rank() && ++cur[i] > box) cur[i++] = -box;
            if (i == rd.rank()) break;
        }
    }

    int threads = std::max(1, req.threads);
    threads = std::min<int>(threads, (int)std::max<std::size_t>(1, lambdas.size()));
    std::vector<TruncatedSeries> partial(threads, TruncatedSeries::zero(req.order2));
    std::vector<RefinedSeries> partial_ref(threads, RefinedSeries(req.order2));
    auto work = [&](int tid) {
        for (std::size_t i = tid; i < lambdas.size(); i += threads) {
            const Coweight& l = lambdas[i];
            long long d2 = delta2(l, matter, rd);
            TruncatedSeries term = levi_series(l, rd, req.order2).shifted(2 * d2);
            partial[tid] = partial[tid] + term;
            if (req.flavor_charges) {
                long long zq = 0;
                for (std::size_t e = 0; e < matter.entries.size(); ++e)
                    zq += (*req.flavor_charges)[e] * pairing(matter.entries[e].weight, l);
                for (const auto& [e2, c] : term.coeffs()) partial_ref[tid].add(e2, zq, c);
            }
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& t : pool) t.join();
    }

    HilbertSeries out;
    out.series = TruncatedSeries::zero(req.order2);
    for (const auto& p : partial) out.series = out.series + p;  // fixed merge order
    if (req.flavor_charges) {
        RefinedSeries ref(req.order2);
        for (const auto& pr : partial_ref)
            for (const auto& [key, c] : pr.coeffs()) ref.add(key.first, key.second, c);
        out.refined = ref;
    }
    out.coweights_summed = (long long)lambdas.size();
    out.good_or_ugly = true;
    return out;
}

}  // namespace ck
