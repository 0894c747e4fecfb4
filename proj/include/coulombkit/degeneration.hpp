#pragma once

// The associated graded algebra of the dominance filtration: classes
// f [R_lambda] indexed by dominant coweights with W_lambda-invariant
// coefficients, multiplied by
//
//   f [R_lambda] g [R_mu] = a_{lambda,mu} f g [R_{lambda+mu}],
//
// a_{lambda,mu} the classical torus structure constant. leading_term extracts
// the top filtration piece of an abelianized element; chamber generators
// realize the finite-generation argument.

#include "coulombkit/algebra.hpp"
#include "coulombkit/chambers.hpp"
#include "coulombkit/errors.hpp"
#include "coulombkit/localized.hpp"

#include <map>
#include <vector>

namespace ck {

class GrElement {
public:
    explicit GrElement(Theory th) : th_(std::move(th)) {
        if (th_.mode != Mode::classical)
            throw UnsupportedError("GrElement: the associated graded is kept classical");
    }

    static GrElement zero(const Theory& th) { return GrElement(th); }

    static GrElement single(const Theory& th, const Coweight& lambda, const Poly& coeff) {
        GrElement x(th);
        x.set_term(lambda, coeff);
        return x;
    }

    const Theory& theory() const { return th_; }
    const std::map<Coweight, Poly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Poly coeff(const Coweight& l) const {
        auto it = terms_.find(l);
        return it == terms_.end() ? th_.algebra_context().zero() : it->second;
    }

    void set_term(const Coweight& lambda, const Poly& coeff) {
        if (!th_.rd.is_dominant(lambda))
            throw SchemaError("GrElement: classes are indexed by dominant coweights");
        const AlgebraContext ctx = th_.algebra_context();
        for (const auto* w : th_.rd.stabilizer(lambda))
            if (weyl_act(coeff, *w, ctx) != coeff)
                throw SchemaError("GrElement: coefficient is not stabilizer-invariant");
        if (coeff.is_zero()) terms_.erase(lambda);
        else terms_[lambda] = coeff;
    }

    void add_term(const Coweight& lambda, const Poly& coeff) {
        Poly sum = this->coeff(lambda) + coeff;
        set_term(lambda, sum);
    }

    friend GrElement operator+(const GrElement& a, const GrElement& b) {
        a.check(b);
        GrElement out = a;
        for (const auto& [l, c] : b.terms_) out.add_term(l, c);
        return out;
    }

    friend GrElement operator*(const GrElement& a, const GrElement& b) {
        a.check(b);
        const AlgebraContext ctx = a.th_.algebra_context();
        GrElement out(a.th_);
        for (const auto& [la, f] : a.terms_) {
            for (const auto& [mu, g] : b.terms_) {
                Poly coeff = f * g * structure_factor(ctx, la, mu);
                IntVec sum(ctx.rank);
                for (int i = 0; i < ctx.rank; ++i) sum[i] = la.coords[i] + mu.coords[i];
                out.add_term(Coweight{sum}, coeff);
            }
        }
        return out;
    }

    bool operator==(const GrElement& o) const { return th_ == o.th_ && terms_ == o.terms_; }
    bool operator!=(const GrElement& o) const { return !(*this == o); }

private:
    void check(const GrElement& o) const {
        if (th_ != o.th_) throw SchemaError("GrElement: context mismatch");
    }

    Theory th_;
    std::map<Coweight, Poly> terms_;
};

// the classical torus structure constant a_{lambda,mu}
inline Poly gr_structure_constant(const Theory& th, const Coweight& lambda, const Coweight& mu) {
    AlgebraContext ctx = th.algebra_context();
    ctx.mode = Mode::classical;
    return structure_factor(ctx, lambda, mu);
}

// Extract the maximal filtration classes of an abelianized element. Terms are
// grouped by the dominant representative of their support coweight; the
// classes maximal in the dominance poset survive (incomparable maxima are all
// kept). The coefficient of [R_lambda] is recovered from the dominant-point
// term via f = g_lambda e(T_lambda Gr^lambda).
inline GrElement leading_term(const LocalizedElement& x) {
    Theory th = x.theory();
    th.mode = Mode::classical;
    GrElement out(th);
    if (x.is_zero()) return out;
    if (x.theory().mode != Mode::classical)
        throw UnsupportedError("leading_term: classical elements only");

    std::set<Coweight> classes;
    for (const auto& [l, c] : x.terms()) classes.insert(th.rd.dominant_representative(l).first);
    for (const auto& l : classes) {
        bool maximal = true;
        for (const auto& m : classes)
            if (!(m == l) && th.rd.dominance_leq(l, m)) maximal = false;
        if (!maximal) continue;
        RatFunc g = x.coeff(l);
        if (g.is_zero())
            throw InvariantError("leading_term: dominant point of a maximal class is missing");
        RatFunc f = g * RatFunc(orbit_euler_class(th, l, l));
        if (!f.is_polynomial())
            throw InvariantError("leading_term: coefficient is not polynomial");
        out.add_term(l, f.as_polynomial());
    }
    return out;
}

inline GrElement leading_term(const AbelianElement& x, const RootDatum& rd) {
    Theory th{rd, x.context().matter, x.context().mode};
    return leading_term(LocalizedElement::from_abelian(th, x));
}

}  // namespace ck
