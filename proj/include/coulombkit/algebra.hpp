#pragma once

// The quantized Coulomb branch algebra of a torus theory, presented by
// symbols r^lambda over Sym(t*)[hbar] (and flavor parameters b_i) with
//
//   r^lambda r^mu = prod_i A_i(lambda, mu) r^(lambda+mu),
//   [r^lambda, alpha] = hbar alpha(lambda) r^lambda.
//
// Elements are kept in normal form with the polynomial coefficient on the
// left of r^lambda; multiplication shifts the right coefficient through
// r^lambda before collecting the structure factor.

#include "coulombkit/errors.hpp"
#include "coulombkit/lattice.hpp"
#include "coulombkit/poly.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace ck {

enum class Mode { classical, quantized, flavored };

inline std::string mode_name(Mode m) {
    switch (m) {
        case Mode::classical: return "classical";
        case Mode::quantized: return "quantized";
        case Mode::flavored: return "flavored";
    }
    return "?";
}

// Variable layout shared by every polynomial attached to a context:
// t1..tr, hbar, then one flavor parameter per matter entry in flavored mode.
struct AlgebraContext {
    int rank = 0;
    MatterContent matter;
    Mode mode = Mode::classical;

    std::size_t num_flavors() const {
        return mode == Mode::flavored ? matter.entries.size() : 0;
    }
    std::size_t nvars() const { return (std::size_t)rank + 1 + num_flavors(); }
    std::size_t hbar_index() const { return (std::size_t)rank; }
    std::size_t flavor_index(std::size_t entry) const { return (std::size_t)rank + 1 + entry; }

    std::vector<std::string> var_names() const {
        std::vector<std::string> names;
        for (int i = 1; i <= rank; ++i) names.push_back("t" + std::to_string(i));
        names.push_back("hbar");
        for (std::size_t i = 1; i <= num_flavors(); ++i) names.push_back("b" + std::to_string(i));
        return names;
    }

    Poly zero() const { return Poly(nvars()); }
    Poly one() const { return Poly::constant(nvars(), 1); }
    Poly scalar(const Rational& c) const { return Poly::constant(nvars(), c); }
    Poly t(int i) const { return Poly::variable(nvars(), i); }
    Poly hbar() const { return Poly::variable(nvars(), hbar_index()); }
    Poly flavor(std::size_t entry) const { return Poly::variable(nvars(), flavor_index(entry)); }

    // the linear form xi_i = sum_j chi_j t_j of a matter entry
    Poly matter_form(std::size_t entry) const {
        Poly p(nvars());
        const IntVec& w = matter.entries[entry].weight.coords;
        for (int j = 0; j < rank; ++j)
            if (w[j]) p.add_term(unit_exp(j), Rational(w[j]));
        return p;
    }

    bool operator==(const AlgebraContext& o) const {
        return rank == o.rank && matter == o.matter && mode == o.mode;
    }
    bool operator!=(const AlgebraContext& o) const { return !(*this == o); }

private:
    Exponents unit_exp(std::size_t i) const {
        Exponents e(nvars(), 0);
        e[i] = 1;
        return e;
    }
};

inline long long d_of(long long k, long long l) {
    if ((k >= 0 && l >= 0) || (k <= 0 && l <= 0)) return 0;
    long long ak = k < 0 ? -k : k, al = l < 0 ? -l : l;
    return ak < al ? ak : al;
}

// t_i -> t_i + hbar * lambda_i; any linear form alpha goes to
// alpha + hbar * alpha(lambda). Flavor parameters and hbar are untouched.
// Expanded termwise with binomials rather than by generic substitution.
inline Poly shift_substitute(const Poly& p, const Coweight& lambda, const AlgebraContext& ctx) {
    if (p.nvars() != ctx.nvars()) throw SchemaError("shift_substitute: variable context mismatch");
    std::size_t hb = ctx.hbar_index();
    Poly out(ctx.nvars());
    Exponents work;
    // expand (t_i + c_i hbar)^{e_i} across the shifted variables recursively
    std::function<void(std::size_t, const Exponents&, Exponents&, const Rational&)> expand =
        [&](std::size_t i, const Exponents& e, Exponents& acc, const Rational& coeff) {
            if ((int)i == ctx.rank) {
                out.add_term(acc, coeff);
                return;
            }
            long long c = lambda.coords[i];
            if (c == 0 || e[i] == 0) {
                acc[i] = e[i];
                expand(i + 1, e, acc, coeff);
                acc[i] = 0;
                return;
            }
            Rational binom(1);
            Rational cpow(1);
            for (unsigned k = 0; k <= e[i]; ++k) {
                acc[i] = e[i] - k;
                acc[hb] += k;
                expand(i + 1, e, acc, coeff * binom * cpow);
                acc[hb] -= k;
                binom *= Rational(e[i] - k);
                binom /= Rational(k + 1);
                cpow *= Rational(c);
            }
            acc[i] = 0;
        };
    p.for_each_term([&](const Exponents& e, const Rational& c) {
        Exponents acc(ctx.nvars(), 0);
        for (std::size_t i = ctx.rank; i < ctx.nvars(); ++i) acc[i] = e[i];
        expand(0, e, acc, c);
    });
    return out;
}

// t-variables transformed by the contragredient matrix; hbar, b fixed.
inline Poly weyl_act(const Poly& p, const WeylElement& w, const AlgebraContext& ctx) {
    if (p.nvars() != ctx.nvars()) throw SchemaError("weyl_act: variable context mismatch");
    std::vector<Poly> images;
    images.reserve(ctx.nvars());
    for (int i = 0; i < ctx.rank; ++i) {
        // t_i is the i-th coordinate weight; its image is column i of the
        // weight-action matrix
        Poly img(ctx.nvars());
        for (int j = 0; j < ctx.rank; ++j) {
            long long c = w.on_weights[j][i];
            if (c) img += ctx.t(j) * Rational(c);
        }
        images.push_back(img);
    }
    for (std::size_t i = ctx.rank; i < ctx.nvars(); ++i)
        images.push_back(Poly::variable(ctx.nvars(), i));
    return p.substitute(images);
}

// One factor of the relation for matter entry i, to the power of its
// multiplicity. Classical: xi^d. Quantized and flavored carry the
// half-integral hbar shifts from the weight-1/2 loop action.
inline Poly structure_factor_entry(const AlgebraContext& ctx, std::size_t entry,
                                   const Coweight& lambda, const Coweight& mu) {
    const MatterEntry& me = ctx.matter.entries[entry];
    long long kl = pairing(me.weight, lambda);
    long long km = pairing(me.weight, mu);
    long long d = d_of(kl, km);
    if (d == 0) return ctx.one();

    Poly xi = ctx.matter_form(entry);
    Poly factor = ctx.one();
    switch (ctx.mode) {
        case Mode::classical:
            factor = xi.pow((unsigned)d);
            break;
        case Mode::quantized:
        case Mode::flavored: {
            Poly base = xi;
            if (ctx.mode == Mode::flavored) base += ctx.flavor(entry);
            for (long long j = 1; j <= d; ++j) {
                Rational shift = kl >= 0 ? Rational(2 * kl - 2 * j + 1, 2)
                                         : Rational(2 * kl + 2 * j - 1, 2);
                factor *= base + ctx.hbar() * shift;
            }
            break;
        }
    }
    return factor.pow((unsigned)me.mult);
}

inline Poly structure_factor(const AlgebraContext& ctx, const Coweight& lambda,
                             const Coweight& mu) {
    Poly out = ctx.one();
    for (std::size_t i = 0; i < ctx.matter.entries.size(); ++i)
        out *= structure_factor_entry(ctx, i, lambda, mu);
    return out;
}

class AbelianElement {
public:
    explicit AbelianElement(AlgebraContext ctx) : ctx_(std::move(ctx)) {}

    static AbelianElement zero(const AlgebraContext& ctx) { return AbelianElement(ctx); }

    static AbelianElement unit(const AlgebraContext& ctx) {
        return monomial(ctx, Coweight{IntVec(ctx.rank, 0)}, ctx.one());
    }

    static AbelianElement monomial(const AlgebraContext& ctx, const Coweight& lambda,
                                   const Poly& coeff) {
        AbelianElement x(ctx);
        x.set_term(lambda, coeff);
        return x;
    }

    static AbelianElement from_poly(const AlgebraContext& ctx, const Poly& coeff) {
        return monomial(ctx, Coweight{IntVec(ctx.rank, 0)}, coeff);
    }

    const AlgebraContext& context() const { return ctx_; }
    const std::map<Coweight, Poly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Poly coeff(const Coweight& lambda) const {
        auto it = terms_.find(lambda);
        return it == terms_.end() ? ctx_.zero() : it->second;
    }

    void set_term(const Coweight& lambda, const Poly& coeff) {
        if ((int)lambda.coords.size() != ctx_.rank)
            throw SchemaError("AbelianElement: coweight of wrong rank");
        if (coeff.is_zero()) terms_.erase(lambda);
        else terms_[lambda] = coeff;
    }

    void add_term(const Coweight& lambda, const Poly& coeff) {
        if ((int)lambda.coords.size() != ctx_.rank)
            throw SchemaError("AbelianElement: coweight of wrong rank");
        auto it = terms_.find(lambda);
        if (it == terms_.end()) {
            if (!coeff.is_zero()) terms_.emplace(lambda, coeff);
        } else {
            it->second += coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend AbelianElement operator+(const AbelianElement& a, const AbelianElement& b) {
        a.check_ctx(b);
        AbelianElement out = a;
        for (const auto& [l, c] : b.terms_) out.add_term(l, c);
        return out;
    }
    friend AbelianElement operator-(const AbelianElement& a, const AbelianElement& b) {
        a.check_ctx(b);
        AbelianElement out = a;
        for (const auto& [l, c] : b.terms_) out.add_term(l, -c);
        return out;
    }
    AbelianElement operator-() const {
        AbelianElement out(ctx_);
        for (const auto& [l, c] : terms_) out.set_term(l, -c);
        return out;
    }

    // (f r^lambda)(g r^mu) = f shift_lambda(g) A(lambda,mu) r^(lambda+mu)
    friend AbelianElement operator*(const AbelianElement& a, const AbelianElement& b) {
        a.check_ctx(b);
        const AlgebraContext& ctx = a.ctx_;
        AbelianElement out(ctx);
        for (const auto& [la, f] : a.terms_) {
            for (const auto& [mu, g] : b.terms_) {
                Poly coeff = f;
                coeff *= ctx.mode == Mode::classical ? g : shift_substitute(g, la, ctx);
                coeff *= structure_factor(ctx, la, mu);
                IntVec sum(ctx.rank);
                for (int i = 0; i < ctx.rank; ++i) sum[i] = la.coords[i] + mu.coords[i];
                out.add_term(Coweight{sum}, coeff);
            }
        }
        return out;
    }

    friend AbelianElement operator*(const AbelianElement& a, const Poly& p) {
        return a * from_poly(a.ctx_, p);
    }
    friend AbelianElement operator*(const Poly& p, const AbelianElement& a) {
        return from_poly(a.ctx_, p) * a;
    }
    AbelianElement& operator*=(const Rational& c) {
        for (auto& [l, v] : terms_) v *= c;
        if (c == 0) terms_.clear();
        return *this;
    }
    friend AbelianElement operator*(AbelianElement a, const Rational& c) { return a *= c; }

    bool operator==(const AbelianElement& o) const {
        return ctx_ == o.ctx_ && terms_ == o.terms_;
    }
    bool operator!=(const AbelianElement& o) const { return !(*this == o); }

    AbelianElement commutator(const AbelianElement& o) const { return *this * o - o * *this; }

    // Reinterpret in another context over the same variable layout.
    AbelianElement with_context(const AlgebraContext& ctx) const {
        if (ctx.nvars() != ctx_.nvars() || ctx.rank != ctx_.rank)
            throw SchemaError("with_context: incompatible variable layout");
        AbelianElement out(ctx);
        out.terms_ = terms_;
        return out;
    }

    AbelianElement map_coeffs(const std::function<Poly(const Poly&)>& f) const {
        AbelianElement out(ctx_);
        for (const auto& [l, c] : terms_) out.set_term(l, f(c));
        return out;
    }

private:
    void check_ctx(const AbelianElement& o) const {
        if (ctx_ != o.ctx_) throw SchemaError("AbelianElement: context mismatch");
    }

    AlgebraContext ctx_;
    std::map<Coweight, Poly> terms_;
};

inline AbelianElement set_hbar_zero(const AbelianElement& x) {
    const AlgebraContext& ctx = x.context();
    return x.map_coeffs([&](const Poly& p) { return p.evaluate_var(ctx.hbar_index(), 0); });
}

// ([x, y] / hbar)|_{hbar = 0}. Inputs must have hbar-free coefficients;
// the division is always exact for such inputs.
inline AbelianElement poisson_bracket(const AbelianElement& x, const AbelianElement& y) {
    const AlgebraContext& ctx = x.context();
    AlgebraContext qctx = ctx;
    if (qctx.mode == Mode::classical) qctx.mode = Mode::quantized;
    for (const auto* el : {&x, &y})
        for (const auto& [l, c] : el->terms())
            if (c.degree_in(ctx.hbar_index()) > 0)
                throw SchemaError("poisson_bracket: inputs must be hbar-free");
    AbelianElement xa = x.with_context(qctx), ya = y.with_context(qctx);
    AbelianElement comm = xa.commutator(ya);
    Poly hbar = qctx.hbar();
    AbelianElement out(ctx);
    for (const auto& [l, c] : comm.terms()) {
        auto q = Poly::divide_exact(c, hbar);
        if (!q) throw InvariantError("poisson_bracket: commutator not divisible by hbar");
        out.set_term(l, q->evaluate_var(qctx.hbar_index(), 0));
    }
    return out;
}

// Sign twist identifying the algebras for N and for N with entry i dualized.
// The sign is keyed on the sign-canonical representative of the weight, so
// applying the twist twice is the identity.
inline AbelianElement sigma_twist(const AbelianElement& x, std::size_t entry) {
    const AlgebraContext& ctx = x.context();
    if (entry >= ctx.matter.entries.size()) throw SchemaError("sigma_twist: bad matter index");
    AlgebraContext out_ctx = ctx;
    for (auto& c : out_ctx.matter.entries[entry].weight.coords) c = -c;
    // sign-canonical representative: first nonzero coordinate positive
    Weight chi = ctx.matter.entries[entry].weight;
    for (long long c : chi.coords) {
        if (c > 0) break;
        if (c < 0) {
            for (auto& x2 : chi.coords) x2 = -x2;
            break;
        }
    }
    long long mult = ctx.matter.entries[entry].mult;
    AbelianElement out(out_ctx);
    for (const auto& [l, coeff] : x.terms()) {
        long long k = pairing(chi, l);
        Poly c2 = coeff;
        if (k > 0 && ((k * mult) % 2)) c2 = -c2;
        out.add_term(l, c2);
    }
    return out;
}

// The embedding A[T, N + V] -> A[T, N] removing matter entry `entry` (the
// representation V), quantized per the hbar-shifted product of linear forms.
inline AbelianElement rep_embedding(const AbelianElement& x, std::size_t entry) {
    const AlgebraContext& ctx = x.context();
    if (entry >= ctx.matter.entries.size()) throw SchemaError("rep_embedding: bad matter index");
    if (ctx.mode == Mode::flavored)
        throw UnsupportedError("rep_embedding: flavored mode not supported");
    AlgebraContext out_ctx = ctx;
    out_ctx.matter.entries.erase(out_ctx.matter.entries.begin() + entry);

    const MatterEntry& me = ctx.matter.entries[entry];
    Poly xi = ctx.matter_form(entry);
    AbelianElement out(out_ctx);
    for (const auto& [l, coeff] : x.terms()) {
        long long k = pairing(me.weight, l);
        Poly factor = ctx.one();
        if (k < 0) {
            if (ctx.mode == Mode::classical) {
                factor = xi.pow((unsigned)(-k));
            } else {
                for (long long j = 0; j < -k; ++j)
                    factor *= xi + ctx.hbar() * Rational(2 * k + 2 * j + 1, 2);
            }
            factor = factor.pow((unsigned)me.mult);
        }
        // contexts share the t/hbar layout (no flavors), so the coefficient
        // carries over unchanged
        out.add_term(l, coeff * factor);
    }
    return out;
}

// z^*: remove all matter, landing in A[T, 0] = C[t x T^vee] (classical) or
// the algebra of hbar-difference operators (quantized).
inline AbelianElement zstar(const AbelianElement& x) {
    AbelianElement out = x;
    while (!out.context().matter.entries.empty()) out = rep_embedding(out, 0);
    return out;
}

struct TermGrading {
    Coweight pi1_class;     // for a torus pi_1 = Y
    long delta2 = 0;        // 2 * Delta-degree of the term
    long homological = 0;   // full homological degree (even)
    bool homogeneous = true;
};

// Delta(r^lambda) = (1/2) sum_i |xi_i(lambda)| dim N(xi_i), doubled.
inline long abelian_delta2(const AlgebraContext& ctx, const Coweight& lambda) {
    long long s = 0;
    for (const auto& e : ctx.matter.entries) {
        long long k = pairing(e.weight, lambda);
        s += (k < 0 ? -k : k) * e.mult;
    }
    return (long)s;
}

inline long abelian_dlambda(const AlgebraContext& ctx, const Coweight& lambda) {
    long long s = 0;
    for (const auto& e : ctx.matter.entries) {
        long long k = pairing(e.weight, lambda);
        if (k < 0) s += -k * e.mult;
    }
    return (long)s;
}

inline std::vector<TermGrading> grading(const AbelianElement& x) {
    const AlgebraContext& ctx = x.context();
    std::vector<TermGrading> out;
    for (const auto& [l, c] : x.terms()) {
        TermGrading g;
        g.pi1_class = l;
        g.homogeneous = c.is_homogeneous();
        long cdeg = (long)c.total_degree();
        g.delta2 = 2 * cdeg + abelian_delta2(ctx, l);
        g.homological = 2 * (cdeg + abelian_dlambda(ctx, l));
        out.push_back(g);
    }
    return out;
}

// [x, chi * 1] for a character chi; equals hbar chi(lambda) per term.
inline AbelianElement central_commutator(const AbelianElement& x, const Weight& chi) {
    const AlgebraContext& ctx = x.context();
    Poly form = Poly::linear_form(ctx.nvars(), chi.coords);
    return x.commutator(AbelianElement::from_poly(ctx, form));
}

}  // namespace ck
