#pragma once

// The localized torus algebra C(t)[Y] attached to a theory (G, N): elements
// sum f_lambda r^lambda with rational-function coefficients whose
// denominators factor into generalized-root linear forms (classical) or
// hbar and half-integral shifts root + (m/2) hbar (quantized). Hosts the
// Weyl action, the equivariant
// Euler classes of orbit tangent spaces, the closed-orbit (minuscule) lift
//
//   (iota_*)^{-1} f[R_lambda] = sum over W lambda of (wf) r^{lambda'} / e(T_{lambda'} Gr^lambda),
//
// and the rank-1 Coulomb branch determination built on it.

#include "coulombkit/algebra.hpp"
#include "coulombkit/errors.hpp"
#include "coulombkit/lattice.hpp"
#include "coulombkit/ratfunc.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ck {

struct Theory {
    RootDatum rd;
    MatterContent matter;
    Mode mode = Mode::classical;

    AlgebraContext algebra_context() const { return AlgebraContext{rd.rank(), matter, mode}; }

    bool operator==(const Theory& o) const {
        return rd == o.rd && matter == o.matter && mode == o.mode;
    }
    bool operator!=(const Theory& o) const { return !(*this == o); }
};

namespace detail_localized {

// A denominator is admissible when it factors (up to a constant) into linear
// forms alpha + (m/2) hbar with alpha a generalized root (m = 0 classically;
// the bare hbar is also allowed in quantized mode). Half-integral shifts
// appear because the tangent weights carry the weight-1/2 loop action. The
// shift of a factor is searched in a generous bounded window, ample for
// desk-scale elements.
inline bool denominator_admissible(Poly den, const Theory& th) {
    const AlgebraContext ctx = th.algebra_context();
    if (den.is_zero()) return false;
    if (den.is_constant()) return true;
    std::vector<Poly> candidates;
    for (const auto& g : generalized_roots(th.rd, th.matter))
        candidates.push_back(Poly::linear_form(ctx.nvars(), g.coords));
    constexpr long long kShiftWindow = 64;  // in units of hbar/2
    bool progress = true;
    while (!den.is_constant() && progress) {
        progress = false;
        if (th.mode != Mode::classical) {
            while (true) {
                auto q = Poly::divide_exact(den, ctx.hbar());
                if (!q) break;
                den = *q;
                progress = true;
            }
        }
        for (const auto& base : candidates) {
            long long window = th.mode == Mode::classical ? 0 : kShiftWindow;
            for (long long m = -window; m <= window; ++m) {
                Poly factor = base + ctx.hbar() * Rational(m, 2);
                while (true) {
                    auto q = Poly::divide_exact(den, factor);
                    if (!q) break;
                    den = *q;
                    progress = true;
                }
            }
            if (den.is_constant()) break;
        }
    }
    return den.is_constant();
}

}  // namespace detail_localized

class LocalizedElement {
public:
    explicit LocalizedElement(Theory th) : th_(std::move(th)) {}

    static LocalizedElement zero(const Theory& th) { return LocalizedElement(th); }

    static LocalizedElement unit(const Theory& th) {
        LocalizedElement x(th);
        x.set_term(Coweight{IntVec(th.rd.rank(), 0)},
                   RatFunc(th.algebra_context().one()));
        return x;
    }

    static LocalizedElement monomial(const Theory& th, const Coweight& l, const RatFunc& c) {
        LocalizedElement x(th);
        x.set_term(l, c);
        return x;
    }

    static LocalizedElement from_abelian(const Theory& th, const AbelianElement& a) {
        if (a.context() != th.algebra_context())
            throw SchemaError("from_abelian: context mismatch");
        LocalizedElement x(th);
        for (const auto& [l, c] : a.terms()) x.set_term(l, RatFunc(c));
        return x;
    }

    const Theory& theory() const { return th_; }
    const std::map<Coweight, RatFunc>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    RatFunc coeff(const Coweight& l) const {
        auto it = terms_.find(l);
        return it == terms_.end() ? RatFunc(th_.algebra_context().zero()) : it->second;
    }

    void set_term(const Coweight& l, const RatFunc& c) {
        if ((int)l.coords.size() != th_.rd.rank())
            throw SchemaError("LocalizedElement: coweight of wrong rank");
        if (c.is_zero()) {
            terms_.erase(l);
            return;
        }
        if (!detail_localized::denominator_admissible(c.den(), th_))
            throw SchemaError("LocalizedElement: denominator outside the multiplicative set");
        terms_[l] = c;
    }

    void add_term(const Coweight& l, const RatFunc& c) { set_term(l, coeff(l) + c); }

    friend LocalizedElement operator+(const LocalizedElement& a, const LocalizedElement& b) {
        a.check(b);
        LocalizedElement out = a;
        for (const auto& [l, c] : b.terms_) out.add_term(l, c);
        return out;
    }
    friend LocalizedElement operator-(const LocalizedElement& a, const LocalizedElement& b) {
        a.check(b);
        LocalizedElement out = a;
        for (const auto& [l, c] : b.terms_) out.add_term(l, -c);
        return out;
    }

    friend LocalizedElement operator*(const LocalizedElement& a, const LocalizedElement& b) {
        a.check(b);
        const AlgebraContext ctx = a.th_.algebra_context();
        LocalizedElement out(a.th_);
        for (const auto& [la, f] : a.terms_) {
            for (const auto& [mu, g] : b.terms_) {
                RatFunc coeff = f;
                if (ctx.mode == Mode::classical) {
                    coeff *= g;
                } else {
                    coeff *= g.map([&](const Poly& p) { return shift_substitute(p, la, ctx); });
                }
                coeff *= RatFunc(structure_factor(ctx, la, mu));
                IntVec sum(ctx.rank);
                for (int i = 0; i < ctx.rank; ++i) sum[i] = la.coords[i] + mu.coords[i];
                out.add_term(Coweight{sum}, coeff);
            }
        }
        return out;
    }

    LocalizedElement& operator*=(const Rational& c) {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [l, v] : terms_) v *= RatFunc::constant(v.nvars(), c);
        return *this;
    }
    friend LocalizedElement operator*(LocalizedElement a, const Rational& c) { return a *= c; }

    bool operator==(const LocalizedElement& o) const {
        return th_ == o.th_ && terms_ == o.terms_;
    }
    bool operator!=(const LocalizedElement& o) const { return !(*this == o); }

    // All coefficients polynomial (denominators fully cancelled)?
    bool is_integral() const {
        for (const auto& [l, c] : terms_)
            if (!c.is_polynomial()) return false;
        return true;
    }

    AbelianElement to_abelian() const {
        AbelianElement out(th_.algebra_context());
        for (const auto& [l, c] : terms_) out.set_term(l, c.as_polynomial());
        return out;
    }

private:
    void check(const LocalizedElement& o) const {
        if (th_ != o.th_) throw SchemaError("LocalizedElement: context mismatch");
    }

    Theory th_;
    std::map<Coweight, RatFunc> terms_;
};

// w sends f r^lambda to (wf) r^{w lambda}.
inline LocalizedElement weyl_act_element(const LocalizedElement& x, const WeylElement& w) {
    const AlgebraContext ctx = x.theory().algebra_context();
    LocalizedElement out(x.theory());
    for (const auto& [l, c] : x.terms()) {
        RatFunc wc = c.map([&](const Poly& p) { return weyl_act(p, w, ctx); });
        out.add_term(w.act(l), wc);
    }
    return out;
}

inline bool weyl_invariant(const LocalizedElement& x) {
    for (std::size_t i = 0; i < x.theory().rd.num_simple(); ++i)
        if (weyl_act_element(x, x.theory().rd.simple_reflection(i)) != x) return false;
    return true;
}

// Equivariant Euler class of the tangent space of Gr^lambda at the orbit
// point lambda': product over roots alpha with <alpha, lambda'> > 0 of the
// tangent weights alpha + (n + 1/2) hbar, n = 0 .. <alpha,lambda'> - 1;
// classical mode sets hbar = 0. The half shift matches the weight-1/2 loop
// action carried by the matter factors: with it, z* of lifted fundamental
// classes lands in the integral difference algebra, which pins the
// convention (hbar -> 0 and associativity hold either way).
inline Poly orbit_euler_class(const Theory& th, const Coweight& lambda_dominant,
                              const Coweight& orbit_point) {
    const AlgebraContext ctx = th.algebra_context();
    bool in_orbit = false;
    for (const auto& [p, w] : th.rd.weyl_orbit(lambda_dominant))
        if (p == orbit_point) in_orbit = true;
    if (!in_orbit) throw SchemaError("orbit_euler_class: point not in the Weyl orbit");
    Poly out = ctx.one();
    for (const auto& alpha : th.rd.all_roots()) {
        long long k = pairing(alpha, orbit_point);
        if (k <= 0) continue;
        Poly form = Poly::linear_form(ctx.nvars(), alpha.coords);
        if (th.mode == Mode::classical) {
            out *= form.pow((unsigned)k);
        } else {
            for (long long n = 0; n < k; ++n)
                out *= form + ctx.hbar() * Rational(2 * n + 1, 2);
        }
    }
    return out;
}

// Gr^lambda is a closed orbit iff no dominant mu < lambda exists in the
// dominance order (lambda minuscule or zero).
inline bool is_closed_orbit(const RootDatum& rd, const Coweight& lambda_dominant) {
    // enumerate mu = lambda - sum c_i coroot_i with c_i >= 0 in a small box
    std::size_t s = rd.num_simple();
    if (s == 0) return true;
    long long bound = 0;
    for (auto x : lambda_dominant.coords) bound += x < 0 ? -x : x;
    bound = 2 * bound + 2;
    std::vector<long long> c(s, 0);
    while (true) {
        bool all_zero = std::all_of(c.begin(), c.end(), [](long long x) { return x == 0; });
        if (!all_zero) {
            IntVec mu = lambda_dominant.coords;
            for (std::size_t i = 0; i < s; ++i)
                for (int j = 0; j < rd.rank(); ++j)
                    mu[j] -= c[i] * rd.simple_coroots()[i].coords[j];
            if (rd.is_dominant(Coweight{mu})) return false;
        }
        std::size_t i = 0;
        while (i < s && ++c[i] > bound) c[i++] = 0;
        if (i == s) break;
    }
    return true;
}

// (iota_*)^{-1} f [R_lambda] for a closed orbit.
inline LocalizedElement minuscule_lift(const Poly& f, const Coweight& lambda, const Theory& th) {
    const AlgebraContext ctx = th.algebra_context();
    if (f.nvars() != ctx.nvars()) throw SchemaError("minuscule_lift: variable context mismatch");
    if (!th.rd.is_dominant(lambda)) throw SchemaError("minuscule_lift: lambda must be dominant");
    if (!is_closed_orbit(th.rd, lambda))
        throw UnsupportedError("minuscule_lift: Gr^lambda is not a closed orbit");
    for (const auto* w : th.rd.stabilizer(lambda))
        if (weyl_act(f, *w, ctx) != f)
            throw SchemaError("minuscule_lift: coefficient is not stabilizer-invariant");
    LocalizedElement out(th);
    for (const auto& [point, w] : th.rd.weyl_orbit(lambda)) {
        Poly wf = weyl_act(f, w, ctx);
        Poly e = orbit_euler_class(th, lambda, point);
        out.add_term(point, RatFunc(wf, e));
    }
    return out;
}

// z^* on localized elements: multiply the coefficient of r^lambda by the
// matter factors of the entries being removed (all by default).
inline LocalizedElement partial_zstar(const LocalizedElement& x,
                                      const std::vector<std::size_t>& entries_to_remove) {
    const AlgebraContext ctx = x.theory().algebra_context();
    if (ctx.mode == Mode::flavored)
        throw UnsupportedError("zstar: flavored mode not supported");
    Theory out_th = x.theory();
    std::vector<std::size_t> sorted = entries_to_remove;
    std::sort(sorted.rbegin(), sorted.rend());
    for (auto i : sorted) out_th.matter.entries.erase(out_th.matter.entries.begin() + i);
    LocalizedElement out(out_th);
    for (const auto& [l, c] : x.terms()) {
        Poly factor = ctx.one();
        for (auto i : entries_to_remove) {
            const MatterEntry& me = x.theory().matter.entries[i];
            long long k = pairing(me.weight, l);
            if (k >= 0) continue;
            Poly xi = ctx.matter_form(i);
            Poly one_entry = ctx.one();
            if (ctx.mode == Mode::classical) {
                one_entry = xi.pow((unsigned)(-k));
            } else {
                for (long long j = 0; j < -k; ++j)
                    one_entry *= xi + ctx.hbar() * Rational(2 * k + 2 * j + 1, 2);
            }
            factor *= one_entry.pow((unsigned)me.mult);
        }
        out.add_term(l, c * RatFunc(factor));
    }
    return out;
}

inline LocalizedElement zstar(const LocalizedElement& x) {
    std::vector<std::size_t> all(x.theory().matter.entries.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return partial_zstar(x, all);
}

// ---- rank-1 Coulomb branches ------------------------------------------

struct HypersurfaceData {
    enum class Family { D, D0 };  // xi^2 - delta eta^2 = c delta^(N-1), resp. = c eta
    Family family = Family::D;
    long long N = 0;
    Rational c;
};

inline std::string family_name(HypersurfaceData::Family f) {
    return f == HypersurfaceData::Family::D ? "D" : "D0";
}

namespace detail_rank1 {

enum class Rank1Kind { sl2, pgl2 };

inline Rank1Kind classify_rank1(const RootDatum& rd) {
    if (rd.rank() == 1 && rd.num_simple() == 1) {
        if (rd.simple_roots()[0] == Weight{{2}} && rd.simple_coroots()[0] == Coweight{{1}})
            return Rank1Kind::sl2;
        if (rd.simple_roots()[0] == Weight{{1}} && rd.simple_coroots()[0] == Coweight{{2}})
            return Rank1Kind::pgl2;
    }
    throw UnsupportedError("rank1_branch: root datum is not SL(2) or PGL(2)");
}

}  // namespace detail_rank1

inline HypersurfaceData rank1_branch(const RootDatum& rd, const MatterContent& matter_in) {
    using detail_rank1::Rank1Kind;
    Rank1Kind kind = detail_rank1::classify_rank1(rd);
    MatterContent matter = matter_in;
    matter.normalize();
    Theory th{rd, matter, Mode::classical};
    const AlgebraContext ctx = th.algebra_context();
    Coweight l0{{1}};

    long long weight_sum = 0;  // sum |<chi, lambda_0>| dim N(chi)
    for (const auto& e : matter.entries) {
        long long k = pairing(e.weight, l0);
        weight_sum += (k < 0 ? -k : k) * e.mult;
    }
    if (weight_sum % 2 != 0)
        throw BadTheoryError("rank1_branch: half-integral N (inconsistent matter)");

    HypersurfaceData out;
    if (kind == Rank1Kind::pgl2) {
        out.N = weight_sum / 2 + 1;
        // eta = [R_{lambda0}], xi = t [R_{lambda0}], delta = t^2
        LocalizedElement eta = minuscule_lift(ctx.one(), l0, th);
        LocalizedElement xi = minuscule_lift(ctx.t(0), l0, th);
        LocalizedElement residual = xi * xi - LocalizedElement::monomial(
            th, Coweight{{0}}, RatFunc(ctx.t(0) * ctx.t(0))) * eta * eta;
        // expect 4 r^{lambda0} r^{-lambda0} = 4 prod (<chi,l0> t)^{|<chi,l0>|}
        Poly expect = ctx.scalar(4);
        for (const auto& e : matter.entries) {
            long long k = pairing(e.weight, l0);
            long long ak = k < 0 ? -k : k;
            expect *= (ctx.t(0) * Rational(k)).pow((unsigned)ak).pow((unsigned)e.mult);
        }
        if (residual.terms().size() != 1 ||
            residual.coeff(Coweight{{0}}) != RatFunc(expect))
            throw InvariantError("rank1_branch: localized computation disagrees with the relation");
        // a monomial c * delta^(N-1)
        Poly res = residual.coeff(Coweight{{0}}).as_polynomial();
        if (res.num_terms() != 1) throw InvariantError("rank1_branch: residual is not a monomial");
        auto [mono, c] = res.leading();
        if (mono[0] % 2 != 0 || (long long)mono[0] != 2 * (out.N - 1))
            throw InvariantError("rank1_branch: exponent disagrees with the closed formula for N");
        out.family = HypersurfaceData::Family::D;
        out.c = c;
        return out;
    }

    // SL(2): Gr^{lambda_0} is not closed; use the normalized abelianized
    // images eta -> t^(N-2)(a + (-1)^N a^{-1}), xi -> t^(N-1)(a - (-1)^N a^{-1})
    // (a the coordinate r^{lambda_0} of the dual torus), with the N = 0
    // exception eta -> t^{-2}(a + a^{-1} - 2).
    out.N = weight_sum / 2;
    Theory t0{rd, MatterContent{}, Mode::classical};
    const AlgebraContext c0 = t0.algebra_context();
    long long sgn = out.N % 2 == 0 ? 1 : -1;
    auto mono = [&](long long apow, const RatFunc& c) {
        return LocalizedElement::monomial(t0, Coweight{{apow}}, c);
    };
    Poly tv = c0.t(0);
    LocalizedElement eta(t0), xi(t0);
    if (out.N == 0) {
        RatFunc tm2(c0.one(), tv * tv);
        eta = mono(1, tm2) + mono(-1, tm2) + mono(0, -tm2 * Rational(2));
        RatFunc tm1(c0.one(), tv);
        xi = mono(1, tm1) + mono(-1, -tm1);
    } else {
        auto tpow = [&](long long k) {
            return k >= 0 ? RatFunc(tv.pow((unsigned)k))
                          : RatFunc(c0.one(), tv.pow((unsigned)(-k)));
        };
        eta = mono(1, tpow(out.N - 2)) + mono(-1, tpow(out.N - 2) * Rational(sgn));
        xi = mono(1, tpow(out.N - 1)) + mono(-1, -tpow(out.N - 1) * Rational(sgn));
    }
    if (!weyl_invariant(eta) || !weyl_invariant(xi))
        throw InvariantError("rank1_branch: normalized lifts are not Weyl-invariant");
    LocalizedElement delta = mono(0, RatFunc(tv * tv));
    LocalizedElement residual = xi * xi - delta * eta * eta;
    if (out.N == 0) {
        // xi^2 - delta eta^2 = 4 eta
        LocalizedElement expect = eta;
        expect *= Rational(4);
        if (residual != expect)
            throw InvariantError("rank1_branch: N = 0 relation failed");
        out.family = HypersurfaceData::Family::D0;
        out.c = 4;
        return out;
    }
    if (residual.terms().size() != 1)
        throw InvariantError("rank1_branch: residual is not a monomial");
    RatFunc res = residual.coeff(Coweight{{0}});
    Poly resp = res.as_polynomial();
    if (resp.num_terms() != 1) throw InvariantError("rank1_branch: residual is not a monomial");
    auto [m, c] = resp.leading();
    if ((long long)m[0] != 2 * (out.N - 1))
        throw InvariantError("rank1_branch: exponent disagrees with the closed formula for N");
    out.family = HypersurfaceData::Family::D;
    out.c = c;
    return out;
}

// ---- PGL(2) adjoint: biregular model (t x T^vee)/W ---------------------

struct AdjointCheckReport {
    bool zstar_images_match = false;   // eta, xi land on the model generators
    bool relation_holds = false;       // xi^2 - delta eta^2 + 4 delta = 0
    bool generation_verified = false;  // invariants reduce to C[delta,eta,xi]
};

namespace detail_adjoint {

// W-invariant elements of C[t, a^{+-1}] are spanned by t^{2j} and
// t^m (a^k + (-1)^m a^{-k}); reduce such an element against the generators
// delta = t^2, eta = -(a + a^{-1}), xi = -t(a - a^{-1}) by leading-term
// elimination in (k, m)-lexicographic order. Elements are maps
// (a-power, t-power) -> coefficient.
using LaurentMap = std::map<std::pair<long long, long long>, Rational>;

inline void add_entry(LaurentMap& m, long long k, long long t, const Rational& c) {
    if (c == 0) return;
    auto key = std::make_pair(k, t);
    auto it = m.find(key);
    if (it == m.end()) {
        m.emplace(key, c);
    } else {
        it->second += c;
        if (it->second == 0) m.erase(it);
    }
}

inline LaurentMap multiply(const LaurentMap& a, const LaurentMap& b) {
    LaurentMap out;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b)
            add_entry(out, ka.first + kb.first, ka.second + kb.second, ca * cb);
    return out;
}

inline LaurentMap power(const LaurentMap& a, long long n) {
    LaurentMap out{{{0, 0}, Rational(1)}};
    for (long long i = 0; i < n; ++i) out = multiply(out, a);
    return out;
}

inline bool reduce_to_zero(LaurentMap x, const LaurentMap& delta, const LaurentMap& eta,
                           const LaurentMap& xi) {
    for (int guard = 0; guard < 4096; ++guard) {
        if (x.empty()) return true;
        // leading term: maximal (a-power, t-power)
        auto it = std::max_element(x.begin(), x.end(), [](const auto& p, const auto& q) {
            return p.first < q.first;
        });
        auto [k, m] = it->first;
        Rational c = it->second;
        if (k < 0) return false;  // not W-invariant normal form
        long long q = m % 2;      // xi exponent
        if (k < q || (m - q) % 2 != 0) return false;
        long long r = (m - q) / 2;  // delta exponent
        long long p = k - q;        // eta exponent
        LaurentMap mono = multiply(power(delta, r), multiply(power(eta, p), power(xi, q)));
        // leading coefficient of the monomial at (k, m)
        auto lead = mono.find({k, m});
        if (lead == mono.end()) return false;
        Rational f = c / lead->second;
        for (const auto& [key, cm] : mono) add_entry(x, key.first, key.second, -f * cm);
    }
    return false;
}

}  // namespace detail_adjoint

inline AdjointCheckReport adjoint_isomorphism_check(const RootDatum& rd,
                                                    const MatterContent& matter_in) {
    if (detail_rank1::classify_rank1(rd) != detail_rank1::Rank1Kind::pgl2)
        throw UnsupportedError("adjoint check: PGL(2) only");
    MatterContent matter = matter_in;
    matter.normalize();
    MatterContent adjoint{{{Weight{{1}}, 1}, {Weight{{-1}}, 1}}};
    adjoint.normalize();
    if (!(matter == adjoint))
        throw UnsupportedError("adjoint check: matter is not the adjoint representation");

    Theory th{rd, matter, Mode::classical};
    const AlgebraContext ctx = th.algebra_context();
    Coweight l0{{1}};
    AdjointCheckReport rep;

    LocalizedElement eta = minuscule_lift(ctx.one(), l0, th);
    LocalizedElement xi = minuscule_lift(ctx.t(0), l0, th);
    LocalizedElement zeta = zstar(eta), zxi = zstar(xi);

    // model generators, up to the eta-embedding sign: eta -> -(a + a^{-1}),
    // xi -> -t(a - a^{-1})
    Theory t0{rd, MatterContent{}, Mode::classical};
    const AlgebraContext c0 = t0.algebra_context();
    Poly tv = c0.t(0);
    LocalizedElement model_eta =
        LocalizedElement::monomial(t0, Coweight{{1}}, RatFunc(-c0.one())) +
        LocalizedElement::monomial(t0, Coweight{{-1}}, RatFunc(-c0.one()));
    LocalizedElement model_xi =
        LocalizedElement::monomial(t0, Coweight{{1}}, RatFunc(-tv)) +
        LocalizedElement::monomial(t0, Coweight{{-1}}, RatFunc(tv));
    rep.zstar_images_match = (zeta == model_eta) && (zxi == model_xi);

    LocalizedElement delta = LocalizedElement::monomial(t0, Coweight{{0}}, RatFunc(tv * tv));
    LocalizedElement residual = zxi * zxi - delta * zeta * zeta + delta * Rational(4);
    rep.relation_holds = residual.is_zero();

    // generation: every W-invariant basis element t^m (a^k + (-1)^m a^{-k})
    // and t^{2j} reduces to zero against delta, eta, xi
    using detail_adjoint::LaurentMap;
    LaurentMap d{{{0, 2}, Rational(1)}};
    LaurentMap e{{{1, 0}, Rational(-1)}, {{-1, 0}, Rational(-1)}};
    LaurentMap x{{{1, 1}, Rational(-1)}, {{-1, 1}, Rational(1)}};
    bool ok = true;
    for (long long j = 0; j <= 4 && ok; ++j) {
        LaurentMap inv{{{0, 2 * j}, Rational(1)}};
        ok = detail_adjoint::reduce_to_zero(inv, d, e, x);
    }
    for (long long k = 1; k <= 5 && ok; ++k) {
        for (long long m = 0; m <= 6 && ok; ++m) {
            LaurentMap inv;
            detail_adjoint::add_entry(inv, k, m, Rational(1));
            detail_adjoint::add_entry(inv, -k, m, Rational(m % 2 == 0 ? 1 : -1));
            ok = detail_adjoint::reduce_to_zero(inv, d, e, x);
        }
    }
    rep.generation_verified = ok;
    return rep;
}

}  // namespace ck
