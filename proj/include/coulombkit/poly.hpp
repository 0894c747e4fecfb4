#pragma once

// Sparse multivariate polynomials with rational coefficients.
//
// A Poly is a map from monomials to nonzero coefficients kept in graded
// lexicographic order. Internally a monomial is packed into a single 128-bit
// key (total degree in the top byte, one byte per exponent below it), so the
// term order is plain integer comparison and a monomial product is integer
// addition. The variable set is fixed by a count only; the algebra layer
// interprets index 0..rank-1 as t1..tr, index rank as hbar, and the rest as
// b1..bm. Up to 15 variables and total degree 255 (far beyond desk scale).

#include "coulombkit/errors.hpp"
#include "coulombkit/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ck {

using Exponents = std::vector<unsigned>;

struct GradedLexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        unsigned da = 0, db = 0;
        for (unsigned e : a) da += e;
        for (unsigned e : b) db += e;
        if (da != db) return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

namespace detail {

using MonoKey = unsigned __int128;

constexpr std::size_t kMaxVars = 15;

inline MonoKey pack_mono(const Exponents& e) {
    if (e.size() > kMaxVars) throw SchemaError("Poly: too many variables (max 15)");
    unsigned deg = 0;
    for (unsigned x : e) {
        if (x > 255) throw InvariantError("Poly: exponent overflow");
        deg += x;
    }
    if (deg > 255) throw InvariantError("Poly: total degree overflow");
    MonoKey k = (MonoKey)deg << 120;
    for (std::size_t i = 0; i < e.size(); ++i)
        k |= (MonoKey)e[i] << (112 - 8 * i);
    return k;
}

inline Exponents unpack_mono(MonoKey k, std::size_t nvars) {
    Exponents e(nvars);
    for (std::size_t i = 0; i < nvars; ++i)
        e[i] = (unsigned)((k >> (112 - 8 * i)) & 0xff);
    return e;
}

inline unsigned mono_degree(MonoKey k) { return (unsigned)(k >> 120); }

inline unsigned mono_exp(MonoKey k, std::size_t i) {
    return (unsigned)((k >> (112 - 8 * i)) & 0xff);
}

// true when a - b is well-defined fieldwise (b divides a as monomials)
inline bool mono_divides(MonoKey b, MonoKey a, std::size_t nvars) {
    for (std::size_t i = 0; i < nvars; ++i)
        if (mono_exp(b, i) > mono_exp(a, i)) return false;
    return true;
}

}  // namespace detail

class Poly {
public:
    using Key = detail::MonoKey;
    using PackedMap = std::map<Key, Rational>;
    using TermMap = std::map<Exponents, Rational, GradedLexLess>;

    Poly() : nvars_(0) {}
    explicit Poly(std::size_t nvars) : nvars_(nvars) { check_nvars(); }

    static Poly constant(std::size_t nvars, const Rational& c) {
        Poly p(nvars);
        if (c != 0) p.terms_.emplace(0, c);
        return p;
    }

    static Poly variable(std::size_t nvars, std::size_t i, unsigned power = 1) {
        if (i >= nvars) throw std::invalid_argument("Poly::variable: index out of range");
        Poly p(nvars);
        Exponents e(nvars, 0);
        e[i] = power;
        p.terms_.emplace(detail::pack_mono(e), Rational(1));
        return p;
    }

    // Sum of c_i * x_i from a coefficient vector.
    template <typename Int>
    static Poly linear_form(std::size_t nvars, const std::vector<Int>& coeffs) {
        if (coeffs.size() > nvars) throw std::invalid_argument("Poly::linear_form: too many coefficients");
        Poly p(nvars);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (coeffs[i] == 0) continue;
            Exponents e(nvars, 0);
            e[i] = 1;
            p.terms_.emplace(detail::pack_mono(e), Rational(coeffs[i]));
        }
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const PackedMap& packed() const { return terms_; }
    std::size_t num_terms() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    // unpacked copy, mainly for tests and cold paths
    TermMap terms() const {
        TermMap out;
        for (const auto& [k, c] : terms_) out.emplace(detail::unpack_mono(k, nvars_), c);
        return out;
    }

    template <typename F>
    void for_each_term(F&& f) const {
        for (const auto& [k, c] : terms_) f(detail::unpack_mono(k, nvars_), c);
    }

    bool is_constant() const {
        if (terms_.empty()) return true;
        return terms_.size() == 1 && terms_.begin()->first == 0;
    }

    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_constant()) throw std::logic_error("Poly::constant_value: not a constant");
        return terms_.begin()->second;
    }

    unsigned total_degree() const {
        if (terms_.empty()) return 0;
        return detail::mono_degree(terms_.rbegin()->first);
    }

    unsigned degree_in(std::size_t var) const {
        unsigned d = 0;
        for (const auto& [k, c] : terms_) d = std::max(d, detail::mono_exp(k, var));
        return d;
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        return detail::mono_degree(terms_.begin()->first) ==
               detail::mono_degree(terms_.rbegin()->first);
    }

    std::pair<Exponents, Rational> leading() const {
        if (terms_.empty()) throw std::logic_error("Poly::leading: zero polynomial");
        return {detail::unpack_mono(terms_.rbegin()->first, nvars_), terms_.rbegin()->second};
    }

    Poly operator-() const {
        Poly r(*this);
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    Poly& operator+=(const Poly& o) {
        check_vars(o);
        for (const auto& [k, c] : o.terms_) add_key(k, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        check_vars(o);
        for (const auto& [k, c] : o.terms_) add_key(k, -c);
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_vars(b);
        Poly r(a.nvars_);
        if (a.is_zero() || b.is_zero()) return r;
        if (detail::mono_degree(a.terms_.rbegin()->first) +
                detail::mono_degree(b.terms_.rbegin()->first) > 255)
            throw InvariantError("Poly: total degree overflow in product");
        if (a.terms_.size() * b.terms_.size() <= 1024) {
            for (const auto& [ka, ca] : a.terms_)
                for (const auto& [kb, cb] : b.terms_) r.add_key(ka + kb, ca * cb);
            return r;
        }
        // large product: accumulate into a flat buffer, then sort and merge
        std::vector<std::pair<Key, Rational>> buf;
        buf.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) buf.emplace_back(ka + kb, ca * cb);
        std::sort(buf.begin(), buf.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        auto hint = r.terms_.end();
        std::size_t i = 0;
        while (i < buf.size()) {
            Key k = buf[i].first;
            Rational acc = std::move(buf[i].second);
            for (++i; i < buf.size() && buf[i].first == k; ++i) acc += buf[i].second;
            if (acc != 0) hint = r.terms_.emplace_hint(hint, k, std::move(acc));
        }
        return r;
    }

    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly& operator*=(const Rational& c) {
        if (c == 0) {
            terms_.clear();
        } else {
            for (auto& [e, v] : terms_) v *= c;
        }
        return *this;
    }
    friend Poly operator*(Poly p, const Rational& c) { return p *= c; }
    friend Poly operator*(const Rational& c, Poly p) { return p *= c; }

    Poly pow(unsigned k) const {
        Poly r = constant(nvars_, 1);
        if (k == 0) return r;
        Poly base = *this;
        while (true) {
            if (k & 1) r *= base;
            k >>= 1;
            if (!k) break;
            base *= base;
        }
        return r;
    }

    bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // Map each variable to a polynomial (all images over the same variable set).
    Poly substitute(const std::vector<Poly>& images) const {
        if (images.size() != nvars_) throw std::invalid_argument("Poly::substitute: wrong image count");
        std::size_t out_vars = nvars_ ? images[0].nvars() : 0;
        std::vector<std::vector<Poly>> powers(nvars_);
        auto power_of = [&](std::size_t i, unsigned k) -> const Poly& {
            auto& tab = powers[i];
            if (tab.empty()) tab.push_back(constant(images[i].nvars(), 1));
            while (tab.size() <= k) tab.push_back(tab.back() * images[i]);
            return tab[k];
        };
        Poly r(out_vars);
        for (const auto& [k, c] : terms_) {
            Poly term = constant(out_vars, c);
            for (std::size_t i = 0; i < nvars_; ++i) {
                unsigned e = detail::mono_exp(k, i);
                if (e) term *= power_of(i, e);
            }
            r += term;
        }
        return r;
    }

    // Set one variable to a rational constant (the variable stays in the
    // context; its exponent collapses).
    Poly evaluate_var(std::size_t var, const Rational& value) const {
        Poly r(nvars_);
        for (const auto& [k, c] : terms_) {
            unsigned e = detail::mono_exp(k, var);
            Rational coeff = c;
            if (e) {
                Rational v(1);
                for (unsigned j = 0; j < e; ++j) v *= value;
                coeff *= v;
            }
            Key k2 = k - ((Key)e << (112 - 8 * var)) - ((Key)e << 120);
            r.add_key(k2, coeff);
        }
        return r;
    }

    // Exact quotient, or nullopt when the division does not come out even.
    static std::optional<Poly> divide_exact(const Poly& p, const Poly& q) {
        p.check_vars(q);
        if (q.is_zero()) throw std::invalid_argument("Poly::divide_exact: division by zero");
        Poly rem = p, quot(p.nvars_);
        Key lq = q.terms_.rbegin()->first;
        const Rational& cq = q.terms_.rbegin()->second;
        while (!rem.is_zero()) {
            Key lr = rem.terms_.rbegin()->first;
            if (!detail::mono_divides(lq, lr, p.nvars_)) return std::nullopt;
            Key diff = lr - lq;  // fieldwise safe after the divides check
            Rational cf = rem.terms_.rbegin()->second / cq;
            quot.add_key(diff, cf);
            // rem -= cf * x^diff * q
            for (const auto& [kq, cq2] : q.terms_) rem.add_key(kq + diff, -cf * cq2);
        }
        return quot;
    }

    bool divides(const Poly& p) const { return divide_exact(p, *this).has_value(); }

    // content * primitive_part() == *this; the primitive part has coprime
    // integer coefficients and positive leading coefficient.
    Rational content() const {
        if (terms_.empty()) return Rational(0);
        BigInt num_gcd = 0, den_lcm = 1;
        for (const auto& [e, c] : terms_) {
            num_gcd = gcd_int(num_gcd, numerator(c));
            den_lcm = lcm_int(den_lcm, denominator(c));
        }
        Rational content(num_gcd, den_lcm);
        if (terms_.rbegin()->second < 0) content = -content;
        return content;
    }

    Poly primitive_part() const {
        if (terms_.empty()) return *this;
        Poly r = *this;
        Rational c = content();
        for (auto& [e, v] : r.terms_) v /= c;
        return r;
    }

    static Poly gcd(const Poly& a, const Poly& b);

    std::string to_string(const std::vector<std::string>& var_names) const;

    void add_term(const Exponents& e, const Rational& c) {
        if (c == 0) return;
        add_key(detail::pack_mono(e), c);
    }

    void add_key(Key k, const Rational& c) {
        if (c == 0) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

private:
    void check_nvars() const {
        if (nvars_ > detail::kMaxVars) throw SchemaError("Poly: too many variables (max 15)");
    }
    void check_vars(const Poly& o) const {
        if (nvars_ != o.nvars_)
            throw std::invalid_argument("Poly: variable context mismatch");
    }

    std::size_t nvars_;
    PackedMap terms_;
};

namespace detail {

// View of p as a univariate polynomial in x_var with Poly coefficients.
inline std::map<unsigned, Poly> coefficients_in(const Poly& p, std::size_t var) {
    std::map<unsigned, Poly> out;
    for (const auto& [k, c] : p.packed()) {
        unsigned d = mono_exp(k, var);
        MonoKey k2 = k - ((MonoKey)d << (112 - 8 * var)) - ((MonoKey)d << 120);
        auto [it, inserted] = out.try_emplace(d, Poly(p.nvars()));
        it->second.add_key(k2, c);
    }
    return out;
}

// gcd of the coefficients of p viewed in x_var (the content over Q[rest]).
inline Poly content_in(const Poly& p, std::size_t var) {
    Poly g(p.nvars());
    for (const auto& [d, c] : coefficients_in(p, var)) g = Poly::gcd(g, c);
    return g;
}

// Pseudo-remainder of a by b in the variable x_var.
inline Poly pseudo_rem(Poly a, const Poly& b, std::size_t var) {
    auto bc = coefficients_in(b, var);
    unsigned db = bc.rbegin()->first;
    const Poly& lb = bc.rbegin()->second;
    while (true) {
        if (a.is_zero()) return a;
        auto ac = coefficients_in(a, var);
        unsigned da = ac.rbegin()->first;
        if (da < db) return a;
        const Poly la = ac.rbegin()->second;
        Poly shift = da == db ? Poly::constant(a.nvars(), 1)
                              : Poly::variable(a.nvars(), var, da - db);
        a = a * lb - b * shift * la;
    }
}

}  // namespace detail

inline Poly Poly::gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.is_zero() ? b : b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    if (a.is_constant() || b.is_constant()) return constant(a.nvars(), 1);

    // main variable: highest index appearing in either operand
    std::size_t var = 0;
    bool found = false;
    for (std::size_t i = a.nvars(); i-- > 0;) {
        if (a.degree_in(i) > 0 || b.degree_in(i) > 0) {
            var = i;
            found = true;
            break;
        }
    }
    if (!found) return constant(a.nvars(), 1);

    if (a.degree_in(var) == 0 || b.degree_in(var) == 0) {
        // one operand is free of the main variable: gcd divides its content
        const Poly& free = a.degree_in(var) == 0 ? a : b;
        const Poly& other = a.degree_in(var) == 0 ? b : a;
        return gcd(free, detail::content_in(other, var));
    }

    Poly ca = detail::content_in(a, var);
    Poly cb = detail::content_in(b, var);
    Poly cont = gcd(ca, cb);

    Poly p = divide_exact(a, ca).value();
    Poly q = divide_exact(b, cb).value();
    if (p.degree_in(var) < q.degree_in(var)) std::swap(p, q);
    while (!q.is_zero()) {
        Poly r = detail::pseudo_rem(p, q, var);
        p = std::move(q);
        if (r.is_zero()) {
            q = Poly(a.nvars());
        } else {
            q = divide_exact(r, detail::content_in(r, var)).value();
        }
    }
    return (cont * p).primitive_part();
}

inline std::string Poly::to_string(const std::vector<std::string>& var_names) const {
    if (var_names.size() != nvars_)
        throw std::invalid_argument("Poly::to_string: wrong number of variable names");
    if (terms_.empty()) return "0";
    std::string out;
    // leading term first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Rational& c = it->second;
        Rational abs_c = c < 0 ? Rational(-c) : c;
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? "-" : "+";
        }
        std::string mono;
        for (std::size_t i = 0; i < nvars_; ++i) {
            unsigned e = detail::mono_exp(it->first, i);
            if (!e) continue;
            if (!mono.empty()) mono += "*";
            mono += var_names[i];
            if (e > 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty()) {
            out += ck::to_string(abs_c);
        } else if (abs_c == 1) {
            out += mono;
        } else {
            out += ck::to_string(abs_c) + "*" + mono;
        }
    }
    return out;
}

}  // namespace ck
