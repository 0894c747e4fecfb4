#pragma once

// Rational functions in canonical form: gcd(num, den) = 1, denominator
// integer-primitive with positive leading coefficient. Equality of canonical
// forms is plain structural equality.

#include "coulombkit/errors.hpp"
#include "coulombkit/poly.hpp"

#include <string>

namespace ck {

class RatFunc {
public:
    RatFunc() = default;

    explicit RatFunc(const Poly& num)
        : num_(num), den_(Poly::constant(num.nvars(), 1)) {}

    RatFunc(const Poly& num, const Poly& den) : num_(num), den_(den) {
        if (den_.is_zero()) throw SchemaError("RatFunc: zero denominator");
        normalize();
    }

    static RatFunc constant(std::size_t nvars, const Rational& c) {
        return RatFunc(Poly::constant(nvars, c));
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    std::size_t nvars() const { return num_.nvars(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_ == Poly::constant(den_.nvars(), 1); }

    const Poly& as_polynomial() const {
        if (!is_polynomial()) throw InvariantError("RatFunc: denominator did not cancel");
        return num_;
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.num_.is_zero()) throw SchemaError("RatFunc: division by zero");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend RatFunc operator*(const RatFunc& a, const Poly& p) { return a * RatFunc(p); }
    friend RatFunc operator*(const Poly& p, const RatFunc& a) { return RatFunc(p) * a; }
    friend RatFunc operator*(const RatFunc& a, const Rational& c) {
        return RatFunc(a.num_ * c, a.den_);
    }
    friend RatFunc operator*(const Rational& c, const RatFunc& a) { return a * c; }

    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    // Apply a polynomial map to numerator and denominator.
    template <typename F>
    RatFunc map(F&& f) const {
        return RatFunc(f(num_), f(den_));
    }

    std::string to_string(const std::vector<std::string>& names) const {
        if (is_polynomial()) return num_.to_string(names);
        std::string n = num_.to_string(names);
        std::string d = den_.to_string(names);
        return "(" + n + ")/(" + d + ")";
    }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = Poly::constant(den_.nvars(), 1);
            return;
        }
        Poly g = Poly::gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = Poly::divide_exact(num_, g).value();
            den_ = Poly::divide_exact(den_, g).value();
        }
        Rational c = den_.content();
        den_ = den_.primitive_part();
        num_ *= 1 / c;
    }

    Poly num_, den_;
};

}  // namespace ck
