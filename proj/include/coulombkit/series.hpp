#pragma once

// Truncated formal series in t^(1/2) with exact rational coefficients.
// Exponents are stored doubled (e counts powers of t^(1/2)), so t^(5/2) is
// e = 5 and t^3 is e = 6; monopole dimensions Delta live in (1/2)Z, which
// makes t^(2*Delta) land on the integer grid but keeps the API uniform.

#include "coulombkit/errors.hpp"
#include "coulombkit/rational.hpp"

#include <map>
#include <string>
#include <utility>

namespace ck {

class TruncatedSeries {
public:
    // order2: coefficients are tracked for exponents e <= order2 (doubled units)
    explicit TruncatedSeries(long order2) : order2_(order2) {}

    static TruncatedSeries zero(long order2) { return TruncatedSeries(order2); }

    static TruncatedSeries constant(long order2, const Rational& c) {
        TruncatedSeries s(order2);
        s.add(0, c);
        return s;
    }

    static TruncatedSeries monomial(long order2, long e2, const Rational& c) {
        TruncatedSeries s(order2);
        s.add(e2, c);
        return s;
    }

    // 1 / (1 - t^(e2/2)), e2 > 0
    static TruncatedSeries geometric(long order2, long e2) {
        if (e2 <= 0) throw InvariantError("geometric series requires positive exponent");
        TruncatedSeries s(order2);
        for (long e = 0; e <= order2; e += e2) s.add(e, Rational(1));
        return s;
    }

    long order2() const { return order2_; }
    const std::map<long, Rational>& coeffs() const { return coeffs_; }

    Rational coeff(long e2) const {
        auto it = coeffs_.find(e2);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

    void add(long e2, const Rational& c) {
        if (c == 0 || e2 > order2_) return;
        auto it = coeffs_.find(e2);
        if (it == coeffs_.end()) {
            coeffs_.emplace(e2, c);
        } else {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    long valuation2() const {
        // lowest stored exponent; 0 for the zero series
        return coeffs_.empty() ? 0 : coeffs_.begin()->first;
    }

    TruncatedSeries truncated(long order2) const {
        TruncatedSeries out(order2);
        for (const auto& [e, c] : coeffs_) out.add(e, c);
        return out;
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries out(std::min(a.order2_, b.order2_));
        for (const auto& [e, c] : a.coeffs_) out.add(e, c);
        for (const auto& [e, c] : b.coeffs_) out.add(e, c);
        return out;
    }

    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries out(std::min(a.order2_, b.order2_));
        for (const auto& [e, c] : a.coeffs_) out.add(e, c);
        for (const auto& [e, c] : b.coeffs_) out.add(e, -c);
        return out;
    }

    // Product; exact up to min(order of a, order of b) for series supported
    // in nonnegative exponents.
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        if (a.valuation2() < 0 || b.valuation2() < 0)
            throw InvariantError("TruncatedSeries multiplication requires nonnegative valuation");
        TruncatedSeries out(std::min(a.order2_, b.order2_));
        for (const auto& [ea, ca] : a.coeffs_) {
            if (ea > out.order2_) break;
            for (const auto& [eb, cb] : b.coeffs_) {
                if (ea + eb > out.order2_) break;
                out.add(ea + eb, ca * cb);
            }
        }
        return out;
    }

    TruncatedSeries& operator*=(const Rational& c) {
        if (c == 0) {
            coeffs_.clear();
        } else {
            for (auto& [e, v] : coeffs_) v *= c;
        }
        return *this;
    }
    friend TruncatedSeries operator*(TruncatedSeries s, const Rational& c) { return s *= c; }
    friend TruncatedSeries operator*(const Rational& c, TruncatedSeries s) { return s *= c; }

    // multiply by t^(e2/2)
    TruncatedSeries shifted(long e2) const {
        TruncatedSeries out(order2_);
        for (const auto& [e, c] : coeffs_) out.add(e + e2, c);
        return out;
    }

    // Reciprocal of a unit (nonzero constant term, no Laurent tail).
    TruncatedSeries inverse() const {
        if (valuation2() < 0 || coeff(0) == 0)
            throw InvariantError("TruncatedSeries::inverse: not a unit (zero constant term)");
        Rational c0 = coeff(0);
        TruncatedSeries out(order2_);
        out.add(0, 1 / c0);
        for (long e = 1; e <= order2_; ++e) {
            // c0 * out[e] + sum_{k=1..e} this[k] * out[e-k] = 0
            Rational acc(0);
            for (const auto& [k, ck] : coeffs_) {
                if (k <= 0 || k > e) continue;
                acc += ck * out.coeff(e - k);
            }
            if (acc != 0) out.add(e, -acc / c0);
        }
        return out;
    }

    bool operator==(const TruncatedSeries& o) const {
        return order2_ == o.order2_ && coeffs_ == o.coeffs_;
    }
    bool operator!=(const TruncatedSeries& o) const { return !(*this == o); }

    // agreement of coefficients up to the common truncation order
    bool same_coefficients(const TruncatedSeries& o) const {
        long bound = std::min(order2_, o.order2_);
        for (long e = coeffs_.empty() ? 0 : coeffs_.begin()->first; e <= bound; ++e)
            if (coeff(e) != o.coeff(e)) return false;
        for (const auto& [e, c] : o.coeffs_)
            if (e <= bound && coeff(e) != c) return false;
        return true;
    }

    std::string to_string() const {
        if (coeffs_.empty()) return "0";
        std::string out;
        for (const auto& [e, c] : coeffs_) {
            if (!out.empty()) out += c < 0 ? " - " : " + ";
            else if (c < 0) out += "-";
            Rational a = c < 0 ? Rational(-c) : c;
            std::string mono;
            if (e == 0) {
                mono = ck::to_string(a);
            } else {
                if (a != 1) mono = ck::to_string(a) + "*";
                mono += "t";
                if (e != 2) {
                    if (e % 2 == 0) mono += "^" + std::to_string(e / 2);
                    else mono += "^(" + std::to_string(e) + "/2)";
                }
            }
            out += mono;
        }
        return out;
    }

private:
    long order2_;
    std::map<long, Rational> coeffs_;
};

// Series refined by an integer fugacity charge: coefficient of t^(e/2) z^q.
class RefinedSeries {
public:
    explicit RefinedSeries(long order2) : order2_(order2) {}

    long order2() const { return order2_; }
    const std::map<std::pair<long, long>, Rational>& coeffs() const { return coeffs_; }

    void add(long e2, long zq, const Rational& c) {
        if (c == 0 || e2 > order2_) return;
        auto key = std::make_pair(e2, zq);
        auto it = coeffs_.find(key);
        if (it == coeffs_.end()) {
            coeffs_.emplace(key, c);
        } else {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    TruncatedSeries at_z_one() const {
        TruncatedSeries out(order2_);
        for (const auto& [key, c] : coeffs_) out.add(key.first, c);
        return out;
    }

    bool operator==(const RefinedSeries& o) const {
        return order2_ == o.order2_ && coeffs_ == o.coeffs_;
    }

private:
    long order2_;
    std::map<std::pair<long, long>, Rational> coeffs_;
};

}  // namespace ck
