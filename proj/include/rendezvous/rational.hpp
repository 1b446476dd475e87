// Exact rational numbers for times, positions and speeds.
//
// Thin value wrapper over GMP's mpq_class. The wrapper keeps every value
// canonical and keeps GMP expression templates out of caller code, so `auto`
// is always a Rational and never a lazy expression.

#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace rendezvous {

class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(int value) : value_(value) {}   // NOLINT(google-explicit-constructor)
    Rational(long numerator, long denominator);
    explicit Rational(mpq_class value);

    /// Accepts "p", "p/q", "-p/q" and terminating decimals such as "1.25".
    /// Throws std::invalid_argument on anything else (including q = 0).
    static Rational parse(std::string_view text);

    /// "p" for integers, "p/q" otherwise.
    std::string str() const;
    /// Always "p/q" (integers as "p/1"); used by the JSON and CSV writers.
    std::string fraction_str() const;
    double to_double() const { return value_.get_d(); }

    const mpq_class& raw() const { return value_; }
    std::string numerator_str() const { return value_.get_num().get_str(); }
    std::string denominator_str() const { return value_.get_den().get_str(); }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    Rational operator-() const { return Rational(mpq_class(-value_)); }
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int r = cmp(a.value_, b.value_);
        return r < 0 ? std::strong_ordering::less
                     : (r > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class value_;
};

Rational abs(const Rational& x);
/// Largest integer <= x, as a Rational.
Rational floor(const Rational& x);
/// Smallest integer >= x, as a Rational.
Rational ceil(const Rational& x);
/// x reduced into [0, m). Requires m > 0.
Rational mod(const Rational& x, const Rational& m);
const Rational& min(const Rational& a, const Rational& b);
const Rational& max(const Rational& a, const Rational& b);

/// The rational with the smallest denominator in the closed interval [lo, hi]
/// (Stern-Brocot descent). Requires lo <= hi.
Rational simplest_between(const Rational& lo, const Rational& hi);

std::ostream& operator<<(std::ostream& os, const Rational& x);

}  // namespace rendezvous
