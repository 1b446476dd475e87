#include "rendezvous/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace rendezvous {

Rational::Rational(long numerator, long denominator) {
    if (denominator == 0) {
        throw std::invalid_argument("rational with zero denominator");
    }
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char ch : s) {
        if (std::isdigit(static_cast<unsigned char>(ch)) == 0) {
            return false;
        }
    }
    return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
    const std::string original(text);
    auto fail = [&]() -> Rational {
        throw std::invalid_argument("not an exact rational: '" + original + "'");
    };

    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }

    mpq_class q;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto num = text.substr(0, slash);
        const auto den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) {
            return fail();
        }
        mpz_class d(std::string(den), 10);
        if (d == 0) {
            return fail();
        }
        q = mpq_class(mpz_class(std::string(num), 10), d);
    } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
        const auto whole = text.substr(0, dot);
        const auto frac = text.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
            (!frac.empty() && !all_digits(frac))) {
            return fail();
        }
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        mpz_class digits(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
        q = mpq_class(digits, scale);
    } else {
        if (!all_digits(text)) {
            return fail();
        }
        q = mpq_class(mpz_class(std::string(text), 10));
    }
    q.canonicalize();
    if (negative) {
        q = -q;
    }
    return Rational(q);
}

std::string Rational::str() const { return value_.get_str(); }

std::string Rational::fraction_str() const {
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& o) {
    value_ += o.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    value_ -= o.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    value_ *= o.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.sign() == 0) {
        throw std::domain_error("rational division by zero");
    }
    value_ /= o.value_;
    return *this;
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

Rational floor(const Rational& x) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.raw().get_num_mpz_t(), x.raw().get_den_mpz_t());
    return Rational(mpq_class(q));
}

Rational ceil(const Rational& x) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), x.raw().get_num_mpz_t(), x.raw().get_den_mpz_t());
    return Rational(mpq_class(q));
}

Rational mod(const Rational& x, const Rational& m) {
    if (m.sign() <= 0) {
        throw std::domain_error("mod requires a positive modulus");
    }
    return x - m * floor(x / m);
}

const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational simplest_between(const Rational& lo, const Rational& hi) {
    if (hi < lo) {
        throw std::invalid_argument("simplest_between: empty interval");
    }
    const Rational fl = floor(lo);
    if (fl == lo) {
        return lo;
    }
    if (fl + 1 <= hi) {
        return fl + 1;
    }
    // lo and hi share the integer part; recurse on the reciprocals of the
    // fractional parts (note the order flips).
    return fl + Rational(1) / simplest_between(Rational(1) / (hi - fl), Rational(1) / (lo - fl));
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

}  // namespace rendezvous
