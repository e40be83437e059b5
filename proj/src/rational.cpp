#include "babel/rational.hpp"

#include <numeric>

namespace babel {

namespace {

std::int64_t narrow(__int128 v) {
    if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN))
        throw std::overflow_error("rational arithmetic overflow");
    return static_cast<std::int64_t>(v);
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g == 0) g = 1;
    num_ = num / g;
    den_ = den / g;
}

Rational Rational::infinity() {
    Rational r;
    r.num_ = 1;
    r.den_ = 0;
    return r;
}

Rational Rational::operator+(const Rational& rhs) const {
    if (isInfinite() || rhs.isInfinite()) throw std::domain_error("arithmetic on infinite rational");
    __int128 n = static_cast<__int128>(num_) * rhs.den_ + static_cast<__int128>(rhs.num_) * den_;
    __int128 d = static_cast<__int128>(den_) * rhs.den_;
    return Rational(narrow(n), narrow(d));
}

Rational Rational::operator-(const Rational& rhs) const {
    if (isInfinite() || rhs.isInfinite()) throw std::domain_error("arithmetic on infinite rational");
    __int128 n = static_cast<__int128>(num_) * rhs.den_ - static_cast<__int128>(rhs.num_) * den_;
    __int128 d = static_cast<__int128>(den_) * rhs.den_;
    return Rational(narrow(n), narrow(d));
}

Rational Rational::operator*(const Rational& rhs) const {
    if (isInfinite() || rhs.isInfinite()) throw std::domain_error("arithmetic on infinite rational");
    // Cross-reduce before multiplying to keep intermediates small.
    std::int64_t a = num_, b = den_, c = rhs.num_, d = rhs.den_;
    std::int64_t g1 = std::gcd(a < 0 ? -a : a, d);
    std::int64_t g2 = std::gcd(c < 0 ? -c : c, b);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    __int128 n = static_cast<__int128>(a / g1) * (c / g2);
    __int128 m = static_cast<__int128>(b / g2) * (d / g1);
    return Rational(narrow(n), narrow(m));
}

Rational Rational::operator/(const Rational& rhs) const { return *this * rhs.reciprocal(); }

Rational Rational::reciprocal() const {
    if (isInfinite()) return Rational(0);
    if (num_ == 0) throw std::domain_error("reciprocal of zero");
    return Rational(den_, num_);
}

bool Rational::operator==(const Rational& rhs) const {
    return num_ == rhs.num_ && den_ == rhs.den_;
}

bool Rational::operator<(const Rational& rhs) const {
    if (isInfinite()) return false;
    if (rhs.isInfinite()) return true;
    return static_cast<__int128>(num_) * rhs.den_ < static_cast<__int128>(rhs.num_) * den_;
}

std::int64_t Rational::floor() const {
    if (isInfinite()) throw std::domain_error("floor of infinity");
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
}

std::int64_t Rational::ceil() const {
    if (isInfinite()) throw std::domain_error("ceil of infinity");
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
}

std::string Rational::str() const {
    if (isInfinite()) return "inf";
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace babel
