#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace babel {

// Exact rational on 64-bit numerator/denominator (intermediate products in
// 128 bits). den == 0 with num == 1 encodes the +infinity sentinel used for
// "buyer does not accept this token" exchange rates.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t num, std::int64_t den);
    Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)

    static Rational infinity();

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool isInfinite() const { return den_ == 0; }
    bool isZero() const { return num_ == 0 && den_ != 0; }
    bool isNegative() const { return num_ < 0; }

    Rational operator+(const Rational& rhs) const;
    Rational operator-(const Rational& rhs) const;
    Rational operator*(const Rational& rhs) const;
    Rational operator/(const Rational& rhs) const;
    Rational reciprocal() const;

    // Infinity compares greater than every finite rational.
    bool operator==(const Rational& rhs) const;
    bool operator<(const Rational& rhs) const;
    bool operator<=(const Rational& rhs) const { return *this < rhs || *this == rhs; }
    bool operator>(const Rational& rhs) const { return rhs < *this; }
    bool operator>=(const Rational& rhs) const { return rhs <= *this; }

    std::int64_t floor() const;
    std::int64_t ceil() const;

    std::string str() const;

private:
    std::int64_t num_;
    std::int64_t den_;
};

}  // namespace babel
