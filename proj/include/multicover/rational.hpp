#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace multicover {

// Exact rational on int64 with __int128 intermediates. Sufficient for the
// vertex-enumeration oracle and the exact splitting checks, where numerators
// and denominators are bounded by small basis determinants; overflow of the
// reduced form is trapped, never silently wrapped.
class Rational {
  public:
    Rational() = default;
    Rational(long long value) : num_(value), den_(1) {}  // NOLINT: implicit by design
    Rational(long long num, long long den) : num_(num), den_(den) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    Rational operator-() const { return raw(-num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return i128(a.num_) * b.den_ < i128(b.num_) * a.den_; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

  private:
    using i128 = __int128;

    static Rational raw(long long n, long long d) {
        Rational r;
        r.num_ = n;
        r.den_ = d;
        return r;
    }

    static Rational make(i128 n, i128 d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        constexpr i128 kMax = 0x7fffffffffffffffLL;
        if (n > kMax || n < -kMax || d > kMax) throw std::overflow_error("rational overflow");
        return raw(static_cast<long long>(n), static_cast<long long>(d));
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        return a < 0 ? -a : a;
    }

    void normalize() { *this = make(num_, den_); }

    long long num_ = 0;
    long long den_ = 1;
};

}  // namespace multicover
