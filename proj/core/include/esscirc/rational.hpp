#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace esscirc {

/// Exact rational arithmetic over int64, used to build polynomial
/// coefficients (skewing CDFs, sine-power expansions) without rounding.
/// Intermediates go through __int128; anything that cannot be reduced back
/// into int64 throws std::overflow_error.
class Rational {
public:
    constexpr Rational() noexcept : num_(0), den_(1) {}
    Rational(long long value) noexcept : num_(value), den_(1) {}
    Rational(long long num, long long den) : num_(num), den_(den) {
        if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
        normalize();
    }

    long long num() const noexcept { return num_; }
    long long den() const noexcept { return den_; }
    double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    Rational operator-() const noexcept {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) noexcept { return !(a == b); }

    /// Exact binomial coefficient as a rational integer.
    static Rational binomial(int n, int k) {
        if (k < 0 || k > n) return Rational(0);
        if (k > n - k) k = n - k;
        i128 acc = 1;
        for (int j = 1; j <= k; ++j) {
            acc = acc * (n - k + j) / j;  // exact at every step
            if (acc > kMax128) throw std::overflow_error("Rational::binomial overflow");
        }
        return from128(acc, 1);
    }

    /// 2^e as a rational, e may be negative.
    static Rational pow2(int e) {
        if (e >= 0) {
            if (e > 62) throw std::overflow_error("Rational::pow2 overflow");
            return Rational(1LL << e);
        }
        if (e < -62) throw std::overflow_error("Rational::pow2 overflow");
        return Rational(1, 1LL << (-e));
    }

private:
    using i128 = __int128;
    static constexpr i128 kMax128 = i128(1) << 100;

    static Rational from128(i128 num, i128 den) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        i128 a = num < 0 ? -num : num;
        i128 g = gcd128(a, den);
        if (g > 1) { num /= g; den /= g; }
        constexpr i128 lo = -i128(INT64_MAX), hi = i128(INT64_MAX);
        if (num < lo || num > hi || den > hi)
            throw std::overflow_error("Rational: value does not fit in int64");
        Rational r;
        r.num_ = static_cast<long long>(num);
        r.den_ = static_cast<long long>(den);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) noexcept {
        while (b != 0) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        return a < 0 ? -a : a;
    }

    void normalize() {
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    long long num_;
    long long den_;
};

}  // namespace esscirc
