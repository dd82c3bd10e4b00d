// rational.hpp -- exact rational arithmetic on 64-bit integers with 128-bit
// intermediates. Covers the combinatorial probabilities used here (binomials
// up to C(24,12), so numerators stay far below 2^63).

#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qgrid {

class Rational {
public:
    Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1) : n_(num), d_(den) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        reduce();
    }

    std::int64_t num() const { return n_; }
    std::int64_t den() const { return d_; }
    double to_double() const { return static_cast<double>(n_) / static_cast<double>(d_); }
    std::string str() const { return std::to_string(n_) + "/" + std::to_string(d_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from128(static_cast<__int128>(a.n_) * b.d_ + static_cast<__int128>(b.n_) * a.d_,
                       static_cast<__int128>(a.d_) * b.d_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + Rational(-b.n_, b.d_); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from128(static_cast<__int128>(a.n_) * b.n_, static_cast<__int128>(a.d_) * b.d_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.n_ == 0) throw std::invalid_argument("Rational: division by zero");
        return from128(static_cast<__int128>(a.n_) * b.d_, static_cast<__int128>(a.d_) * b.n_);
    }
    friend bool operator==(const Rational& a, const Rational& b) { return a.n_ == b.n_ && a.d_ == b.d_; }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.n_) * b.d_ < static_cast<__int128>(b.n_) * a.d_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return a < b || a == b; }

private:
    std::int64_t n_ = 0, d_ = 1;

    void reduce() {
        if (d_ < 0) {
            n_ = -n_;
            d_ = -d_;
        }
        const std::int64_t g = std::gcd(n_ < 0 ? -n_ : n_, d_);
        if (g > 1) {
            n_ /= g;
            d_ /= g;
        }
        if (n_ == 0) d_ = 1;
    }

    static Rational from128(__int128 n, __int128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 a = n < 0 ? -n : n, b = d;
        while (b) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) {
            n /= a;
            d /= a;
        }
        const __int128 lim = static_cast<__int128>(INT64_MAX);
        if (n > lim || n < -lim || d > lim) throw std::overflow_error("Rational: 64-bit overflow");
        return Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
    }
};

// Exact binomial coefficient (fits int64 for the n <= 24 range used here).
std::int64_t binomial(int n, int k);

}  // namespace qgrid
