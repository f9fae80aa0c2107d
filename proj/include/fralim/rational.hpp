#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace fralim {

// Exact rational arithmetic. All distances, radii and thresholds in this
// library are Rat; nothing is ever rounded to floating point. Intermediate
// products run through __int128 and results that do not fit 64 bits throw
// std::overflow_error instead of wrapping.
class Rat {
public:
    constexpr Rat() : n_(0), d_(1) {}
    constexpr Rat(std::int64_t n) : n_(n), d_(1) {} // NOLINT: implicit by design
    Rat(std::int64_t n, std::int64_t d) : n_(n), d_(d) {
        if (d_ == 0) throw std::invalid_argument("rational with zero denominator");
        normalize();
    }

    std::int64_t numerator() const { return n_; }
    std::int64_t denominator() const { return d_; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.n_ == b.n_ && a.d_ == b.d_;
    }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        __int128 l = static_cast<__int128>(a.n_) * b.d_;
        __int128 r = static_cast<__int128>(b.n_) * a.d_;
        return l < r ? std::strong_ordering::less
                     : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return from128(static_cast<__int128>(a.n_) * b.d_ + static_cast<__int128>(b.n_) * a.d_,
                       static_cast<__int128>(a.d_) * b.d_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return from128(static_cast<__int128>(a.n_) * b.d_ - static_cast<__int128>(b.n_) * a.d_,
                       static_cast<__int128>(a.d_) * b.d_);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return from128(static_cast<__int128>(a.n_) * b.n_,
                       static_cast<__int128>(a.d_) * b.d_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.n_ == 0) throw std::invalid_argument("rational division by zero");
        return from128(static_cast<__int128>(a.n_) * b.d_,
                       static_cast<__int128>(a.d_) * b.n_);
    }
    Rat operator-() const {
        Rat r;
        r.n_ = -n_;
        r.d_ = d_;
        return r;
    }
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) {
        os << r.n_;
        if (r.d_ != 1) os << "/" << r.d_;
        return os;
    }

private:
    void normalize() {
        if (d_ < 0) {
            n_ = -n_;
            d_ = -d_;
        }
        std::int64_t g = std::gcd(n_ < 0 ? -n_ : n_, d_);
        if (g > 1) {
            n_ /= g;
            d_ /= g;
        }
        if (n_ == 0) d_ = 1;
    }

    static Rat from128(__int128 n, __int128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 an = n < 0 ? -n : n;
        __int128 g = gcd128(an, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        constexpr __int128 lo = static_cast<__int128>(INT64_MIN);
        constexpr __int128 hi = static_cast<__int128>(INT64_MAX);
        if (n < lo || n > hi || d > hi)
            throw std::overflow_error("rational arithmetic overflow");
        Rat r;
        r.n_ = static_cast<std::int64_t>(n);
        r.d_ = static_cast<std::int64_t>(n == 0 ? 1 : d);
        return r;
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    std::int64_t n_, d_;
};

inline Rat rat(std::int64_t num, std::int64_t den = 1) { return Rat(num, den); }

inline std::string to_string(const Rat& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Accepts "p", "p/q", optional leading minus. Throws std::invalid_argument.
inline Rat parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    try {
        size_t used = 0;
        if (slash == std::string::npos) {
            std::int64_t n = std::stoll(s, &used);
            if (used != s.size()) throw std::invalid_argument("trailing characters: " + s);
            return Rat(n);
        }
        std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
        std::int64_t num = std::stoll(ns, &used);
        if (used != ns.size()) throw std::invalid_argument("trailing characters: " + s);
        std::int64_t den = std::stoll(ds, &used);
        if (used != ds.size()) throw std::invalid_argument("trailing characters: " + s);
        if (den == 0) throw std::invalid_argument("zero denominator: " + s);
        return Rat(num, den);
    } catch (const std::out_of_range&) {
        throw std::invalid_argument("rational literal out of range: " + s);
    }
}

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

inline Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }
inline Rat rat_abs(const Rat& r) { return r < Rat(0) ? -r : r; }

// Least integer n with n >= r.
inline std::int64_t rat_ceil(const Rat& r) {
    std::int64_t q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() > 0) ++q;
    return q;
}

} // namespace fralim
