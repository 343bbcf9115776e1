#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace arbodom {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Parses "p/q" or a plain integer into an exact rational.
inline Rat parse_rational(std::string_view text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) {
            return Rat(BigInt(std::string(text)));
        }
        BigInt num{std::string(text.substr(0, slash))};
        BigInt den{std::string(text.substr(slash + 1))};
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: " + std::string(text));
    }
}

inline std::string fraction_string(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

/// Decimal rendering (truncated) with a fixed number of fraction digits.
inline std::string decimal_string(const Rat& r, int digits = 20) {
    BigInt num = numerator(r);
    BigInt den = denominator(r);
    std::string sign;
    if (num < 0) {
        sign = "-";
        num = -num;
    }
    BigInt whole = num / den;
    BigInt rem = num % den;
    std::string out = sign + whole.str();
    if (digits <= 0) return out;
    out += ".";
    for (int d = 0; d < digits; ++d) {
        rem *= 10;
        out += (rem / den).str();
        rem %= den;
    }
    return out;
}

inline Rat rat_pow(const Rat& base, unsigned long exp) {
    Rat result(1);
    Rat acc = base;
    while (exp > 0) {
        if (exp & 1) result *= acc;
        exp >>= 1;
        if (exp) acc *= acc;
    }
    return result;
}

/// Largest integer e with base^e <= value. Requires base > 1, value > 0.
/// The result may be negative.
inline long floor_log(const Rat& base, const Rat& value) {
    if (base <= 1) throw std::invalid_argument("floor_log: base must be > 1");
    if (value <= 0) throw std::invalid_argument("floor_log: value must be > 0");
    long e = 0;
    Rat acc(1);
    if (value >= 1) {
        while (acc * base <= value) {
            acc *= base;
            ++e;
        }
    } else {
        while (acc > value) {
            acc /= base;
            --e;
        }
    }
    return e;
}

inline int ceil_log2(std::uint64_t x) {
    int bits = 0;
    while ((std::uint64_t{1} << bits) < x) {
        ++bits;
        if (bits == 63) break;
    }
    return bits;
}

/// Memoized nonnegative powers of a fixed rational base.
class PowCache {
public:
    explicit PowCache(Rat base) : base_(std::move(base)) { pows_.emplace_back(1); }

    const Rat& operator[](std::size_t e) const {
        while (pows_.size() <= e) pows_.push_back(pows_.back() * base_);
        return pows_[e];
    }

    const Rat& base() const { return base_; }

private:
    Rat base_;
    mutable std::vector<Rat> pows_;
};

}  // namespace arbodom
