#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace mcbnc {

/// Exact rational in lowest terms with a positive denominator. Criticality scores
/// are averages of small integers, so 64-bit parts suffice; comparisons use
/// 128-bit cross products.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// "3" or "1/3".
    std::string str() const;

    /// Accepts "p/q", integers and plain decimals ("0.5", ".25", "-1.75"); decimals are
    /// converted exactly (0.3333 is 3333/10000, not the nearest double).
    static Rational parse(std::string_view text);

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace mcbnc
