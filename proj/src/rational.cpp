#include "mcbnc/rational.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "mcbnc/errors.hpp"

namespace mcbnc {

namespace {

__extension__ typedef __int128 wide;

Rational from_wide(wide num, wide den) {
    if (den == 0) throw InputError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    wide a = num < 0 ? -num : num;
    wide b = den;
    while (b != 0) {
        wide t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        num /= a;
        den /= a;
    }
    constexpr wide limit = static_cast<wide>(INT64_MAX);
    if (num > limit || num < -limit || den > limit) throw InputError("rational overflow");
    return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw InputError("not a number: '" + std::string(whole) + "'");
    return v;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw InputError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    num_ = num;
    den_ = den;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
    if (text.empty()) throw InputError("empty number");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        return Rational(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));
    }

    bool negative = false;
    std::string_view body = text;
    if (body.front() == '-' || body.front() == '+') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    auto dot = body.find('.');
    std::string_view int_part = body.substr(0, dot);
    std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) throw InputError("not a number: '" + std::string(text) + "'");
    auto digits = [](std::string_view s) { return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }); };
    if (!digits(int_part) || !digits(frac_part)) throw InputError("not a number: '" + std::string(text) + "'");
    if (frac_part.size() > 18) throw InputError("too many decimal digits: '" + std::string(text) + "'");

    wide num = int_part.empty() ? 0 : parse_int(int_part, text);
    wide den = 1;
    if (!frac_part.empty()) {
        std::int64_t frac = parse_int(frac_part, text);
        for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
        num = num * den + frac;
    }
    return from_wide(negative ? -num : num, den);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    wide lhs = static_cast<wide>(a.num_) * b.den_;
    wide rhs = static_cast<wide>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Rational operator+(const Rational& a, const Rational& b) {
    return from_wide(static_cast<wide>(a.num_) * b.den_ + static_cast<wide>(b.num_) * a.den_,
                     static_cast<wide>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return from_wide(static_cast<wide>(a.num_) * b.den_ - static_cast<wide>(b.num_) * a.den_,
                     static_cast<wide>(a.den_) * b.den_);
}

}  // namespace mcbnc
