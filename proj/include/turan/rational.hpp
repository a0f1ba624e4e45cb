#ifndef TURAN_RATIONAL_HPP
#define TURAN_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <string>

#include "turan/errors.hpp"

namespace turan {

// Reduced fraction with positive denominator. Used for exact density values.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (den == 0) throw Error(ErrorCode::Undefined, "zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    // num/den < o.num/o.den, safe for the small values this project produces
    bool operator<(const Rational& o) const {
        return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
    }
    bool operator>(const Rational& o) const { return o < *this; }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

}  // namespace turan

#endif
