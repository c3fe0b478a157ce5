#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace unitsched {

/// Exact rational number. All density, potential and ratio arithmetic goes
/// through this type; nothing in the library rounds through binary floating
/// point.
using Rational = mpq_class;

/// Parses `p/q`, a plain integer, or a decimal string such as `5.2` exactly.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical `p/q` form; integers are printed without a denominator.
std::string to_string(const Rational& value);

/// Decimal rendering rounded half-up to `digits` places (for human output only).
std::string to_decimal(const Rational& value, int digits = 6);

mpz_class ceil(const Rational& value);
mpz_class floor(const Rational& value);

/// Narrowing helpers; throw std::overflow_error when the value does not fit.
std::int64_t to_int64(const mpz_class& value);
std::int64_t ceil_to_int64(const Rational& value);
std::int64_t floor_to_int64(const Rational& value);

static_assert(sizeof(long) == sizeof(std::int64_t), "GMP bridging assumes LP64");

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    Rational r{mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))};
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& value) { return value.get_den() == 1; }

}  // namespace unitsched
