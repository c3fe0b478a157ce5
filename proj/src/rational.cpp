#include <unitsched/rational.hpp>

#include <cctype>
#include <limits>
#include <stdexcept>
#include <string>

namespace unitsched {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

[[noreturn]] void bad(std::string_view text) {
    throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    Rational result;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto num = body.substr(0, slash);
        auto den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) bad(text);
        mpz_class d(std::string(den), 10);
        if (d == 0) bad(text);
        result = Rational(mpz_class(std::string(num), 10), d);
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        auto whole = body.substr(0, dot);
        auto frac = body.substr(dot + 1);
        if (whole.empty() && frac.empty()) bad(text);
        if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) bad(text);
        mpz_class scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        mpz_class num = whole.empty() ? mpz_class(0) : mpz_class(std::string(whole), 10);
        num *= scale;
        if (!frac.empty()) num += mpz_class(std::string(frac), 10);
        result = Rational(num, scale);
    } else {
        if (!all_digits(body)) bad(text);
        result = Rational(mpz_class(std::string(body), 10));
    }
    result.canonicalize();
    if (negative) result = -result;
    return result;
}

std::string to_string(const Rational& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_decimal(const Rational& value, int digits) {
    mpz_class scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    Rational scaled = abs(value) * scale + Rational(1, 2);
    mpz_class rounded = floor(scaled);
    std::string s = rounded.get_str();
    if (digits > 0) {
        if (s.size() <= static_cast<std::size_t>(digits)) {
            s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
        }
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    if (value < 0 && rounded != 0) s.insert(0, "-");
    return s;
}

mpz_class ceil(const Rational& value) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return q;
}

mpz_class floor(const Rational& value) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return q;
}

std::int64_t to_int64(const mpz_class& value) {
    if (!value.fits_slong_p()) {
        throw std::overflow_error("integer " + value.get_str() + " exceeds 64 bits");
    }
    return static_cast<std::int64_t>(value.get_si());
}

std::int64_t ceil_to_int64(const Rational& value) { return to_int64(ceil(value)); }
std::int64_t floor_to_int64(const Rational& value) { return to_int64(floor(value)); }

}  // namespace unitsched
