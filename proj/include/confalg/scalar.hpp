#pragma once

// Exact rational scalars over Q.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace confalg {

/// Reduced rational number; GMP keeps numerator/denominator canonical.
using Scalar = mpq_class;

inline Scalar make_scalar(long num, long den = 1) {
    Scalar r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Scalar& x) { return sgn(x) == 0; }

/// C(n, s); zero when s > n.
inline Scalar binomial(std::uint64_t n, std::uint64_t s) {
    if (s > n) return Scalar(0);
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, s);
    return Scalar(r);
}

inline Scalar factorial(std::uint64_t n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return Scalar(r);
}

/// n (n-1) ... (n-k+1); zero when k > n.
inline Scalar falling(std::uint64_t n, std::uint64_t k) {
    if (k > n) return Scalar(0);
    return factorial(n) / factorial(n - k);
}

inline Scalar sign_pow(std::uint64_t k) { return (k % 2 == 0) ? Scalar(1) : Scalar(-1); }

/// Always "p/q", q >= 1. Used by the JSON wire format.
inline std::string to_fraction_string(const Scalar& x) {
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

/// "p" for integers, "p/q" otherwise. Used by the human-readable printers.
inline std::string to_short_string(const Scalar& x) { return x.get_str(); }

/// Parses "p" or "p/q" (optional leading sign). Throws std::invalid_argument.
inline Scalar parse_scalar(std::string_view text) {
    auto valid_int = [](std::string_view s, bool allow_sign) {
        if (s.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false))
        throw std::invalid_argument("malformed rational: " + std::string(text));
    std::string n(num);
    if (!n.empty() && n[0] == '+') n.erase(0, 1);
    mpz_class d{std::string(den)};
    if (d == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
    Scalar r{mpz_class{n}, d};
    r.canonicalize();
    return r;
}

}  // namespace confalg
