#pragma once

#include <gmpxx.h>

#include <array>
#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qlimit {

/// Exact rational over arbitrary-precision integers.
using Rational = mpq_class;

using Vec6 = std::array<Rational, 6>;

inline Rational rat(long num, long den = 1)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "a/b", "a" or "-a/b". Throws std::invalid_argument on junk.
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    auto strip = [](std::string& t) {
        while (!t.empty() && (t.front() == ' ' || t.front() == '+')) t.erase(t.begin());
        while (!t.empty() && t.back() == ' ') t.pop_back();
    };
    strip(s);
    if (s.empty()) throw std::invalid_argument("empty rational");
    for (char c : s)
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-'))
            throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    r.canonicalize();
    return r;
}

inline Rational qmax(Rational a, Rational b) { return a < b ? b : a; }
inline Rational qmin(Rational a, Rational b) { return b < a ? b : a; }

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational floor_q(const Rational& x)
{
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return Rational(f);
}

inline Rational ceil_q(const Rational& x)
{
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return Rational(c);
}

/// Fractional part in [0,1); an integer maps to 0.
inline Rational frac(const Rational& x) { return x - floor_q(x); }

inline bool is_integer(const Rational& x) { return x.get_den() == 1; }

inline bool is_half_integer_lattice(const Rational& x) { return is_integer(2 * x); }

/// Folds ζ into [0,1/2] using ζ ↦ ζ+1 and ζ ↦ −ζ.
inline Rational normalize_zeta(const Rational& z)
{
    Rational f = frac(z);
    Rational g = 1 - f;
    return f <= g ? f : g;
}

inline Rational sum(const Vec6& a)
{
    Rational s = 0;
    for (const auto& x : a) s += x;
    return s;
}

inline Vec6 parse_vec6(std::string_view csv)
{
    Vec6 out;
    std::size_t idx = 0, start = 0;
    while (start <= csv.size()) {
        std::size_t end = csv.find(',', start);
        if (end == std::string_view::npos) end = csv.size();
        if (idx >= 6) throw std::invalid_argument("expected 6 comma-separated rationals");
        out[idx++] = parse_rational(csv.substr(start, end - start));
        start = end + 1;
    }
    if (idx != 6) throw std::invalid_argument("expected 6 comma-separated rationals");
    return out;
}

inline std::vector<std::string> to_strings(const Vec6& a)
{
    std::vector<std::string> out;
    for (const auto& x : a) out.push_back(to_string(x));
    return out;
}

} // namespace qlimit
