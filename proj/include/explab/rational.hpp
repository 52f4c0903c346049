#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

namespace explab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

inline Rat rat_pow(const Rat& base, unsigned e) {
    Rat acc = 1, b = base;
    while (e) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

inline Int int_pow(Int base, unsigned e) {
    Int acc = 1;
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

/// Exact integer k-th root, or nullopt when v is not a perfect k-th power.
/// Negative v is allowed for odd k.
inline std::optional<Int> exact_kth_root(const Int& v, unsigned k) {
    if (k == 0) return std::nullopt;
    if (k == 1) return v;
    if (v < 0) {
        if (k % 2 == 0) return std::nullopt;
        auto r = exact_kth_root(-v, k);
        if (!r) return std::nullopt;
        return -*r;
    }
    if (v == 0 || v == 1) return v;
    // Newton iteration on integers, then verify.
    Int x = Int(1) << (static_cast<unsigned>(boost::multiprecision::msb(v)) / k + 1);
    while (true) {
        Int xk1 = int_pow(x, k - 1);
        Int nx = ((k - 1) * x + v / xk1) / k;
        if (nx >= x) break;
        x = nx;
    }
    for (Int c = x - 1; c <= x + 1; ++c) {
        if (c >= 0 && int_pow(c, k) == v) return c;
    }
    return std::nullopt;
}

inline std::optional<Rat> exact_kth_root(const Rat& v, unsigned k) {
    auto n = exact_kth_root(num(v), k);
    auto d = exact_kth_root(den(v), k);
    if (!n || !d) return std::nullopt;
    return Rat(*n, *d);
}

/// Closest rational a/b with 1 <= b <= max_den to x (ties resolved toward
/// smaller denominator by the scan order).
inline Rat nearest_rational(double x, unsigned max_den) {
    Rat best = 0;
    double best_err = std::abs(x);
    for (unsigned b = 1; b <= max_den; ++b) {
        long long a = std::llround(x * b);
        double err = std::abs(x - static_cast<double>(a) / b);
        if (err < best_err - 1e-15) {
            best_err = err;
            best = Rat(a, b);
        }
    }
    return best;
}

inline std::string to_string(const Rat& r) {
    std::string s = num(r).str();
    if (den(r) != 1) s += "/" + den(r).str();
    return s;
}

}  // namespace explab
