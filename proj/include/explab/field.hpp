#pragma once

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "explab/errors.hpp"

namespace explab {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

inline u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

/// Deterministic Miller-Rabin, valid for all n < 2^64.
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace detail {

inline u64 pollard_rho(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        auto f = [&](u64 x) { return (mulmod(x, x, n) + c) % n; };
        u64 x = 2, y = 2, d = 1;
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

inline void factor_into(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    u64 d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace detail

/// Distinct prime factors of n, ascending.
inline std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> fs;
    detail::factor_into(n, fs);
    std::sort(fs.begin(), fs.end());
    fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
    return fs;
}

class PrimeField;

/// Canonical residue in [0, p-1], tied to its field.
class FieldElem {
  public:
    FieldElem() = default;
    FieldElem(u64 v, const PrimeField* f) : value_(v), field_(f) {}

    u64 value() const { return value_; }
    const PrimeField* field() const { return field_; }

    friend FieldElem operator+(FieldElem a, FieldElem b);
    friend FieldElem operator-(FieldElem a, FieldElem b);
    friend FieldElem operator*(FieldElem a, FieldElem b);
    friend FieldElem operator/(FieldElem a, FieldElem b);
    friend bool operator==(FieldElem a, FieldElem b) { return a.value_ == b.value_ && a.field_ == b.field_; }

  private:
    u64 value_ = 0;
    const PrimeField* field_ = nullptr;
};

/// GF(p) for an odd prime 3 <= p < 2^61.  Immutable after construction;
/// the QR mask and discrete-log table are built lazily (at most once) and
/// only materialized for p <= 2^20.
class PrimeField {
  public:
    static constexpr u64 kMaxP = (1ull << 61);
    static constexpr u64 kTableCap = (1ull << 20);

    explicit PrimeField(u64 p) : p_(p) {
        if (p < 3 || p >= kMaxP || !is_prime_u64(p))
            throw NotPrime("modulus must be an odd prime in [3, 2^61): " + std::to_string(p));
    }
    PrimeField(const PrimeField&) = delete;
    PrimeField& operator=(const PrimeField&) = delete;

    u64 p() const { return p_; }

    FieldElem operator()(u64 v) const { return FieldElem(v % p_, this); }
    FieldElem from_signed(long long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += static_cast<long long>(p_);
        return FieldElem(static_cast<u64>(r), this);
    }

    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : p_ - (b - a); }
    u64 mul(u64 a, u64 b) const { return mulmod(a, b, p_); }
    u64 neg(u64 a) const { return a == 0 ? 0 : p_ - a; }
    u64 pow(u64 a, u64 e) const { return powmod(a, e, p_); }
    u64 inv(u64 a) const {
        if (a == 0) throw DivisionByZero();
        return powmod(a, p_ - 2, p_);
    }
    u64 div(u64 a, u64 b) const { return mul(a, inv(b)); }

    /// Zero counts as a residue (it is a square).
    bool is_quadratic_residue(u64 x) const {
        x %= p_;
        if (x == 0) return true;
        const auto& mask = qr_mask();
        if (!mask.empty()) return mask[x];
        return powmod(x, (p_ - 1) / 2, p_) == 1;
    }

    /// Legendre symbol in {-1, 0, +1}.
    int legendre(u64 x) const {
        x %= p_;
        if (x == 0) return 0;
        return is_quadratic_residue(x) ? 1 : -1;
    }

    /// Smallest primitive root of GF(p)^x.
    u64 generator() const {
        std::call_once(gen_once_, [this] {
            auto qs = prime_factors(p_ - 1);
            for (u64 g = 2;; ++g) {
                bool ok = true;
                for (u64 q : qs) {
                    if (powmod(g, (p_ - 1) / q, p_) == 1) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    generator_ = g;
                    return;
                }
            }
        });
        return generator_;
    }

    /// dlog base generator(): generator()^k = x, 0 <= k < p-1.  Table-backed
    /// for p <= 2^20, baby-step giant-step above.
    u64 dlog(u64 x) const {
        x %= p_;
        if (x == 0) throw DivisionByZero();
        if (p_ <= kTableCap) {
            const auto& t = dlog_table();
            return t[x];
        }
        return dlog_bsgs(x);
    }

  private:
    const std::vector<bool>& qr_mask() const {
        std::call_once(qr_once_, [this] {
            if (p_ > kTableCap) return;
            qr_mask_.assign(p_, false);
            qr_mask_[0] = true;
            for (u64 y = 1; y <= (p_ - 1) / 2; ++y) qr_mask_[mulmod(y, y, p_)] = true;
        });
        return qr_mask_;
    }

    const std::vector<u64>& dlog_table() const {
        std::call_once(dlog_once_, [this] {
            u64 g = generator();
            dlog_table_.assign(p_, 0);
            u64 acc = 1;
            for (u64 k = 0; k + 1 < p_; ++k) {
                dlog_table_[acc] = k;
                acc = mulmod(acc, g, p_);
            }
        });
        return dlog_table_;
    }

    u64 dlog_bsgs(u64 x) const {
        u64 g = generator();
        u64 n = p_ - 1;
        u64 m = 1;
        while (m * m < n) ++m;
        std::unordered_map<u64, u64> baby;
        baby.reserve(m * 2);
        u64 cur = 1;
        for (u64 j = 0; j < m; ++j) {
            baby.emplace(cur, j);
            cur = mulmod(cur, g, p_);
        }
        u64 giant = inv(powmod(g, m, p_));
        cur = x;
        for (u64 i = 0; i <= m; ++i) {
            auto it = baby.find(cur);
            if (it != baby.end()) return (i * m + it->second) % n;
            cur = mulmod(cur, giant, p_);
        }
        throw Error("discrete log not found (non-element?)");
    }

    u64 p_;
    mutable std::once_flag gen_once_, qr_once_, dlog_once_;
    mutable u64 generator_ = 0;
    mutable std::vector<bool> qr_mask_;
    mutable std::vector<u64> dlog_table_;
};

inline void require_same_field(FieldElem a, FieldElem b) {
    if (a.field() == nullptr || a.field() != b.field()) throw FieldMismatch();
}

inline FieldElem operator+(FieldElem a, FieldElem b) {
    require_same_field(a, b);
    return FieldElem(a.field()->add(a.value(), b.value()), a.field());
}
inline FieldElem operator-(FieldElem a, FieldElem b) {
    require_same_field(a, b);
    return FieldElem(a.field()->sub(a.value(), b.value()), a.field());
}
inline FieldElem operator*(FieldElem a, FieldElem b) {
    require_same_field(a, b);
    return FieldElem(a.field()->mul(a.value(), b.value()), a.field());
}
inline FieldElem operator/(FieldElem a, FieldElem b) {
    require_same_field(a, b);
    return FieldElem(a.field()->div(a.value(), b.value()), a.field());
}

inline FieldElem pow(FieldElem a, u64 e) { return FieldElem(a.field()->pow(a.value(), e), a.field()); }

enum class FieldOp { add, sub, mul, div, pow };

/// Dispatch form used by the CLI and the oracle-matching tests.  For pow,
/// y.value() is read as a nonnegative machine-integer exponent.
inline FieldElem field_arith(FieldElem x, FieldElem y, FieldOp op) {
    switch (op) {
        case FieldOp::add: return x + y;
        case FieldOp::sub: return x - y;
        case FieldOp::mul: return x * y;
        case FieldOp::div: return x / y;
        case FieldOp::pow: return pow(x, y.value());
    }
    throw Error("bad FieldOp");
}

inline bool is_quadratic_residue(FieldElem x) { return x.field()->is_quadratic_residue(x.value()); }

inline FieldElem find_generator(const PrimeField& f) { return FieldElem(f.generator(), &f); }

}  // namespace explab
