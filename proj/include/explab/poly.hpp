#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "explab/errors.hpp"
#include "explab/field.hpp"
#include "explab/rational.hpp"

namespace explab {

/// Exponent vector for up to four variables; unused slots stay zero.
struct Mono {
    std::array<std::uint16_t, 4> e{0, 0, 0, 0};

    unsigned total() const { return unsigned(e[0]) + e[1] + e[2] + e[3]; }
    std::uint64_t pack() const {
        return (std::uint64_t(e[0]) << 48) | (std::uint64_t(e[1]) << 32) | (std::uint64_t(e[2]) << 16) | e[3];
    }
    static Mono unpack(std::uint64_t k) {
        Mono m;
        m.e = {std::uint16_t(k >> 48), std::uint16_t(k >> 32), std::uint16_t(k >> 16), std::uint16_t(k)};
        return m;
    }
    friend bool operator==(const Mono& a, const Mono& b) { return a.e == b.e; }
};

/// Graded lexicographic, descending (canonical iteration = print order).
struct GrlexDesc {
    bool operator()(const Mono& a, const Mono& b) const {
        unsigned ta = a.total(), tb = b.total();
        if (ta != tb) return ta > tb;
        return a.e > b.e;
    }
};

/// Sparse exact polynomial over Q in `arity` variables (1..4).
class RatPoly {
  public:
    using TermMap = std::map<Mono, Rat, GrlexDesc>;

    explicit RatPoly(int arity = 1) : arity_(arity) {}

    static RatPoly constant(const Rat& c, int arity) {
        RatPoly p(arity);
        if (c != 0) p.terms_.emplace(Mono{}, c);
        return p;
    }
    static RatPoly variable(int var, int arity, const Rat& coeff = 1, unsigned power = 1) {
        RatPoly p(arity);
        if (coeff != 0) {
            Mono m;
            m.e[var] = std::uint16_t(power);
            if (power == 0)
                p = constant(coeff, arity);
            else
                p.terms_.emplace(m, coeff);
        }
        return p;
    }

    int arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.total() == 0); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    /// Total degree; -1 for the zero polynomial.
    int degree() const { return terms_.empty() ? -1 : int(terms_.begin()->first.total()); }
    int degree_in(int var) const {
        int d = terms_.empty() ? -1 : 0;
        for (auto& [m, c] : terms_) d = std::max(d, int(m.e[var]));
        return d;
    }
    bool depends_on(int var) const { return degree_in(var) > 0; }

    Rat coeff(const Mono& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rat(0) : it->second;
    }
    const Mono& leading_monomial() const {
        if (terms_.empty()) throw ZeroPolynomial();
        return terms_.begin()->first;
    }
    const Rat& leading_coeff() const {
        if (terms_.empty()) throw ZeroPolynomial();
        return terms_.begin()->second;
    }
    Rat constant_term() const { return coeff(Mono{}); }

    void set_coeff(const Mono& m, const Rat& c) {
        if (c == 0)
            terms_.erase(m);
        else
            terms_[m] = c;
    }
    void add_term(const Mono& m, const Rat& c) {
        auto [it, fresh] = terms_.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    RatPoly& operator+=(const RatPoly& o) {
        check_arity(o);
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    RatPoly& operator-=(const RatPoly& o) {
        check_arity(o);
        for (auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    RatPoly operator-() const {
        RatPoly r(arity_);
        for (auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
    friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }

    friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
        a.check_arity(b);
        RatPoly r(a.arity_);
        if (a.is_zero() || b.is_zero()) return r;
        // Denominators are cleared once so the inner loop runs on integers;
        // each result coefficient is normalized a single time at the end.
        auto [ai, da] = a.cleared();
        auto [bi, db] = b.cleared();
        std::unordered_map<std::uint64_t, Int> acc;
        acc.reserve(ai.size() * 2 + bi.size() * 2);
        for (auto& [ma, ca] : ai)
            for (auto& [mb, cb] : bi) acc[ma + mb] += ca * cb;
        Int d = da * db;
        for (auto& [mk, c] : acc) {
            if (c == 0) continue;
            r.terms_.emplace(Mono::unpack(mk), Rat(c, d));
        }
        return r;
    }

    friend RatPoly operator*(const RatPoly& a, const Rat& s) {
        RatPoly r(a.arity_);
        if (s == 0) return r;
        for (auto& [m, c] : a.terms_) r.terms_.emplace(m, c * s);
        return r;
    }
    friend RatPoly operator*(const Rat& s, const RatPoly& a) { return a * s; }

    friend bool operator==(const RatPoly& a, const RatPoly& b) {
        if (a.arity_ != b.arity_ || a.terms_.size() != b.terms_.size()) return false;
        auto ia = a.terms_.begin();
        for (auto ib = b.terms_.begin(); ib != b.terms_.end(); ++ia, ++ib)
            if (!(ia->first == ib->first) || ia->second != ib->second) return false;
        return true;
    }

    RatPoly pow(unsigned k) const {
        RatPoly acc = constant(1, arity_);
        RatPoly base = *this;
        while (k) {
            if (k & 1) acc = acc * base;
            if (k >>= 1) base = base * base;
        }
        return acc;
    }

    /// (integer-coefficient terms keyed by packed exponents, common denominator)
    std::pair<std::vector<std::pair<std::uint64_t, Int>>, Int> cleared() const {
        Int l = 1;
        for (auto& [m, c] : terms_) l = boost::multiprecision::lcm(l, den(c));
        std::vector<std::pair<std::uint64_t, Int>> v;
        v.reserve(terms_.size());
        for (auto& [m, c] : terms_) v.emplace_back(m.pack(), num(c) * (l / den(c)));
        return {std::move(v), std::move(l)};
    }

  private:
    void check_arity(const RatPoly& o) const {
        if (arity_ != o.arity_) throw ArityMismatch();
    }

    int arity_;
    TermMap terms_;
};

enum class PolyOp { add, sub, mul };

inline RatPoly poly_arith(const RatPoly& u, const RatPoly& v, PolyOp op) {
    switch (op) {
        case PolyOp::add: return u + v;
        case PolyOp::sub: return u - v;
        case PolyOp::mul: return u * v;
    }
    throw Error("bad PolyOp");
}

inline RatPoly partial_derivative(const RatPoly& p, int var) {
    if (var < 0 || var >= p.arity()) throw ArityMismatch();
    RatPoly r(p.arity());
    for (auto& [m, c] : p.terms()) {
        if (m.e[var] == 0) continue;
        Mono d = m;
        d.e[var] -= 1;
        r.add_term(d, c * m.e[var]);
    }
    return r;
}

/// Exact evaluation at a rational point.
inline Rat evaluate(const RatPoly& p, std::span<const Rat> point) {
    if (int(point.size()) != p.arity()) throw ArityMismatch();
    std::array<std::vector<Rat>, 4> pows;
    for (int v = 0; v < p.arity(); ++v) {
        int d = std::max(0, p.degree_in(v));
        pows[v].resize(d + 1);
        pows[v][0] = 1;
        for (int k = 1; k <= d; ++k) pows[v][k] = pows[v][k - 1] * point[v];
    }
    Rat acc = 0;
    for (auto& [m, c] : p.terms()) {
        Rat t = c;
        for (int v = 0; v < p.arity(); ++v)
            if (m.e[v]) t *= pows[v][m.e[v]];
        acc += t;
    }
    return acc;
}

inline Rat evaluate(const RatPoly& p, std::initializer_list<Rat> point) {
    return evaluate(p, std::span<const Rat>(point.begin(), point.size()));
}

/// Reduce one rational to GF(p): n/d -> n * d^-1 mod p.
inline u64 reduce_mod(const Rat& c, const PrimeField& f) {
    Int n = num(c) % Int(f.p());
    Int d = den(c) % Int(f.p());
    if (d == 0) throw DenominatorNotInvertible(f.p());
    u64 nn = static_cast<u64>((n < 0 ? n + Int(f.p()) : n).convert_to<std::uint64_t>());
    u64 dd = static_cast<u64>(d.convert_to<std::uint64_t>());
    return f.mul(nn, f.inv(dd));
}

inline FieldElem evaluate(const RatPoly& p, std::span<const FieldElem> point) {
    if (int(point.size()) != p.arity()) throw ArityMismatch();
    const PrimeField* f = point.empty() ? nullptr : point[0].field();
    for (auto& x : point)
        if (x.field() != f) throw FieldMismatch();
    std::array<std::vector<u64>, 4> pows;
    for (int v = 0; v < p.arity(); ++v) {
        int d = std::max(0, p.degree_in(v));
        pows[v].resize(d + 1);
        pows[v][0] = 1;
        for (int k = 1; k <= d; ++k) pows[v][k] = f->mul(pows[v][k - 1], point[v].value());
    }
    u64 acc = 0;
    for (auto& [m, c] : p.terms()) {
        u64 t = reduce_mod(c, *f);
        for (int v = 0; v < p.arity(); ++v)
            if (m.e[v]) t = f->mul(t, pows[v][m.e[v]]);
        acc = f->add(acc, t);
    }
    return FieldElem(acc, f);
}

/// Substitute `value` for variable `var`, dropping the variable (arity - 1),
/// unless the polynomial is univariate, in which case a constant arity-1
/// polynomial is returned.
inline RatPoly specialize(const RatPoly& p, int var, const Rat& value) {
    if (var < 0 || var >= p.arity()) throw ArityMismatch();
    int new_arity = std::max(1, p.arity() - 1);
    bool drop = p.arity() > 1;
    int dmax = std::max(0, p.degree_in(var));
    std::vector<Rat> pw(dmax + 1);
    pw[0] = 1;
    for (int k = 1; k <= dmax; ++k) pw[k] = pw[k - 1] * value;
    RatPoly r(new_arity);
    for (auto& [m, c] : p.terms()) {
        Mono nm;
        int j = 0;
        for (int v = 0; v < p.arity(); ++v) {
            if (drop && v == var) continue;
            nm.e[j++] = m.e[v];
        }
        r.add_term(nm, c * pw[m.e[var]]);
    }
    return r;
}

/// Re-index variables: result has `new_arity` variables and old variable v
/// becomes variable map[v].
inline RatPoly embed(const RatPoly& p, int new_arity, std::span<const int> map) {
    if (int(map.size()) != p.arity()) throw ArityMismatch();
    RatPoly r(new_arity);
    for (auto& [m, c] : p.terms()) {
        Mono nm;
        for (int v = 0; v < p.arity(); ++v) nm.e[map[v]] = std::uint16_t(nm.e[map[v]] + m.e[v]);
        r.add_term(nm, c);
    }
    return r;
}

inline RatPoly embed(const RatPoly& p, int new_arity, std::initializer_list<int> map) {
    return embed(p, new_arity, std::span<const int>(map.begin(), map.size()));
}

/// Horner composition of a univariate outer polynomial with an arbitrary inner.
inline RatPoly compose_outer(const RatPoly& outer, const RatPoly& inner) {
    if (outer.arity() != 1) throw ArityMismatch();
    RatPoly acc = RatPoly::constant(0, inner.arity());
    int d = std::max(0, outer.degree());
    std::vector<Rat> coeffs(d + 1, Rat(0));
    for (auto& [m, c] : outer.terms()) coeffs[m.e[0]] = c;
    for (int i = d; i >= 0; --i) {
        acc = acc * inner;
        acc += RatPoly::constant(coeffs[i], inner.arity());
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Univariate helpers (arity-1 polynomials).

inline std::vector<Rat> univ_coeffs(const RatPoly& p) {
    if (p.arity() != 1) throw ArityMismatch();
    std::vector<Rat> c(std::max(0, p.degree()) + 1, Rat(0));
    for (auto& [m, k] : p.terms()) c[m.e[0]] = k;
    return c;
}

inline RatPoly univ_from_coeffs(std::span<const Rat> c) {
    RatPoly p(1);
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) {
            Mono m;
            m.e[0] = std::uint16_t(i);
            p.add_term(m, c[i]);
        }
    return p;
}

inline RatPoly univ_from_coeffs(std::initializer_list<Rat> c) {
    return univ_from_coeffs(std::span<const Rat>(c.begin(), c.size()));
}

/// Quotient and remainder of univariate division.
inline std::pair<RatPoly, RatPoly> divrem_univ(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw ZeroDenominator();
    auto ac = univ_coeffs(a), bc = univ_coeffs(b);
    int db = int(bc.size()) - 1;
    if (int(ac.size()) - 1 < db) return {RatPoly(1), a};
    std::vector<Rat> q(ac.size() - db, Rat(0));
    while (int(ac.size()) - 1 >= db) {
        int k = int(ac.size()) - 1 - db;
        Rat f = ac.back() / bc.back();
        q[k] = f;
        for (int i = 0; i <= db; ++i) ac[k + i] -= f * bc[i];
        while (!ac.empty() && ac.back() == 0) ac.pop_back();
        if (ac.empty()) break;
    }
    return {univ_from_coeffs(q), univ_from_coeffs(ac)};
}

/// Monic gcd via Euclid over Q; gcd(0,0) = 0.
inline RatPoly gcd_univ(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
        auto [q, r] = divrem_univ(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) a = a * (Rat(1) / a.leading_coeff());
    return a;
}

inline RatPoly antiderivative_univ(const RatPoly& p) {
    if (p.arity() != 1) throw ArityMismatch();
    RatPoly r(1);
    for (auto& [m, c] : p.terms()) {
        Mono up = m;
        up.e[0] += 1;
        r.add_term(up, c / up.e[0]);
    }
    return r;
}

/// p / gcd(p, p').
inline RatPoly squarefree_part(const RatPoly& p) {
    if (p.arity() != 1) throw ArityMismatch();
    if (p.is_zero()) throw ZeroPolynomial();
    RatPoly g = gcd_univ(p, partial_derivative(p, 0));
    auto [q, r] = divrem_univ(p, g);
    return q;
}

/// Lagrange interpolation through (s_i, v_i), exact over Q.
inline RatPoly interpolate_univariate(std::span<const std::pair<Rat, Rat>> pts) {
    if (pts.empty()) throw ValidationError("interpolation needs at least one node");
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (pts[i].first == pts[j].first) throw DuplicateNode();
    RatPoly acc(1);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        RatPoly basis = RatPoly::constant(1, 1);
        Rat denom = 1;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j == i) continue;
            basis = basis * univ_from_coeffs({-pts[j].first, Rat(1)});
            denom *= pts[i].first - pts[j].first;
        }
        acc += basis * (pts[i].second / denom);
    }
    return acc;
}

inline RatPoly interpolate_univariate(std::initializer_list<std::pair<Rat, Rat>> pts) {
    return interpolate_univariate(std::span<const std::pair<Rat, Rat>>(pts.begin(), pts.size()));
}

// ---------------------------------------------------------------------------
// Canonical text form: graded-lex descending, explicit '*', '^', rationals n/d.

inline std::span<const char* const> default_var_names(int arity) {
    static constexpr const char* n1[] = {"x"};
    static constexpr const char* n2[] = {"x", "y"};
    static constexpr const char* n3[] = {"x", "y", "z"};
    static constexpr const char* n4[] = {"a", "b", "c", "d"};
    switch (arity) {
        case 1: return n1;
        case 2: return n2;
        case 3: return n3;
        default: return n4;
    }
}

inline std::string to_string(const RatPoly& p, std::span<const std::string> names = {}) {
    if (p.is_zero()) return "0";
    auto var_name = [&](int v) -> std::string {
        if (!names.empty()) return names[v];
        return default_var_names(p.arity())[v];
    };
    std::string out;
    bool first = true;
    for (auto& [m, c] : p.terms()) {
        Rat a = c;
        if (first) {
            if (a < 0) {
                out += "-";
                a = -a;
            }
        } else {
            out += a < 0 ? " - " : " + ";
            if (a < 0) a = -a;
        }
        first = false;
        std::string vars;
        for (int v = 0; v < p.arity(); ++v) {
            if (m.e[v] == 0) continue;
            if (!vars.empty()) vars += "*";
            vars += var_name(v);
            if (m.e[v] > 1) vars += "^" + std::to_string(m.e[v]);
        }
        if (vars.empty()) {
            out += to_string(a);
        } else if (a == 1) {
            out += vars;
        } else {
            out += to_string(a) + "*" + vars;
        }
    }
    return out;
}

}  // namespace explab
