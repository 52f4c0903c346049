#pragma once

#include "explab/poly.hpp"

namespace explab {

namespace detail {

/// (primitive integer-coefficient polynomial with positive leading
/// coefficient, rational content), so that p = content * primitive.
inline std::pair<RatPoly, Rat> primitive_decomposition(const RatPoly& p) {
    if (p.is_zero()) return {p, Rat(0)};
    Int l = 1;
    for (auto& [m, c] : p.terms()) l = boost::multiprecision::lcm(l, den(c));
    Int g = 0;
    for (auto& [m, c] : p.terms()) g = boost::multiprecision::gcd(g, num(c) * (l / den(c)));
    Rat content(g, l);
    if (p.leading_coeff() < 0) content = -content;
    return {p * (Rat(1) / content), content};
}

}  // namespace detail

/// Reduced quotient num/den.  Denominator normalized to primitive integer
/// coefficients with positive leading coefficient (graded-lex order); the
/// compensating factor moves into the numerator.
class RatFunc {
  public:
    RatFunc() : num_(RatPoly::constant(0, 1)), den_(RatPoly::constant(1, 1)) {}
    RatFunc(RatPoly n, RatPoly d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
    explicit RatFunc(const RatPoly& n) : num_(n), den_(RatPoly::constant(1, n.arity())) {}

    const RatPoly& num() const { return num_; }
    const RatPoly& den() const { return den_; }
    int arity() const { return num_.arity(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    Rat operator()(const Rat& x) const {
        Rat d = evaluate(den_, {x});
        if (d == 0) throw ZeroDenominator();
        return evaluate(num_, {x}) / d;
    }

    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  private:
    void normalize() {
        if (den_.is_zero()) throw ZeroDenominator();
        if (num_.arity() != den_.arity()) throw ArityMismatch();
        if (num_.is_zero()) {
            den_ = RatPoly::constant(1, den_.arity());
            return;
        }
        // Gcd cancellation is supported for univariate quotients only; a
        // nonconstant multivariate denominator is a logic error by design.
        if (!den_.is_constant() && num_.arity() != 1) throw MultivariateGcd();
        if (num_.arity() == 1) {
            RatPoly g = gcd_univ(num_, den_);
            if (g.degree() > 0) {
                num_ = divrem_univ(num_, g).first;
                den_ = divrem_univ(den_, g).first;
            }
        }
        auto [dp, dc] = detail::primitive_decomposition(den_);
        auto [np, nc] = detail::primitive_decomposition(num_);
        Rat scale = nc / dc;
        num_ = np * Rat(boost::multiprecision::numerator(scale));
        den_ = dp * Rat(boost::multiprecision::denominator(scale));
    }

    RatPoly num_, den_;
};

inline RatFunc reduce_fraction(const RatPoly& n, const RatPoly& d) { return RatFunc(n, d); }

/// Split f into (polynomial part, proper remainder num) with
/// f = poly + rem/den(f), deg rem < deg den.
inline std::pair<RatPoly, RatFunc> split_polynomial_part(const RatFunc& f) {
    if (f.arity() != 1) throw ArityMismatch();
    if (f.is_polynomial()) {
        Rat d = f.den().constant_term();
        return {f.num() * (Rat(1) / d), RatFunc()};
    }
    auto [q, r] = divrem_univ(f.num(), f.den());
    return {q, RatFunc(r, f.den())};
}

}  // namespace explab
