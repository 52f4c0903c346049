#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "explab/poly.hpp"
#include "explab/ratfunc.hpp"

namespace explab {

namespace detail {

/// Probe values 1, 2, 3, 5, 7, 11, ... (1 followed by the primes).
class ProbeSequence {
  public:
    Rat next() {
        if (n_ == 0) {
            n_ = 1;
            return 1;
        }
        while (true) {
            ++n_;
            if (is_prime_u64(n_)) return Rat(n_);
        }
    }

  private:
    u64 n_ = 0;
};

constexpr int kMaxProbeRetries = 64;

/// Exact solution of an augmented linear system over Q by Gaussian
/// elimination.  Free variables are pinned to zero; nullopt when
/// inconsistent.
inline std::optional<std::vector<Rat>> solve_linear(std::vector<std::vector<Rat>> m, int ncols) {
    int nrows = int(m.size());
    std::vector<int> pivot_col(nrows, -1);
    int r = 0;
    for (int c = 0; c < ncols && r < nrows; ++c) {
        int sel = -1;
        for (int i = r; i < nrows; ++i)
            if (m[i][c] != 0) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(m[r], m[sel]);
        Rat inv = Rat(1) / m[r][c];
        for (int j = c; j <= ncols; ++j) m[r][j] *= inv;
        for (int i = 0; i < nrows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (int j = c; j <= ncols; ++j) m[i][j] -= f * m[r][j];
        }
        pivot_col[r] = c;
        ++r;
    }
    for (int i = r; i < nrows; ++i)
        if (m[i][ncols] != 0) return std::nullopt;
    std::vector<Rat> x(ncols, Rat(0));
    for (int i = 0; i < r; ++i) x[pivot_col[i]] = m[i][ncols];
    return x;
}

/// Dense integer coefficient matrix of a bivariate polynomial with cleared
/// denominators; rows indexed by the x exponent.
struct IntGrid {
    std::vector<std::vector<Int>> c;  // c[i][j] = coeff of x^i y^j
    Int eval(const Int& x, const Int& y) const {
        Int acc = 0;
        for (int i = int(c.size()) - 1; i >= 0; --i) {
            Int row = 0;
            for (int j = int(c[i].size()) - 1; j >= 0; --j) row = row * y + c[i][j];
            acc = acc * x + row;
        }
        return acc;
    }
};

inline IntGrid cleared_bivariate(const RatPoly& p) {
    IntGrid g;
    int dx = std::max(0, p.degree_in(0)), dy = std::max(0, p.degree_in(1));
    g.c.assign(dx + 1, std::vector<Int>(dy + 1, Int(0)));
    auto [terms, den] = p.cleared();
    (void)den;  // common factor, irrelevant for the vanishing test
    for (auto& [mk, coeff] : terms) {
        Mono m = Mono::unpack(mk);
        g.c[m.e[0]][m.e[1]] = coeff;
    }
    return g;
}

inline Rat horner(std::span<const Rat> coeffs, const Rat& x) {
    Rat acc = 0;
    for (int i = int(coeffs.size()) - 1; i >= 0; --i) acc = acc * x + coeffs[i];
    return acc;
}

/// Exact test of outer(inner) == target via evaluation on a full grid: both
/// sides have per-variable degree below the grid size, so agreement on the
/// grid is agreement as polynomials.
inline bool compose_equals(const RatPoly& outer, const RatPoly& inner, const RatPoly& target) {
    if (outer.arity() != 1 || inner.arity() != target.arity()) return false;
    int dq = std::max(0, outer.degree());
    auto qc = univ_coeffs(outer);
    int ar = inner.arity();
    std::vector<int> n(ar);
    for (int v = 0; v < ar; ++v)
        n[v] = std::max(target.degree_in(v), dq * std::max(0, inner.degree_in(v))) + 1;
    std::vector<Rat> point(ar, Rat(0));
    std::vector<int> idx(ar, 0);
    while (true) {
        for (int v = 0; v < ar; ++v) point[v] = idx[v];
        Rat hv = evaluate(inner, std::span<const Rat>(point));
        if (horner(qc, hv) != evaluate(target, std::span<const Rat>(point))) return false;
        int v = 0;
        for (; v < ar; ++v) {
            if (++idx[v] < n[v]) break;
            idx[v] = 0;
        }
        if (v == ar) return true;
    }
}

inline RatPoly homogeneous_component(const RatPoly& p, unsigned d) {
    RatPoly r(p.arity());
    for (auto& [m, c] : p.terms())
        if (m.total() == d) r.add_term(m, c);
    return r;
}

/// Exact multivariate division: returns A/B when B divides A, else nullopt.
inline std::optional<RatPoly> try_exact_divide(RatPoly a, const RatPoly& b) {
    if (b.is_zero()) return std::nullopt;
    RatPoly q(a.arity());
    const Mono& lb = b.leading_monomial();
    while (!a.is_zero()) {
        const Mono& la = a.leading_monomial();
        Mono t;
        for (int v = 0; v < 4; ++v) {
            if (la.e[v] < lb.e[v]) return std::nullopt;
            t.e[v] = std::uint16_t(la.e[v] - lb.e[v]);
        }
        Rat c = a.leading_coeff() / b.leading_coeff();
        RatPoly term(a.arity());
        term.add_term(t, c);
        q += term;
        a -= term * b;
    }
    return q;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Determinant criterion.

/// Exact zero-test of the 4-variable determinant identity without expanding
/// the product: D has per-variable degree below the grid size, so vanishing
/// on the grid is equivalent to D == 0.
inline bool determinant_vanishes(const RatPoly& P) {
    if (P.arity() != 2) throw ArityMismatch();
    if (P.is_constant()) throw ConstantPolynomial();
    RatPoly P1 = partial_derivative(P, 0), P2 = partial_derivative(P, 1);
    if (P1.is_zero() || P2.is_zero()) return true;
    detail::IntGrid g1 = detail::cleared_bivariate(P1), g2 = detail::cleared_bivariate(P2);
    int na = P1.degree_in(0) + P2.degree_in(0) + 1;
    int nc = P1.degree_in(1) + P2.degree_in(1) + 1;
    std::vector<std::vector<Int>> T1(na, std::vector<Int>(nc)), T2(na, std::vector<Int>(nc));
    for (int i = 0; i < na; ++i)
        for (int k = 0; k < nc; ++k) {
            T1[i][k] = g1.eval(i, k);
            T2[i][k] = g2.eval(i, k);
        }
    // D(a,b,c,d) = -D(b,a,c,d) and D(a,a,c,d) = D(a,b,c,c) = 0, so i<j, k<l
    // covers all information.
    for (int i = 0; i < na; ++i)
        for (int j = i + 1; j < na; ++j)
            for (int k = 0; k < nc; ++k)
                for (int l = k + 1; l < nc; ++l) {
                    Int lhs = T1[i][k] * T2[i][l] * T2[j][k] * T1[j][l];
                    Int rhs = T2[i][k] * T1[i][l] * T1[j][k] * T2[j][l];
                    if (lhs != rhs) return false;
                }
    return true;
}

/// D(a,b,c,d) = P1(a,c)P2(a,d)P2(b,c)P1(b,d) - P2(a,c)P1(a,d)P1(b,c)P2(b,d),
/// fully expanded.  Identically zero iff the quadruple map's image is not
/// Zariski dense (characteristic 0).
inline RatPoly determinant_criterion(const RatPoly& P) {
    if (P.arity() != 2) throw ArityMismatch();
    if (P.is_constant()) throw ConstantPolynomial();
    RatPoly P1 = partial_derivative(P, 0), P2 = partial_derivative(P, 1);
    if (determinant_vanishes(P)) return RatPoly(4);
    auto at = [&](const RatPoly& q, int v1, int v2) {
        int map[2] = {v1, v2};
        return embed(q, 4, std::span<const int>(map, 2));
    };
    // variables: 0=a, 1=b, 2=c, 3=d
    RatPoly lhs = (at(P1, 0, 2) * at(P1, 1, 3)) * (at(P2, 0, 3) * at(P2, 1, 2));
    RatPoly rhs = (at(P2, 0, 2) * at(P2, 1, 3)) * (at(P1, 0, 3) * at(P1, 1, 2));
    return lhs - rhs;
}

// ---------------------------------------------------------------------------
// Ratio separation (P1/P2)(a,b) = f(a)/g(b).

namespace detail {

inline bool separation_identity_holds(const RatPoly& P1, const RatPoly& P2, const RatFunc& f,
                                      const RatFunc& g) {
    auto fn = univ_coeffs(f.num()), fd = univ_coeffs(f.den());
    auto gn = univ_coeffs(g.num()), gd = univ_coeffs(g.den());
    int nx = std::max(P1.degree_in(0) + int(fd.size()), P2.degree_in(0) + int(fn.size())) + 1;
    int ny = std::max(P1.degree_in(1) + int(gn.size()), P2.degree_in(1) + int(gd.size())) + 1;
    for (int ix = 0; ix < nx; ++ix) {
        Rat x = ix;
        Rat fnv = horner(fn, x), fdv = horner(fd, x);
        for (int iy = 0; iy < ny; ++iy) {
            Rat y = iy;
            Rat lhs = evaluate(P1, {x, y}) * fdv * horner(gn, y);
            Rat rhs = evaluate(P2, {x, y}) * fnv * horner(gd, y);
            if (lhs != rhs) return false;
        }
    }
    return true;
}

}  // namespace detail

/// Separated ratio: univariate f (in a) and g (in b) with
/// P1(a,b) g(b) == P2(a,b) f(a) as an exact cross-multiplied identity.
inline std::pair<RatFunc, RatFunc> separate_ratio(const RatPoly& P) {
    if (P.arity() != 2) throw ArityMismatch();
    RatPoly P1 = partial_derivative(P, 0), P2 = partial_derivative(P, 1);
    if (P1.is_zero() || P2.is_zero()) throw ValidationError("separate_ratio requires P1, P2 nonzero");

    detail::ProbeSequence bs;
    for (int t1 = 0; t1 < detail::kMaxProbeRetries; ++t1) {
        Rat b0 = bs.next();
        RatPoly p1b = specialize(P1, 1, b0), p2b = specialize(P2, 1, b0);
        if (p1b.is_zero() || p2b.is_zero()) continue;
        RatFunc f(p1b, p2b);
        detail::ProbeSequence as;
        for (int t2 = 0; t2 < detail::kMaxProbeRetries; ++t2) {
            Rat a0 = as.next();
            RatPoly p1a = specialize(P1, 0, a0), p2a = specialize(P2, 0, a0);
            if (p1a.is_zero() || p2a.is_zero()) continue;
            if (evaluate(f.den(), {a0}) == 0 || evaluate(f.num(), {a0}) == 0) continue;
            Rat fa0 = f(a0);
            RatFunc g(p2a * fa0, p1a);
            if (!detail::separation_identity_holds(P1, P2, f, g)) throw SeparationFailed();
            return {f, g};
        }
        throw ProbeDegenerate();
    }
    throw ProbeDegenerate();
}

// ---------------------------------------------------------------------------
// Residue analysis.

enum class ResidueKind { AllZero, AllRationalCommensurable, Other };

struct ResidueProfile {
    RatPoly poles{1};            ///< squarefree denominator of f
    ResidueKind kind = ResidueKind::AllZero;
    Rat lambda = 0;              ///< scale for the commensurable case
    RatPoly polynomial_part{1};  ///< polynomial summand of f
};

/// All monic polynomial solutions F, 1 <= deg F <= max_deg, of
/// F' * D == lambda * N * F, where f = N/D is reduced and proper.  The scale
/// lambda is pinned per degree m by leading coefficients: it requires
/// deg N == deg D - 1, and equals m * lc(D) / lc(N).
inline std::vector<std::pair<RatPoly, Rat>> solve_log_derivative(const RatFunc& f, int max_deg) {
    if (f.arity() != 1) throw ArityMismatch();
    auto N = univ_coeffs(f.num()), D = univ_coeffs(f.den());
    int dn = int(N.size()) - 1, dd = int(D.size()) - 1;
    if (f.is_zero() || dn >= dd) throw ImproperFraction();
    std::vector<std::pair<RatPoly, Rat>> out;
    if (dn != dd - 1) return out;
    Rat lcD = D.back(), lcN = N.back();
    for (int m = 1; m <= max_deg; ++m) {
        Rat lambda = Rat(m) * lcD / lcN;
        // Unknowns f_0..f_{m-1}; f_m = 1.  Row e = coefficient of x^e in
        // F'D - lambda N F.
        int rows = m + dd;  // degrees 0 .. m-1+dd
        std::vector<std::vector<Rat>> M(rows, std::vector<Rat>(m + 1, Rat(0)));
        auto add_contrib = [&](int k, const Rat& scale_known, int col) {
            // contribution of term f_k x^k of F: k x^{k-1} D - lambda N x^k
            for (int i = 0; i <= dd; ++i)
                if (k >= 1) {
                    int e = k - 1 + i;
                    if (col < 0)
                        M[e][m] -= scale_known * Rat(k) * D[i];
                    else
                        M[e][col] += Rat(k) * D[i];
                }
            for (int i = 0; i <= dn; ++i) {
                int e = k + i;
                if (col < 0)
                    M[e][m] += scale_known * lambda * N[i];
                else
                    M[e][col] -= lambda * N[i];
            }
        };
        for (int k = 0; k < m; ++k) add_contrib(k, 0, k);
        add_contrib(m, 1, -1);  // monic leading term moves to the rhs
        auto sol = detail::solve_linear(std::move(M), m);
        if (!sol) continue;
        std::vector<Rat> fc = *sol;
        fc.push_back(1);
        RatPoly F = univ_from_coeffs(fc);
        // exact re-verification of F' D == lambda N F
        RatPoly lhsP = partial_derivative(F, 0) * f.den();
        RatPoly rhsP = f.num() * F * lambda;
        if (lhsP == rhsP) out.emplace_back(std::move(F), lambda);
    }
    return out;
}

namespace detail {

/// Ostrogradsky remainder of a proper fraction A/D: the unique R with
/// deg R < deg D* and A/D = (C/D^-)' + R/D*, where D^- = gcd(D, D') and
/// D* = D/D^-.  R == 0 iff A/D has a rational antiderivative (all residues
/// vanish); this is the Hermite-reduction test without root finding.
inline RatPoly ostrogradsky_remainder(const RatPoly& A, const RatPoly& D) {
    RatPoly Dm = gcd_univ(D, partial_derivative(D, 0));
    RatPoly Ds = divrem_univ(D, Dm).first;
    if (Dm.degree() <= 0) return A;  // squarefree denominator: R = A
    // A = C' * Ds - C * (D'/D^- - Ds') + R * D^-
    RatPoly T = divrem_univ(partial_derivative(D, 0), Dm).first - partial_derivative(Ds, 0);
    int nc = Dm.degree();      // deg C < deg D^-
    int nr = Ds.degree();      // deg R < deg D*
    int rows = std::max(0, D.degree());
    std::vector<std::vector<Rat>> M(rows, std::vector<Rat>(nc + nr + 1, Rat(0)));
    auto accum = [&](const RatPoly& poly, int col) {
        for (auto& [mo, c] : poly.terms())
            if (int(mo.e[0]) < rows) M[mo.e[0]][col] += c;
    };
    for (int k = 0; k < nc; ++k) {
        RatPoly xk = RatPoly::variable(0, 1, 1, unsigned(k));
        RatPoly contrib = partial_derivative(xk, 0) * Ds - xk * T;
        accum(contrib, k);
    }
    for (int k = 0; k < nr; ++k) accum(RatPoly::variable(0, 1, 1, unsigned(k)) * Dm, nc + k);
    for (auto& [mo, c] : A.terms()) M[mo.e[0]][nc + nr] += c;
    auto sol = detail::solve_linear(std::move(M), nc + nr);
    if (!sol) throw Error("Ostrogradsky system inconsistent (internal bug)");
    std::vector<Rat> rc(sol->begin() + nc, sol->end());
    return univ_from_coeffs(rc);
}

}  // namespace detail

inline ResidueProfile residue_profile(const RatFunc& f, int max_deg = 16) {
    if (f.arity() != 1) throw ArityMismatch();
    ResidueProfile pr;
    pr.poles = f.den().is_constant() ? RatPoly::constant(1, 1) : squarefree_part(f.den());
    auto [q, proper] = split_polynomial_part(f);
    pr.polynomial_part = q;
    if (proper.is_zero()) {
        pr.kind = ResidueKind::AllZero;
        return pr;
    }
    RatPoly R = detail::ostrogradsky_remainder(proper.num(), proper.den());
    if (R.is_zero()) {
        pr.kind = ResidueKind::AllZero;
        return pr;
    }
    if (q.is_zero()) {
        int dn = int(univ_coeffs(f.num()).size()) - 1, dd = int(univ_coeffs(f.den()).size()) - 1;
        if (dn == dd - 1) {
            auto sols = solve_log_derivative(f, max_deg);
            if (!sols.empty()) {
                pr.kind = ResidueKind::AllRationalCommensurable;
                pr.lambda = sols.front().second;
                return pr;
            }
        }
    }
    pr.kind = ResidueKind::Other;
    return pr;
}

// ---------------------------------------------------------------------------
// Outer recovery.

/// Candidate Q with Q(h) == P, recovered by interpolation along a generic
/// slice y = y0 and verified exactly; nullopt when no such Q exists.
inline std::optional<RatPoly> recover_outer(const RatPoly& P, const RatPoly& h) {
    if (h.is_constant()) throw ConstantPolynomial();
    if (P.arity() != h.arity()) throw ArityMismatch();
    int m = std::max(0, P.degree()) / h.degree();
    detail::ProbeSequence ys;
    for (int t = 0; t < detail::kMaxProbeRetries; ++t) {
        Rat y0 = ys.next();
        std::vector<std::pair<Rat, Rat>> pts;
        detail::ProbeSequence xs;
        int budget = 16 * std::max(m, 1);
        for (int i = 0; i < budget && int(pts.size()) < m + 1; ++i) {
            Rat xi = xs.next();
            Rat hv = h.arity() == 2 ? evaluate(h, {xi, y0}) : evaluate(h, {xi});
            bool dup = false;
            for (auto& [s, v] : pts)
                if (s == hv) {
                    dup = true;
                    break;
                }
            if (dup) continue;
            Rat pv = P.arity() == 2 ? evaluate(P, {xi, y0}) : evaluate(P, {xi});
            pts.emplace_back(hv, pv);
        }
        if (int(pts.size()) < m + 1) continue;  // retry with the next y0
        RatPoly Q = interpolate_univariate(std::span<const std::pair<Rat, Rat>>(pts));
        if (detail::compose_equals(Q, h, P)) return Q;
        return std::nullopt;  // interpolation data refutes every candidate
    }
    throw ProbeDegenerate();
}

// ---------------------------------------------------------------------------
// Ritt-style univariate decomposition.

/// All nontrivial p = outer(inner) with deg outer, deg inner >= 2 and inner
/// normalized monic with zero constant term; one normalized representative
/// per degree split, ordered by deg outer ascending.
inline std::vector<std::pair<RatPoly, RatPoly>> decompose_univariate(const RatPoly& p) {
    std::vector<std::pair<RatPoly, RatPoly>> out;
    if (p.arity() != 1 || p.degree() < 2) return out;
    int n = p.degree();
    Rat an = p.leading_coeff();
    for (int m = 2; m < n; ++m) {
        if (n % m != 0) continue;
        int r = n / m;
        if (r < 2) continue;
        // inner g = x^r + c_{r-1} x^{r-1} + ... + c_1 x, solved triangularly
        // from the top coefficients of a_n g^m.
        std::vector<Rat> gc(r + 1, Rat(0));
        gc[r] = 1;
        for (int k = 1; k <= r - 1; ++k) {
            RatPoly gp = univ_from_coeffs(gc);
            RatPoly E = gp.pow(unsigned(m)) * an;
            Mono want;
            want.e[0] = std::uint16_t(n - k);
            Rat delta = p.coeff(want) - E.coeff(want);
            gc[r - k] = delta / (Rat(m) * an);
        }
        RatPoly g = univ_from_coeffs(gc);
        // g-adic digits must all be constants
        std::vector<Rat> hc;
        RatPoly rest = p;
        bool ok = true;
        while (!rest.is_zero()) {
            auto [q, rem] = divrem_univ(rest, g);
            if (rem.degree() > 0) {
                ok = false;
                break;
            }
            hc.push_back(rem.is_zero() ? Rat(0) : rem.constant_term());
            rest = std::move(q);
        }
        if (!ok || int(hc.size()) - 1 != m) continue;
        RatPoly h = univ_from_coeffs(hc);
        if (compose_outer(h, g) == p) out.emplace_back(std::move(h), std::move(g));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Composite-outer decomposition P = h(S), deg h >= 2.

namespace detail {

/// k-th root of a form given by its x-degree coefficient slice (bivariate
/// homogeneous polynomials only).
inline std::optional<RatPoly> kth_root_form(const RatPoly& form, unsigned k, bool negate_root) {
    if (form.is_zero()) return std::nullopt;
    unsigned d = unsigned(form.degree());
    if (d % k != 0) return std::nullopt;
    unsigned s = d / k;
    int tx = form.degree_in(0);
    if (tx % int(k) != 0) return std::nullopt;
    int gx = tx / int(k);
    std::vector<Rat> f(d + 1, Rat(0));
    for (auto& [m, c] : form.terms()) f[m.e[0]] = c;
    auto top_root = exact_kth_root(f[tx], k);
    if (!top_root) return std::nullopt;
    Rat gt = negate_root ? -*top_root : *top_root;
    std::vector<Rat> g(s + 1, Rat(0));
    g[gx] = gt;
    for (int j = 1; j <= gx; ++j) {
        // match coefficient of x^{tx-j}
        std::vector<Rat> cur(d + 1, Rat(0));
        {
            RatPoly gp(2);
            for (unsigned i = 0; i <= s; ++i)
                if (g[i] != 0) {
                    Mono m;
                    m.e[0] = std::uint16_t(i);
                    m.e[1] = std::uint16_t(s - i);
                    gp.add_term(m, g[i]);
                }
            RatPoly pk = gp.pow(k);
            for (auto& [m, c] : pk.terms()) cur[m.e[0]] = c;
        }
        Rat delta = f[tx - j] - cur[tx - j];
        g[gx - j] = delta / (Rat(k) * rat_pow(gt, k - 1));
    }
    RatPoly G(2);
    for (unsigned i = 0; i <= s; ++i)
        if (g[i] != 0) {
            Mono m;
            m.e[0] = std::uint16_t(i);
            m.e[1] = std::uint16_t(s - i);
            G.add_term(m, g[i]);
        }
    if (G.pow(k) == form) return G;
    return std::nullopt;
}

/// Solve h(S) = P for bivariate S degree-by-degree in total degree.
inline std::optional<RatPoly> solve_inner(const RatPoly& h, const RatPoly& P) {
    unsigned k = unsigned(h.degree());
    if (k < 2 || P.degree() <= 0 || P.degree() % int(k) != 0) return std::nullopt;
    unsigned s = unsigned(P.degree()) / k;
    Rat hk = h.leading_coeff();
    RatPoly Ptop = homogeneous_component(P, unsigned(P.degree())) * (Rat(1) / hk);
    for (bool neg : {false, true}) {
        if (neg && k % 2 == 1) break;
        auto Ss = kth_root_form(Ptop, k, neg);
        if (!Ss) continue;
        RatPoly S = *Ss;
        RatPoly denom_form = *Ss;
        denom_form = denom_form.pow(k - 1) * (Rat(k) * hk);
        bool ok = true;
        for (int dd = int(s) - 1; dd >= 0; --dd) {
            RatPoly R = P - compose_outer(h, S);
            if (R.is_zero()) break;
            int expected = (int(k) - 1) * int(s) + dd;
            if (R.degree() > expected) {
                ok = false;
                break;
            }
            if (R.degree() < expected) continue;  // this component is zero
            auto Sdd = try_exact_divide(homogeneous_component(R, unsigned(expected)), denom_form);
            if (!Sdd || Sdd->degree() != dd) {
                ok = false;
                break;
            }
            S += *Sdd;
        }
        if (ok && compose_outer(h, S) == P) return S;
    }
    return std::nullopt;
}

}  // namespace detail

/// Decomposition P = h(S) with deg h >= 2 maximal, or nullopt.  Candidate
/// outers come from a generic univariate slice: perfect-power outers first,
/// then Ritt decompositions of the slice, then the full slice itself.
inline std::optional<std::pair<RatPoly, RatPoly>> decompose_composite(const RatPoly& P) {
    if (P.arity() != 2) throw ArityMismatch();
    if (P.is_constant()) throw ConstantPolynomial();
    // A variable the polynomial actually moves in; slice along it.
    int var = P.depends_on(0) ? 0 : 1;
    int other = 1 - var;
    int dslice = P.degree_in(var);
    if (dslice < 2 && P.degree_in(other) < 2) return std::nullopt;
    if (dslice < 2) {
        var = other;
        other = 1 - var;
        dslice = P.degree_in(var);
    }

    detail::ProbeSequence ys;
    for (int attempt = 0; attempt < 8; ++attempt) {
        Rat y0 = ys.next();
        RatPoly u = specialize(P, other, y0);  // univariate in `var`
        if (u.degree() != dslice) continue;    // degree dropped; next probe

        struct Cand {
            RatPoly h;
            int cls;
        };
        std::vector<Cand> cands;
        // (i) slice is a perfect power c * q^k: candidate h = c t^k
        Rat c = u.leading_coeff();
        for (int k = dslice; k >= 2; --k) {
            if (dslice % k != 0) continue;
            // monic k-th root via the same triangular scheme
            RatPoly target = u * (Rat(1) / c);
            int r = dslice / k;
            std::vector<Rat> gc(r + 1, Rat(0));
            gc[r] = 1;
            for (int j = 1; j <= r; ++j) {
                RatPoly E = univ_from_coeffs(gc).pow(unsigned(k));
                Mono want;
                want.e[0] = std::uint16_t(dslice - j);
                Rat delta = target.coeff(want) - E.coeff(want);
                gc[r - j] = delta / Rat(k);
            }
            RatPoly q = univ_from_coeffs(gc);
            if (q.pow(unsigned(k)) * c == u)
                cands.push_back({univ_from_coeffs([&] {
                                     std::vector<Rat> hc(k + 1, Rat(0));
                                     hc[k] = c;
                                     return hc;
                                 }()),
                                 0});
        }
        // (ii) Ritt decompositions of the slice
        for (auto& [h, g] : decompose_univariate(u)) cands.push_back({h, 1});
        // (iii) the slice itself (covers inner of x-degree one)
        if (dslice >= 2) cands.push_back({u, 2});

        std::stable_sort(cands.begin(), cands.end(),
                         [](const Cand& a, const Cand& b) {
                             if (a.h.degree() != b.h.degree()) return a.h.degree() > b.h.degree();
                             return a.cls < b.cls;
                         });
        for (auto& cand : cands) {
            auto S = detail::solve_inner(cand.h, P);
            if (S) return std::make_pair(cand.h, *S);
        }
        return std::nullopt;  // a full-degree slice is decisive
    }
    throw ProbeDegenerate();
}

// ---------------------------------------------------------------------------
// Full pipeline.

enum class Verdict { DegenerateOneVariable, Additive, Multiplicative, NoStructure, Inconsistent };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::DegenerateOneVariable: return "DegenerateOneVariable";
        case Verdict::Additive: return "Additive";
        case Verdict::Multiplicative: return "Multiplicative";
        case Verdict::NoStructure: return "NoStructure";
        case Verdict::Inconsistent: return "Inconsistent";
    }
    return "?";
}

struct StructureReport {
    Verdict verdict = Verdict::Inconsistent;
    /// Degenerate case: variable the polynomial depends on (0 = x, 1 = y,
    /// -1 = constant).
    int depends_var = -1;
    RatPoly Q{1}, F{1}, G{1};
    Mono witness{};  ///< NoStructure: monomial with nonzero coefficient in D
    Rat witness_coeff = 0;
    std::string diagnostic;
    std::optional<std::pair<RatPoly, RatPoly>> composite;  ///< (h, S), deg h >= 2
    bool verified = false;
    bool refined_affine_pair = false;     ///< additive: G is an affine image of F
    bool refined_shared_radical = false;  ///< multiplicative: rad F == rad G
};

/// Heuristic lift of a mod-p polynomial to characteristic zero: every
/// coefficient is reduced mod p and mapped to the representative in
/// (-p/2, p/2].
inline RatPoly lift_centered(const RatPoly& P, const PrimeField& field) {
    RatPoly out(P.arity());
    Int p(field.p());
    for (auto& [m, c] : P.terms()) {
        u64 r = reduce_mod(c, field);
        Int v(r);
        if (v > p / 2) v -= p;
        out.add_term(m, Rat(v));
    }
    return out;
}

inline StructureReport classify(const RatPoly& Pin, bool with_composite = true) {
    if (Pin.arity() != 2) throw ArityMismatch();
    if (Pin.is_zero()) throw ValidationError("classify requires a nonzero polynomial");
    const RatPoly& P = Pin;
    StructureReport rep;

    RatPoly P1 = partial_derivative(P, 0), P2 = partial_derivative(P, 1);
    if (P1.is_zero() || P2.is_zero()) {
        rep.verdict = Verdict::DegenerateOneVariable;
        rep.depends_var = P1.is_zero() ? (P2.is_zero() ? -1 : 1) : 0;
        rep.verified = true;
        if (with_composite && !P.is_constant()) {
            try {
                rep.composite = decompose_composite(P);
            } catch (const Error&) {
            }
        }
        return rep;
    }

    if (!determinant_vanishes(P)) {
        RatPoly D = determinant_criterion(P);
        rep.verdict = Verdict::NoStructure;
        rep.witness = D.leading_monomial();
        rep.witness_coeff = D.leading_coeff();
        rep.verified = true;
        if (with_composite) rep.composite = decompose_composite(P);
        return rep;
    }

    auto inconsistent = [&](const std::string& why) {
        rep.verdict = Verdict::Inconsistent;
        rep.diagnostic = why;
        rep.verified = false;
        return rep;
    };

    RatFunc f, g;
    try {
        std::tie(f, g) = separate_ratio(P);
    } catch (const Error& e) {
        return inconsistent(std::string("separation failed: ") + e.what());
    }

    if (with_composite) rep.composite = decompose_composite(P);

    auto finish = [&](Verdict v, RatPoly Q, RatPoly F, RatPoly G) {
        rep.verdict = v;
        rep.Q = std::move(Q);
        rep.F = std::move(F);
        rep.G = std::move(G);
        rep.verified = true;
        if (v == Verdict::Additive) {
            // refined weak form Q(aF(x)+bF(y)): G - G(0) a scalar multiple of F
            RatPoly Gs = rep.G - RatPoly::constant(rep.G.constant_term(), 1);
            if (!Gs.is_zero() && !rep.F.is_zero() && Gs.degree() == rep.F.degree()) {
                Rat alpha = Gs.leading_coeff() / rep.F.leading_coeff();
                rep.refined_affine_pair = (rep.F * alpha == Gs);
            }
        } else if (v == Verdict::Multiplicative) {
            rep.refined_shared_radical = (squarefree_part(rep.F) == squarefree_part(rep.G));
        }
        return rep;
    };

    bool f_poly = f.is_polynomial(), g_poly = g.is_polynomial();
    if (f_poly && g_poly) {
        auto [fq, fr] = split_polynomial_part(f);
        auto [gq, gr] = split_polynomial_part(g);
        RatPoly F = antiderivative_univ(fq);  // constant term 0 by construction
        RatPoly G = antiderivative_univ(gq);
        RatPoly h = embed(F, 2, {0}) + embed(G, 2, {1});
        if (h.is_constant()) return inconsistent("degenerate additive inner F(x)+G(y)");
        auto Q = recover_outer(P, h);
        if (Q) return finish(Verdict::Additive, *Q, F, G);
        return inconsistent("additive outer recovery failed");
    }

    // Multiplicative path (also the first stop for mixed profiles).
    auto [fq, fprop] = split_polynomial_part(f);
    auto [gq, gprop] = split_polynomial_part(g);
    int cap = std::max(P.degree_in(0), P.degree_in(1));
    std::vector<std::pair<RatPoly, Rat>> Fs, Gs;
    try {
        if (!fprop.is_zero()) Fs = solve_log_derivative(fprop, cap);
        if (!gprop.is_zero()) Gs = solve_log_derivative(gprop, cap);
    } catch (const Error& e) {
        return inconsistent(std::string("log-derivative solve failed: ") + e.what());
    }
    for (auto& [F, lf] : Fs) {
        for (auto& [G, lg] : Gs) {
            RatPoly h = embed(F, 2, {0}) * embed(G, 2, {1});
            if (h.is_constant()) continue;
            auto Q = recover_outer(P, h);
            if (Q) return finish(Verdict::Multiplicative, *Q, F, G);
        }
    }
    return inconsistent("no multiplicative candidate pair verified");
}

}  // namespace explab
