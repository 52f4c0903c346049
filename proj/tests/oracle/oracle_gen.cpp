// Standalone brute-force oracle.  Regenerates every frozen value asserted by
// the test suite using naive enumeration only; it deliberately shares no code
// with the library (the subset sampler below is the pinned definition both
// sides implement).  Build and run:
//   g++ -O2 -std=c++20 -o oracle_gen oracle_gen.cpp && ./oracle_gen
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <vector>

using u64 = std::uint64_t;
using u128 = unsigned __int128;

static u64 mulmod(u64 a, u64 b, u64 m) { return (u128)a * b % m; }
static u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    for (; e; e >>= 1) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
    }
    return r;
}

// Pinned sampler: mt19937_64(seed), v = rng() % p, reject repeats, ascending.
static std::vector<u64> random_subset(u64 p, u64 size, u64 seed) {
    std::mt19937_64 rng(seed);
    std::vector<bool> used(p, false);
    u64 n = 0;
    while (n < size) {
        u64 v = rng() % p;
        if (!used[v]) {
            used[v] = true;
            ++n;
        }
    }
    std::vector<u64> out;
    for (u64 v = 0; v < p; ++v)
        if (used[v]) out.push_back(v);
    return out;
}

static u64 shk(u64 x, u64 y, u64 p) { return (mulmod(x, x, p) + mulmod(x, y, p)) % p; }  // x^2 + x*y

static u64 image_size(u64 p, const std::vector<u64>& A, const std::vector<u64>& B, u64 (*P)(u64, u64, u64)) {
    std::vector<bool> hit(p, false);
    for (u64 a : A)
        for (u64 b : B) hit[P(a, b, p)] = true;
    u64 n = 0;
    for (u64 v = 0; v < p; ++v) n += hit[v];
    return n;
}

int main() {
    // --- image sets -------------------------------------------------------
    {
        u64 p = 101;
        auto A = random_subset(p, 50, 1);
        std::printf("image x^2+xy GF(101) A=B=random(50,seed1): %llu\n",
                    (unsigned long long)image_size(p, A, A, shk));
    }
    {
        u64 p = 1009;
        auto A = random_subset(p, 957, 3);
        std::printf("image x^2+xy GF(1009) A=B=random(957,seed3): %llu (p/4=%g)\n",
                    (unsigned long long)image_size(p, A, A, shk), p / 4.0);
        auto A2 = random_subset(p, 714, 3);
        std::printf("image x^2+xy GF(1009) A=B=random(714,seed3): %llu\n",
                    (unsigned long long)image_size(p, A2, A2, shk));
        // x+y on the interval A = {0..956}: exact wrapped sumset.
        std::vector<u64> I(957);
        for (u64 i = 0; i < 957; ++i) I[i] = i;
        std::printf("image x+y GF(1009) A=B=interval(0,957): %llu\n",
                    (unsigned long long)image_size(p, I, I, [](u64 a, u64 b, u64 q) { return (a + b) % q; }));
    }

    // --- quadruple statistics at p = 31 ------------------------------------
    {
        const u64 p = 31;
        auto count_distinct = [&](u64 (*P)(u64, u64, u64)) {
            std::vector<u64> M(p * p);
            for (u64 a = 0; a < p; ++a)
                for (u64 c = 0; c < p; ++c) M[a * p + c] = P(a, c, p);
            std::vector<u64> keys;
            keys.reserve(p * p * p * p);
            for (u64 a = 0; a < p; ++a)
                for (u64 b = 0; b < p; ++b)
                    for (u64 c = 0; c < p; ++c)
                        for (u64 d = 0; d < p; ++d)
                            keys.push_back(((M[a * p + c] * p + M[a * p + d]) * p + M[b * p + c]) * p + M[b * p + d]);
            std::sort(keys.begin(), keys.end());
            return (u64)(std::unique(keys.begin(), keys.end()) - keys.begin());
        };
        std::printf("quadruples p=31 x+y distinct: %llu (p^3=%llu)\n",
                    (unsigned long long)count_distinct([](u64 a, u64 b, u64 q) { return (a + b) % q; }),
                    (unsigned long long)(p * p * p));
        std::printf("quadruples p=31 x*y distinct: %llu\n",
                    (unsigned long long)count_distinct([](u64 a, u64 b, u64 q) { return mulmod(a, b, q); }));
        u64 dq = count_distinct(shk);
        std::printf("quadruples p=31 x^2+xy distinct: %llu (0.3*p^4=%g)\n", (unsigned long long)dq,
                    0.3 * p * p * p * p);
    }

    // --- triple incidence p = 101, |A|=|B|=|C|=50, seeds 7,8,9 -------------
    {
        u64 p = 101;
        auto A = random_subset(p, 50, 7), B = random_subset(p, 50, 8), C = random_subset(p, 50, 9);
        std::vector<bool> inC(p, false);
        for (u64 c : C) inC[c] = true;
        u64 cnt = 0;
        for (u64 a : A)
            for (u64 b : B) cnt += inC[shk(a, b, p)];
        double main_term = 50.0 * 50.0 * 50.0 / p;
        double residual = (cnt - main_term) / (std::sqrt((double)p) * std::sqrt(2500.0));
        std::printf("incidence x^2+xy GF(101) seeds(7,8,9) size50: count=%llu main=%.6f residual=%.6f\n",
                    (unsigned long long)cnt, main_term, residual);
    }

    // --- fibre histogram p = 31, x^2+xy -------------------------------------
    {
        u64 p = 31;
        std::vector<u64> fib(p, 0);
        for (u64 a = 0; a < p; ++a)
            for (u64 b = 0; b < p; ++b) ++fib[shk(a, b, p)];
        u64 mx = 0, mn = ~0ull;
        for (u64 v : fib) {
            mx = std::max(mx, v);
            mn = std::min(mn, v);
        }
        std::map<u64, u64> hist;
        for (u64 v : fib) ++hist[v];
        std::printf("fibres p=31 x^2+xy: min=%llu max=%llu sizes{", (unsigned long long)mn, (unsigned long long)mx);
        for (auto& [s, c] : hist) std::printf(" %llu:%llu", (unsigned long long)s, (unsigned long long)c);
        std::printf(" }\n");
    }

    // --- Paley codegrees (strict: edge iff v-w nonzero QR) ------------------
    for (u64 p : {13ull, 17ull, 29ull}) {
        std::vector<bool> qr(p, false);
        for (u64 y = 1; y < p; ++y) qr[mulmod(y, y, p)] = true;  // nonzero squares
        std::set<u64> mus;
        for (u64 w = 0; w < p; ++w)
            for (u64 w2 = 0; w2 < p; ++w2) {
                if (w == w2) continue;
                u64 mu = 0;
                for (u64 v = 0; v < p; ++v) mu += (v != w && qr[(v - w + p) % p]) && (v != w2 && qr[(v - w2 + p) % p]);
                mus.insert(mu);
            }
        std::printf("paley codegrees p=%llu: {", (unsigned long long)p);
        for (u64 m : mus) std::printf(" %llu", (unsigned long long)m);
        std::printf(" } expected {%llu,%llu}\n", (unsigned long long)((p - 5) / 4), (unsigned long long)((p - 1) / 4));
    }

    // --- geometric progression image (criterion 7) --------------------------
    {
        u64 p = 1009;
        // smallest primitive root
        u64 g = 0;
        for (u64 cand = 2; cand < p; ++cand) {
            u64 x = 1, ord = 0;
            do {
                x = mulmod(x, cand, p);
                ++ord;
            } while (x != 1);
            if (ord == p - 1) {
                g = cand;
                break;
            }
        }
        std::vector<u64> G;
        u64 x = 1;
        for (int i = 0; i < 100; ++i) {
            G.push_back(x);
            x = mulmod(x, g, p);
        }
        std::printf("GF(1009) smallest generator: %llu, |xy image of GP(1,g,100)|=%llu (2*100-1=199)\n",
                    (unsigned long long)g,
                    (unsigned long long)image_size(p, G, G, [](u64 a, u64 b, u64 q) { return mulmod(a, b, q); }));
    }

    // --- character sums (direct double-precision summation) -----------------
    {
        const double TAU = 6.283185307179586476925;
        // additive sum for t^3 over p=101
        {
            u64 p = 101;
            std::complex<double> s = 0;
            for (u64 t = 0; t < p; ++t) s += std::polar(1.0, TAU * (double)powmod(t, 3, p) / p);
            std::printf("additive |sum e(t^3/101)| = %.9f (2*sqrt(101)=%.9f)\n", std::abs(s),
                        2 * std::sqrt(101.0));
        }
        // multiplicative: legendre(t)*legendre(t+1) over p=13
        {
            u64 p = 13;
            auto leg = [&](u64 v) -> int {
                v %= p;
                if (!v) return 0;
                return powmod(v, (p - 1) / 2, p) == 1 ? 1 : -1;
            };
            double s = 0;
            for (u64 t = 0; t < p; ++t) {
                int l1 = leg(t), l2 = leg(t + 1);
                if (l1 && l2) s += l1 * l2;
            }
            std::printf("mult |sum leg(t)leg(t+1)| p=13 = %.9f (2*sqrt13=%.9f)\n", std::abs(s),
                        2 * std::sqrt(13.0));
        }
        // twisted: E = QR set (incl 0), f = t, g = t, legendre, p=13
        {
            u64 p = 13;
            auto leg = [&](u64 v) -> int {
                v %= p;
                if (!v) return 0;
                return powmod(v, (p - 1) / 2, p) == 1 ? 1 : -1;
            };
            std::complex<double> s = 0;
            for (u64 x = 0; x < p; ++x) {
                bool inE = (x == 0) || powmod(x, (p - 1) / 2, p) == 1;
                if (!inE || leg(x) == 0) continue;
                s += (double)leg(x) * std::polar(1.0, TAU * (double)x / p);
            }
            std::printf("twisted |sum_{x in QRset} leg(x) e(x/13)| = %.9f\n", std::abs(s));
        }
    }

    // --- Hasse data: seeded (a,b) per p, brute-force N ----------------------
    for (u64 p : {5ull, 13ull, 101ull, 199ull}) {
        std::mt19937_64 rng(2026);
        std::printf("hasse p=%llu:", (unsigned long long)p);
        int made = 0;
        while (made < 10) {
            u64 a = rng() % p, b = rng() % p;
            u64 disc = (4 * powmod(a, 3, p) + 27 * mulmod(b, b, p)) % p;
            if (disc == 0) continue;
            ++made;
            u64 N = 0;
            for (u64 x = 0; x < p; ++x) {
                u64 rhs = (powmod(x, 3, p) + mulmod(a, x, p) + b) % p;
                for (u64 y = 0; y < p; ++y)
                    if (mulmod(y, y, p) == rhs) ++N;
            }
            std::printf(" (a=%llu,b=%llu,N=%llu)", (unsigned long long)a, (unsigned long long)b,
                        (unsigned long long)N);
        }
        std::printf("\n");
    }

    return 0;
}
