#ifndef GENFIELD_MODPOLY_HPP
#define GENFIELD_MODPOLY_HPP

#include <cstdint>
#include <vector>

#include "genfield/intpoly.hpp"
#include "genfield/rational.hpp"

namespace genfield {
namespace modp {

using Poly = std::vector<std::uint64_t>; // ascending, reduced mod p

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
    // Fermat; p prime.
    std::uint64_t r = 1, e = p - 2, base = a % p;
    while (e) {
        if (e & 1) r = mulmod(r, base, p);
        base = mulmod(base, base, p);
        e >>= 1;
    }
    return r;
}

inline Poly reduce(const IntPolynomial& f, std::uint64_t p) {
    Poly a(f.coeffs().size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        Int r = f.coeffs()[i] % static_cast<long>(p);
        if (r < 0) r += static_cast<long>(p);
        a[i] = r.get_ui();
    }
    trim(a);
    return a;
}

inline Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + static_cast<unsigned __int128>(a[i]) * b[j]) % p;
    }
    trim(c);
    return c;
}

inline Poly rem(Poly a, const Poly& m, std::uint64_t p) {
    trim(a);
    std::uint64_t lead_inv = invmod(m.back(), p);
    while (a.size() >= m.size()) {
        std::uint64_t q = mulmod(a.back(), lead_inv, p);
        std::size_t shift = a.size() - m.size();
        if (q)
            for (std::size_t i = 0; i < m.size(); ++i) {
                std::uint64_t sub = mulmod(q, m[i], p);
                a[shift + i] = (a[shift + i] + p - sub) % p;
            }
        a.pop_back();
        trim(a);
        if (a.empty()) break;
    }
    return a;
}

inline Poly gcd(Poly a, Poly b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        std::uint64_t inv = invmod(a.back(), p);
        for (auto& v : a) v = mulmod(v, inv, p);
    }
    return a;
}

inline Poly powmod_x(std::uint64_t e, const Poly& m, std::uint64_t p) {
    // x^e mod m
    Poly result{1}, base{0, 1};
    base = rem(base, m, p);
    while (e) {
        if (e & 1) result = rem(mul(result, base, p), m, p);
        base = rem(mul(base, base, p), m, p);
        e >>= 1;
    }
    return result;
}

inline Poly powmod(Poly b, std::uint64_t e, const Poly& m, std::uint64_t p) {
    Poly result{1};
    b = rem(std::move(b), m, p);
    while (e) {
        if (e & 1) result = rem(mul(result, b, p), m, p);
        b = rem(mul(b, b, p), m, p);
        e >>= 1;
    }
    return result;
}

inline Poly divexact(const Poly& a_in, const Poly& d, std::uint64_t p) {
    Poly a = a_in;
    trim(a);
    if (a.empty()) return {};
    std::uint64_t lead_inv = invmod(d.back(), p);
    Poly q(a.size() - d.size() + 1, 0);
    while (a.size() >= d.size()) {
        std::uint64_t qc = mulmod(a.back(), lead_inv, p);
        std::size_t shift = a.size() - d.size();
        q[shift] = qc;
        for (std::size_t i = 0; i < d.size(); ++i) {
            std::uint64_t sub = mulmod(qc, d[i], p);
            a[shift + i] = (a[shift + i] + p - sub) % p;
        }
        a.pop_back();
        trim(a);
        if (a.empty()) break;
    }
    return q;
}

inline Poly derivative(const Poly& a, std::uint64_t p) {
    if (a.size() <= 1) return {};
    Poly d(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = mulmod(a[i], i % p, p);
    trim(d);
    return d;
}

// Product of the distinct irreducible factors of f in F_p[x], monic.
inline Poly radical(Poly f, std::uint64_t p) {
    trim(f);
    if (f.size() <= 1) return {1};
    Poly fp = derivative(f, p);
    if (fp.empty()) {
        // f = u(x^p); p-th roots of coefficients are the coefficients.
        Poly u((f.size() - 1) / p + 1);
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = f[i * p];
        return radical(u, p);
    }
    Poly c = gcd(f, fp, p);
    Poly w = divexact(f, c, p); // squarefree part with exponent not divisible by p
    while (true) {
        Poly d = gcd(c, w, p);
        if (d.size() <= 1) break;
        c = divexact(c, d, p);
    }
    // c now collects factors with exponent divisible by p, i.e. c = v(x)^p.
    Poly rest = radical(c, p);
    Poly r = mul(w, rest, p);
    std::uint64_t inv = invmod(r.back(), p);
    for (auto& v : r) v = mulmod(v, inv, p);
    return r;
}

// Dedekind's criterion: is Z[theta] maximal at p for the monic integer f?
inline bool dedekind_p_maximal(const IntPolynomial& f, std::uint64_t p) {
    Poly fbar = reduce(f, p);
    Poly gbar = radical(fbar, p);
    Poly hbar = divexact(fbar, gbar, p);
    auto lift = [&](const Poly& a) {
        ZVec c(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) c[i] = Int(static_cast<unsigned long>(a[i]));
        return IntPolynomial(std::move(c));
    };
    IntPolynomial g = lift(gbar), h = lift(hbar);
    IntPolynomial diff = g * h - f;
    ZVec tc(diff.coeffs());
    for (auto& v : tc) {
        if (v % static_cast<long>(p) != 0) fail(errc::internal_inconsistency, "g*h != f mod p");
        v /= static_cast<long>(p);
    }
    Poly tbar = reduce(IntPolynomial(std::move(tc)), p);
    Poly d = gcd(gcd(tbar, gbar, p), hbar, p);
    return d.size() <= 1;
}

// Degrees (with multiplicity in count) of the irreducible factors of f mod p,
// for f squarefree mod p, via distinct-degree factorization.
inline std::vector<int> factor_degrees(const IntPolynomial& f, std::uint64_t p) {
    Poly g = reduce(f, p);
    std::vector<int> degrees;
    Poly h{0, 1}; // x
    h = rem(h, g, p);
    int k = 0;
    while (static_cast<int>(g.size()) - 1 > 0) {
        ++k;
        if (2 * k > static_cast<int>(g.size()) - 1) {
            degrees.push_back(static_cast<int>(g.size()) - 1);
            break;
        }
        h = powmod(h, p, g, p); // x^(p^k) mod g
        Poly hx = h;
        // h - x
        if (hx.size() < 2) hx.resize(2, 0);
        hx[1] = (hx[1] + p - 1) % p;
        trim(hx);
        Poly d = gcd(g, hx, p);
        if (static_cast<int>(d.size()) - 1 > 0) {
            int count = (static_cast<int>(d.size()) - 1) / k;
            for (int i = 0; i < count; ++i) degrees.push_back(k);
            // g /= d
            Poly q;
            {
                // exact division in F_p[x]
                Poly a = g;
                std::uint64_t lead_inv = invmod(d.back(), p);
                q.assign(a.size() - d.size() + 1, 0);
                while (a.size() >= d.size()) {
                    std::uint64_t qc = mulmod(a.back(), lead_inv, p);
                    std::size_t shift = a.size() - d.size();
                    q[shift] = qc;
                    for (std::size_t i = 0; i < d.size(); ++i) {
                        std::uint64_t sub = mulmod(qc, d[i], p);
                        a[shift + i] = (a[shift + i] + p - sub) % p;
                    }
                    a.pop_back();
                    trim(a);
                    if (a.empty()) break;
                }
            }
            g = std::move(q);
            trim(g);
            h = rem(h, g, p);
        }
    }
    return degrees;
}

} // namespace modp

// Factor-pattern irreducibility sieve: reduce f modulo the first `prime_count`
// primes not dividing disc(f); f is certified irreducible when the observed
// factor patterns jointly rule out every proper factor degree.  Returns
// true = certified irreducible, false = inconclusive (or genuinely reducible).
inline bool irreducibility_sieve(const IntPolynomial& f, std::size_t prime_count = 25) {
    const int d = f.degree();
    if (d <= 0) return false;
    if (d == 1) return true;
    Int disc = poly_discriminant(f);
    if (disc == 0) return false; // repeated factor
    // Rational root test knocks out linear factors cheaply: a monic integer
    // polynomial's rational roots are integer divisors of the constant term.
    std::uint32_t possible = (1u << d) - 2u; // degrees 1..d-1 as bits 1..d-1
    std::size_t used = 0;
    Int p_iter(1);
    while (used < prime_count && possible != 0) {
        mpz_nextprime(p_iter.get_mpz_t(), p_iter.get_mpz_t());
        std::uint64_t p = p_iter.get_ui();
        if (disc % p_iter == 0) continue;
        ++used;
        auto degrees = modp::factor_degrees(f, p);
        // Subset sums of the factor-degree multiset.
        std::uint32_t sums = 1; // empty sum
        for (int deg : degrees) sums |= sums << deg;
        std::uint32_t proper = sums & ~1u & ~(1u << d) & ((1u << (d + 1)) - 1);
        possible &= proper;
    }
    return possible == 0;
}

} // namespace genfield

#endif
