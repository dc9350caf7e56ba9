#ifndef GENFIELD_RATIONAL_HPP
#define GENFIELD_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "genfield/errors.hpp"

namespace genfield {

using Int = mpz_class;
using Rat = mpq_class;

using QVec = std::vector<Rat>;
using ZVec = std::vector<Int>;

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) fail(errc::division_by_zero, "rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// "p/q" (or "p") in lowest terms, q > 0.
inline std::string rat_to_string(const Rat& q) {
    if (is_integer(q)) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::optional<Rat> rat_from_string(const std::string& s) {
    if (s.empty()) return std::nullopt;
    mpq_class q;
    if (q.set_str(s, 10) != 0) return std::nullopt;
    if (q.get_den() == 0) return std::nullopt;
    q.canonicalize();
    return q;
}

// Trial-division squarefree test; full up to sqrt(n), so exact.  Adequate
// for desk-scale discriminants.
inline bool is_squarefree(Int n) {
    if (n == 0) return false;
    n = abs(n);
    for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return false;
        }
    }
    return true;
}

// Primes p with p^2 | n.  nullopt when the square part cannot be certified
// with trial division at desk scale.
inline std::optional<std::vector<std::uint64_t>> square_prime_divisors(Int n) {
    n = abs(n);
    std::vector<std::uint64_t> out;
    if (n <= 1) return out;
    for (Int p = 2; p * p <= n && p <= 1000000; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            if (e >= 2) out.push_back(p.get_ui());
        }
    }
    if (n > 1) {
        if (mpz_perfect_square_p(n.get_mpz_t())) {
            Int root;
            mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
            if (mpz_probab_prime_p(root.get_mpz_t(), 40)) {
                out.push_back(root.get_ui());
                return out;
            }
            return std::nullopt;
        }
        if (mpz_probab_prime_p(n.get_mpz_t(), 40)) return out;
        // Composite cofactor with all prime factors beyond the trial bound:
        // squarefree whenever it is too small to hold p^2 with p > bound.
        if (n < Int("1000000000000")) return out;
        return std::nullopt;
    }
    return out;
}

inline std::vector<std::uint64_t> first_primes(std::size_t count, std::uint64_t start = 2) {
    std::vector<std::uint64_t> out;
    Int p(static_cast<unsigned long>(start == 2 ? 1 : start - 1));
    while (out.size() < count) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        out.push_back(p.get_ui());
    }
    return out;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t result = n;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

} // namespace genfield

#endif
