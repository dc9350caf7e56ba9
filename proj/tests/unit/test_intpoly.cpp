#include <catch2/catch_amalgamated.hpp>

#include "genfield/intpoly.hpp"
#include "genfield/modpoly.hpp"

using namespace genfield;

namespace {

// Independent oracle: resultant as the product formula evaluated through a
// naive expansion of det over permutations is too slow, so we instead check
// against hand-expanded small cases and the multiplicativity law.
Int pow_int(Int b, unsigned e) {
    Int r(1);
    while (e--) r *= b;
    return r;
}

} // namespace

TEST_CASE("polynomial arithmetic basics") {
    IntPolynomial f{1, 0, 1};  // x^2 + 1
    IntPolynomial g{-1, 1};    // x - 1
    CHECK((f * g).coeffs() == ZVec{-1, 1, -1, 1});
    CHECK((f + g).coeffs() == ZVec{0, 1, 1});
    CHECK(f.eval(Rat(2)) == 5);
    CHECK(f.derivative().coeffs() == ZVec{0, 2});
    CHECK(IntPolynomial{2, 4, 6}.primitive().coeffs() == ZVec{1, 2, 3});
    CHECK(IntPolynomial{-2, -4}.primitive().coeffs() == ZVec{1, 2});
    CHECK((f * g).divexact(g) == f);
}

TEST_CASE("resultant and discriminant against closed forms") {
    // disc(x^2 + bx + c) = b^2 - 4c
    for (long b = -3; b <= 3; ++b)
        for (long c = -3; c <= 3; ++c) {
            IntPolynomial f{c, b, 1};
            CHECK(poly_discriminant(f) == Int(b * b - 4 * c));
        }
    // disc(x^3 + px + q) = -4p^3 - 27q^2
    for (long p = -3; p <= 3; ++p)
        for (long q = -3; q <= 3; ++q) {
            IntPolynomial f{q, p, 0, 1};
            CHECK(poly_discriminant(f) == Int(-4 * p * p * p - 27 * q * q));
        }
    // disc(x^4 + px^2 + q) = 16 p^4 q - 128 p^2 q^2 + 256 q^3
    {
        IntPolynomial f{1, 0, 4, 0, 1};
        CHECK(poly_discriminant(f) == Int(16 * 256 - 128 * 16 + 256));
        CHECK(poly_discriminant(f) == Int(2304));
    }
    // disc(x^4 + x + 1) = -27 + 256 = 229
    CHECK(poly_discriminant(IntPolynomial{1, 1, 0, 0, 1}) == Int(229));
    // Res multiplicativity: Res(fg, h) = Res(f, h) Res(g, h)
    IntPolynomial f{1, 2, 1}, g{-3, 0, 1}, h{5, -1, 2};
    CHECK(resultant(f * g, h) == resultant(f, h) * resultant(g, h));
    // Res(f, g) = lc(g)^deg f * prod f(roots of g): for g = x - a this is f(a)
    for (long a = -4; a <= 4; ++a) {
        IntPolynomial lin{-a, 1};
        CHECK(resultant(f, lin) == f.eval(Int(a)));
    }
    CHECK(pow_int(Int(3), 2) == 9);
}

TEST_CASE("sturm real root counting") {
    CHECK(count_real_roots(IntPolynomial{-2, 0, 1}) == 2);     // x^2 - 2
    CHECK(count_real_roots(IntPolynomial{1, 0, 1}) == 0);      // x^2 + 1
    CHECK(count_real_roots(IntPolynomial{1, 1, 0, 0, 1}) == 0); // x^4 + x + 1
    CHECK(count_real_roots(IntPolynomial{1, 0, 4, 0, 1}) == 0); // x^4 + 4x^2 + 1
    CHECK(count_real_roots(IntPolynomial{0, -1, 0, 1}) == 3);  // x^3 - x
    CHECK(count_real_roots(IntPolynomial{-1, 1}) == 1);
    // Phi_5 has no real roots
    CHECK(count_real_roots(cyclotomic(5)) == 0);
    // totally real quartic: x^4 - 4x^2 + 1 (roots +-sqrt(2 +- sqrt 3))
    CHECK(count_real_roots(IntPolynomial{1, 0, -4, 0, 1}) == 4);
}

TEST_CASE("real root isolation and refinement") {
    IntPolynomial f{-2, 0, 1}; // x^2 - 2
    auto roots = isolate_real_roots(f);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].hi < roots[1].lo);
    auto r = refine_root(f, roots[1], Rat(1, 1000000));
    // sqrt(2) = 1.41421356...
    CHECK(r.lo <= Rat(14142136, 10000000));
    CHECK(r.hi >= Rat(14142135, 10000000));
    CHECK(r.width() <= Rat(1, 1000000));

    // exact rational roots are collapsed to points
    IntPolynomial g{-6, 11, -6, 1}; // (x-1)(x-2)(x-3)
    auto gr = isolate_real_roots(g);
    REQUIRE(gr.size() == 3);
    for (const auto& iv : gr) CHECK(g.eval(iv.mid()) * g.eval(iv.mid()) >= 0);
    auto g1 = refine_root(g, gr[0], Rat(1, 1 << 20));
    CHECK(g1.lo <= 1);
    CHECK(g1.hi >= 1);
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic(1).coeffs() == ZVec{-1, 1});
    CHECK(cyclotomic(2).coeffs() == ZVec{1, 1});
    CHECK(cyclotomic(4).coeffs() == ZVec{1, 0, 1});
    CHECK(cyclotomic(5).coeffs() == ZVec{1, 1, 1, 1, 1});
    CHECK(cyclotomic(6).coeffs() == ZVec{1, -1, 1});
    CHECK(cyclotomic(12).coeffs() == ZVec{1, 0, -1, 0, 1});
    // product over divisors reassembles x^n - 1
    for (std::uint64_t n : {6u, 8u, 12u, 15u}) {
        IntPolynomial prod{1};
        for (std::uint64_t d = 1; d <= n; ++d)
            if (n % d == 0) prod = prod * cyclotomic(d);
        ZVec expect(n + 1, Int(0));
        expect[0] = -1;
        expect[n] = 1;
        CHECK(prod.coeffs() == expect);
    }
    CHECK(cyclotomic_index(cyclotomic(5)) == 5);
    CHECK(cyclotomic_index(cyclotomic(12)) == 12);
    CHECK(!cyclotomic_index(IntPolynomial{-2, 0, 1}).has_value());
    CHECK(cyclotomic_index(IntPolynomial{1, 1}) == 2);
}

TEST_CASE("irreducibility sieve") {
    CHECK(irreducibility_sieve(IntPolynomial{1, 0, 1}));          // x^2+1
    CHECK(irreducibility_sieve(IntPolynomial{-2, 0, 1}));         // x^2-2
    CHECK(irreducibility_sieve(IntPolynomial{1, 1, 0, 0, 1}));    // x^4+x+1 (S4)
    CHECK(irreducibility_sieve(cyclotomic(5)));
    CHECK(irreducibility_sieve(cyclotomic(7)));
    CHECK(!irreducibility_sieve(IntPolynomial{-1, 0, 1}));        // (x-1)(x+1)
    CHECK(!irreducibility_sieve(IntPolynomial{1, 2, 1}));         // (x+1)^2, disc 0
    // V4 Galois closure: the sieve can never certify these, by design.
    CHECK(!irreducibility_sieve(IntPolynomial{1, 0, 4, 0, 1}));
    CHECK(!irreducibility_sieve(cyclotomic(8)));
    CHECK(!irreducibility_sieve(cyclotomic(12)));
}

TEST_CASE("mod-p factor degrees") {
    // x^2 + 1 mod 3 irreducible; mod 5 splits
    CHECK(modp::factor_degrees(IntPolynomial{1, 0, 1}, 3) == std::vector<int>{2});
    CHECK(modp::factor_degrees(IntPolynomial{1, 0, 1}, 5) == std::vector<int>{1, 1});
    // Phi_5 mod 2 irreducible (2 is a primitive root mod 5)
    CHECK(modp::factor_degrees(cyclotomic(5), 2) == std::vector<int>{4});
    // Phi_5 mod 19: 19 = 4 mod 5 has order 2, so two quadratic factors
    CHECK(modp::factor_degrees(cyclotomic(5), 19) == std::vector<int>{2, 2});
    // Phi_5 mod 11: 11 = 1 mod 5 splits completely
    CHECK(modp::factor_degrees(cyclotomic(5), 11) == std::vector<int>{1, 1, 1, 1});
}

TEST_CASE("cauchy bound") {
    IntPolynomial f{-2, 0, 1};
    CHECK(cauchy_root_bound(f) >= 2); // sqrt(2) < bound
    CHECK(cauchy_root_bound(IntPolynomial{100, 0, 1}) >= 101);
}
