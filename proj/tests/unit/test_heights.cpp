#include <catch2/catch_amalgamated.hpp>

#include "genfield/compositum.hpp"
#include "genfield/heights.hpp"

using namespace genfield;

namespace {

FieldPtr cyclotomic_field(std::uint64_t n) {
    IntPolynomial phi = cyclotomic(n);
    return make_field(phi, QMatrix::identity(static_cast<std::size_t>(phi.degree())),
                      /*assert_irreducible=*/true, "Q(zeta_" + std::to_string(n) + ")");
}

} // namespace

TEST_CASE("absolute values") {
    auto gauss = make_field(IntPolynomial{1, 0, 1});
    auto ps = compute_places(gauss, 128);
    auto two = gauss->rational_element(Rat(2));
    CHECK(absolute_value(two, *ps, 0).contains(Rat(2))); // d_v/d = 1

    auto one_plus_i = gauss->element({Rat(1), Rat(1)});
    auto v = absolute_value(one_plus_i, *ps, 0);
    CHECK(v.sqr().contains(Rat(2))); // |1+i|_v = sqrt(2)

    auto z5 = cyclotomic_field(5);
    auto ps5 = compute_places(z5, 128);
    for (std::size_t w = 0; w < ps5->size(); ++w)
        CHECK(absolute_value(z5->theta(), *ps5, w).contains(Rat(1)));
}

TEST_CASE("heights of roots of unity and rationals") {
    auto gauss = make_field(IntPolynomial{1, 0, 1});
    auto h = height(gauss->theta());
    CHECK(h.contains(Rat(1)));
    CHECK(h.width_double() < 1e-30);
    CHECK(compare_height(gauss->theta(), Rat(1)) == Order::equal);

    CHECK(height(gauss->rational_element(Rat(7))).contains(Rat(7)));
    CHECK(height(gauss->rational_element(Rat(2, 3))).contains(Rat(3)));
    CHECK_THROWS_MATCHES(height(gauss->zero()), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.code() == errc::zero_element; }));
}

TEST_CASE("paper quartic height H(alpha) = (sqrt3 + 2)^{1/4}") {
    auto K = make_field(IntPolynomial{1, 0, 4, 0, 1}, QMatrix::identity(4), true, "quartic");
    auto h = height(K->theta(), 192);
    auto reference = (Interval::from_long(3, 192).sqrt() + Interval::from_long(2, 192)).rootn(4);
    CHECK(h.intersects(reference));
    CHECK(h.width_double() < 1e-12);
    // decimal sanity: 1.3899106...
    CHECK(h.lo_double() > 1.38990);
    CHECK(h.hi_double() < 1.38992);
}

TEST_CASE("H(sqrt(-5)) = sqrt(5) via both routes") {
    auto K = quadratic_field(Int(-5));
    auto theta = K->theta();
    auto h_integral = height(theta, 128);
    CHECK(h_integral.sqr().contains(Rat(5)));
    // Mahler route on a non-integral multiple exercises the general path:
    // H(sqrt(-5)/2): min poly 4x^2 + 5, H^2 = M = 4 * max(1, 5/4... ) compute:
    auto half = Rat(1, 2) * theta;
    auto h_half = height(half, 128);
    // |roots| = sqrt(5)/2 > 1, lead 4: M = 4 * 5/4 = 5, H = sqrt(5)
    CHECK(h_half.sqr().contains(Rat(5)));
}

TEST_CASE("height is representation independent") {
    auto z5 = cyclotomic_field(5);
    auto zeta = z5->theta();
    auto a = zeta + zeta.pow(4); // generates the real quadratic subfield
    auto h_in_z5 = height(a, 128);

    auto golden = make_field(IntPolynomial{-1, 1, 1}, QMatrix::identity(2), true, "x^2+x-1");
    auto h_direct = height(golden->theta(), 128);
    CHECK(h_in_z5.intersects(h_direct));

    // phi^(1/2): H^2 = (1+sqrt 5)/2
    auto phi = (Interval::from_long(5, 128).sqrt() + Interval::from_long(1, 128)) /
               Interval::from_long(2, 128);
    CHECK(h_in_z5.sqr().intersects(phi));
}

TEST_CASE("mahler measure") {
    // M(x^2 - 2) = 2: both roots have modulus sqrt(2) > 1
    auto m = mahler_measure(IntPolynomial{-2, 0, 1}, 128);
    CHECK(m.contains(Rat(2)));
    // M((x - 3)) = 3
    CHECK(mahler_measure(IntPolynomial{-3, 1}, 128).contains(Rat(3)));
    // Kronecker: M(Phi_12) = 1
    CHECK(mahler_measure(cyclotomic(12), 128).contains(Rat(1)));
}

TEST_CASE("c_K values") {
    auto gauss = make_field(IntPolynomial{1, 0, 1});
    auto c = c_K(gauss, 128);
    // 2/sqrt(pi) = 1.1283791670955126
    CHECK(c.lo_double() > 1.12837916);
    CHECK(c.hi_double() < 1.12837917);
    auto ref = Interval::from_long(2, 128) / Interval::pi(128).sqrt();
    CHECK(c.intersects(ref));

    auto real_quad = quadratic_field(Int(2));
    auto c2 = c_K(real_quad, 128);
    CHECK(c2.pow_ui(4).contains(Rat(8))); // |disc|^{1/4}

    auto quartic = make_field(IntPolynomial{1, 0, 4, 0, 1}, QMatrix::identity(4), true);
    auto c4 = c_K(quartic, 128);
    // interval evaluation of (2/pi)^{1/2} * 2304^{1/8}
    auto ref4 = (Interval::from_long(2, 128) / Interval::pi(128)).sqrt() *
                Interval::from_long(2304, 128).rootn(8);
    CHECK(c4.intersects(ref4));
    CHECK(c4.lo_double() > 2.10014);
    CHECK(c4.hi_double() < 2.10016);

    CHECK(c_K(rational_field(), 128).contains(Rat(1)));
}

TEST_CASE("c_K is monotone in |disc| on imaginary quadratics") {
    std::vector<std::pair<Int, double>> by_disc;
    for (long m : {-1L, -2L, -5L, -6L, -7L, -10L, -11L, -13L, -163L}) {
        auto K = quadratic_field(Int(m));
        by_disc.push_back({abs(K->discriminant()), c_K(K, 128).lo_double()});
    }
    std::sort(by_disc.begin(), by_disc.end());
    for (std::size_t i = 1; i < by_disc.size(); ++i) CHECK(by_disc[i].second > by_disc[i - 1].second);
}

TEST_CASE("is_totally_real") {
    auto K = make_field(IntPolynomial{1, 0, 4, 0, 1}, QMatrix::identity(4), true);
    auto alpha = K->theta();
    auto sqrt3 = alpha * alpha + K->rational_element(Rat(2));
    CHECK(is_totally_real(sqrt3));
    CHECK(!is_totally_real(alpha));
    CHECK(is_totally_real(K->rational_element(Rat(-7, 3))));
}

TEST_CASE("is_real_at") {
    auto K = make_field(IntPolynomial{1, 0, 4, 0, 1}, QMatrix::identity(4), true);
    auto alpha = K->theta();
    auto sqrt3 = alpha * alpha + K->rational_element(Rat(2));
    for (std::size_t w = 0; w < 2; ++w) {
        CHECK(is_real_at(sqrt3, w));
        CHECK(!is_real_at(alpha, w));
    }
    CHECK(is_real_at(K->rational_element(Rat(5)), 0));

    auto z5 = cyclotomic_field(5);
    auto a = z5->theta() + z5->theta().pow(4);
    CHECK(is_real_at(a, 0));
    CHECK(is_real_at(a, 1));
    CHECK(!is_real_at(z5->theta(), 0));
}

TEST_CASE("normalization identity for integral elements") {
    auto z5 = cyclotomic_field(5);
    auto a = z5->theta() + z5->rational_element(Rat(2));
    unsigned prec = 128;
    auto ps = compute_places(z5, prec);
    Interval prod_places = Interval::from_long(1, prec);
    for (std::size_t v = 0; v < ps->size(); ++v)
        prod_places =
            prod_places *
            ps->embedding_norm(a, v).max_with_one().pow_ui(
                static_cast<unsigned long>(ps->place(v).local_degree()));
    Interval hd = height(a, prec).pow_ui(static_cast<unsigned long>(z5->degree()));
    CHECK(prod_places.intersects(hd));
}

TEST_CASE("compare helpers") {
    auto z8 = cyclotomic_field(8);
    auto zeta = z8->theta();
    CHECK(compare_height(zeta, Rat(1)) == Order::equal);
    CHECK(compare_height(zeta, Rat(2)) == Order::less);
    auto twozeta = Rat(2) * zeta;
    CHECK(compare_height(twozeta, Rat(2)) == Order::equal); // q * zeta side-channel
    CHECK(compare_height(twozeta, Rat(3)) == Order::less);
    CHECK(compare_height(twozeta, Rat(3, 2)) == Order::greater);

    CHECK(compare_embedding_norm(zeta, 0, Rat(1)) == Order::equal);
    CHECK(compare_embedding_norm(zeta, 0, Rat(2)) == Order::less);
    auto gauss = make_field(IntPolynomial{1, 0, 1});
    auto one_plus_i = gauss->element({Rat(1), Rat(1)});
    CHECK(compare_embedding_norm(one_plus_i, 0, Rat(3, 2)) == Order::less);
    CHECK(compare_embedding_norm(one_plus_i, 0, Rat(7, 5)) == Order::greater);

    // certified <=: H(zeta) <= c_K(z8)
    bool strict = false;
    bool ok = certify_leq([&](unsigned p) { return height(zeta, p); },
                          [&](unsigned p) { return c_K(z8, p); }, 128, &strict);
    CHECK(ok);
    CHECK(strict);
}
