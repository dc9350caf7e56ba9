#include <catch2/catch_amalgamated.hpp>

#include "genfield/interval.hpp"

using namespace genfield;

TEST_CASE("outward rounding and containment") {
    auto third = Interval::from_rat(Rat(1, 3), 64);
    CHECK(third.contains(Rat(1, 3)));
    CHECK(third.width_double() < 1e-18);
    CHECK(third.width_double() > 0.0);

    auto a = Interval::from_rat(Rat(1, 3), 128);
    auto b = Interval::from_rat(Rat(1, 7), 128);
    CHECK((a + b).contains(Rat(10, 21)));
    CHECK((a - b).contains(Rat(4, 21)));
    CHECK((a * b).contains(Rat(1, 21)));
    CHECK((a / b).contains(Rat(7, 3)));
}

TEST_CASE("multiplication sign cases and sqr") {
    auto m = Interval::hull_of(Interval::from_long(-1, 64), Interval::from_long(2, 64));
    auto p = m * m;
    CHECK(p.contains(Rat(-2))); // naive product interval
    auto s = m.sqr();
    CHECK(!s.contains(Rat(-1, 2))); // dependent square stays nonnegative
    CHECK(s.contains(Rat(0)));
    CHECK(s.contains(Rat(4)));
    CHECK(m.abs().contains(Rat(2)));
    CHECK(!m.abs().contains(Rat(-1, 2)));
}

TEST_CASE("roots, powers, pi") {
    auto two = Interval::from_long(2, 128);
    auto r = two.sqrt();
    CHECK(r.contains(Rat(141421356237, 100000000000)) == false); // strictly between bounds
    CHECK(r.sqr().contains(Rat(2)));
    auto c = two.rootn(4);
    CHECK(c.pow_ui(4).contains(Rat(2)));
    auto pi = Interval::pi(128);
    CHECK(pi.contains(Rat("314159265358979323846/100000000000000000000")) == false);
    CHECK(pi.lo_double() <= 3.14159265358979324);
    CHECK(pi.hi_double() >= 3.14159265358979311);
}

TEST_CASE("comparisons") {
    auto one = Interval::from_long(1, 64);
    auto two = Interval::from_long(2, 64);
    CHECK(one.certainly_less(two));
    CHECK(!two.certainly_less(one));
    CHECK(one.certainly_less(Rat(3, 2)));
    CHECK(two.certainly_greater(Rat(3, 2)));
    CHECK(one.certainly_less_equal(Rat(1)));
    CHECK(!one.certainly_less(Rat(1)));
}

TEST_CASE("complex boxes") {
    unsigned p = 128;
    ComplexBox i{Interval(p), Interval::from_long(1, p)};
    auto sq = i * i;
    CHECK(sq.re.contains(Rat(-1)));
    CHECK(sq.im.contains(Rat(0)));
    CHECK(i.modulus().contains(Rat(1)));

    ComplexBox z{Interval::from_long(3, p), Interval::from_long(4, p)};
    CHECK(z.modulus().contains(Rat(5)));
    auto q = z / z;
    CHECK(q.re.contains(Rat(1)));
    CHECK(q.im.contains(Rat(0)));

    // (x^2 + 1) at i contains 0
    ZVec coeffs{Int(1), Int(0), Int(1)};
    auto v = eval_poly(coeffs, i, p);
    CHECK(v.re.contains(Rat(0)));
    CHECK(v.im.contains(Rat(0)));
}

TEST_CASE("decimal rendering") {
    auto x = Interval::from_rat(Rat(1, 3), 128);
    std::string s = x.to_decimal_string();
    CHECK(s.find("3.333") != std::string::npos);
    auto exact = Interval::from_long(7, 64);
    CHECK(exact.to_decimal_string() == "7");
}
