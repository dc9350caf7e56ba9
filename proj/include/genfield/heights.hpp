#ifndef GENFIELD_HEIGHTS_HPP
#define GENFIELD_HEIGHTS_HPP

#include <optional>

#include "genfield/field.hpp"
#include "genfield/interval.hpp"
#include "genfield/places.hpp"

namespace genfield {

// Multiplicative order when `a` is a root of unity (minimal polynomial
// cyclotomic); this is the exact side-channel behind every |.| = 1 tie.
inline std::optional<std::uint64_t> root_of_unity_order(const FieldElement& a) {
    if (a.is_zero()) return std::nullopt;
    if (a.is_rational()) {
        if (a.rational_value() == 1) return 1;
        if (a.rational_value() == -1) return 2;
        return std::nullopt;
    }
    return cyclotomic_index(minimal_polynomial(a));
}

// |a|_v = ||a||_v^{d_v / d} as a certified interval.
inline Interval absolute_value(const FieldElement& a, const PlaceSet& places, std::size_t idx) {
    if (a.is_zero()) return Interval(places.precision());
    const auto d = static_cast<unsigned long>(places.field()->degree());
    const auto dv = static_cast<unsigned long>(places.place(idx).local_degree());
    Interval norm = places.embedding_norm(a, idx);
    if (dv == d) return norm;
    return norm.pow_ui(dv).rootn(d);
}

// Mahler measure of a primitive integer polynomial: |lead| * prod max(1,|root|).
inline Interval mahler_measure(const IntPolynomial& g, unsigned precision) {
    auto roots = detail::isolate_roots(g, precision);
    Interval m = Interval::from_int(abs(g.leading()), precision);
    for (const auto& iv : roots.real) {
        Interval r = Interval::hull_of(Interval::from_rat(iv.lo, precision),
                                       Interval::from_rat(iv.hi, precision));
        m = m * r.abs().max_with_one();
    }
    for (const auto& [box, center] : roots.upper) m = m * box.modulus().max_with_one().sqr();
    return m;
}

// Absolute multiplicative Weil height.  Integral elements use the archimedean
// product identity over the places of the ambient field; general elements go
// through the Mahler measure of their primitive minimal polynomial.
inline Interval height(const FieldElement& a, unsigned precision = kDefaultPrecision) {
    if (a.is_zero()) fail(errc::zero_element, "height of 0 is undefined");
    if (a.is_rational()) {
        // H(p/q) = max(|p|, q)
        Int h = std::max(Int(abs(a.rational_value().get_num())), Int(a.rational_value().get_den()));
        return Interval::from_int(h, precision);
    }
    if (a.is_integral()) {
        auto places = compute_places(a.field(), precision);
        const auto d = static_cast<unsigned long>(a.field()->degree());
        Interval prod = Interval::from_long(1, precision);
        for (std::size_t v = 0; v < places->size(); ++v) {
            Interval norm = places->embedding_norm(a, v).max_with_one();
            prod = prod * norm.pow_ui(static_cast<unsigned long>(places->place(v).local_degree()));
        }
        return prod.rootn(d);
    }
    IntPolynomial g = minimal_polynomial(a);
    return mahler_measure(g, precision).rootn(static_cast<unsigned long>(g.degree()));
}

// c_K = (2/pi)^{s/d} |disc K|^{1/(2d)}
inline Interval c_K(const FieldPtr& K, unsigned precision = kDefaultPrecision) {
    const auto d = static_cast<unsigned long>(K->degree());
    const auto s = static_cast<unsigned long>(K->signature().complex);
    Interval disc_part = Interval::from_int(abs(K->discriminant()), precision).rootn(2 * d);
    if (s == 0) return disc_part;
    Interval two_over_pi = Interval::from_long(2, precision) / Interval::pi(precision);
    return two_over_pi.pow_ui(s).rootn(d) * disc_part;
}

// Decided exactly by Sturm on the minimal polynomial.
inline bool is_totally_real(const FieldElement& a) {
    if (a.is_rational()) return true;
    IntPolynomial m = minimal_polynomial(a);
    return count_real_roots(m) == m.degree();
}

// Does sigma_w(a) land in R?  Rigorous both ways: a non-real value is caught
// by the imaginary part's interval, a real one by matching the evaluation to
// the unique (Sturm-certified) real root of the minimal polynomial.
inline bool is_real_at(const FieldElement& a, std::size_t w,
                       unsigned start_precision = kDefaultPrecision) {
    if (a.is_rational()) return true;
    const FieldPtr& K = a.field();
    IntPolynomial g = minimal_polynomial(a);
    return with_precision_ladder(start_precision, [&](unsigned prec) -> std::optional<bool> {
        auto places = compute_places(K, prec);
        if (places->place(w).is_real()) return true;
        ComplexBox z = places->evaluate(a, w);
        if (!z.im.contains_zero()) return false;
        auto roots = detail::isolate_roots(g, prec);
        // sigma_w(a) is exactly one root of g; decide which by refinement.
        int hits = 0;
        bool hit_real = false;
        for (const auto& iv : roots.real) {
            Interval re = Interval::hull_of(Interval::from_rat(iv.lo, prec),
                                            Interval::from_rat(iv.hi, prec));
            if (z.re.intersects(re) && z.im.contains_zero()) {
                ++hits;
                hit_real = true;
            }
        }
        for (const auto& [box, center] : roots.upper) {
            if (z.intersects(box)) ++hits;
            ComplexBox conj_box{box.re, -box.im};
            if (z.intersects(conj_box)) ++hits;
        }
        if (hits == 1) return hit_real;
        return std::nullopt; // ambiguous; escalate
    });
}

enum class Order { less, equal, greater, unknown };

// ||a||_w compared against a positive rational r.  Intervals decide the
// generic case; on ambiguity the root-of-unity side-channel settles exact
// ties of the form a = q * zeta (the only ones the constructions produce).
inline Order compare_embedding_norm(const FieldElement& a, std::size_t w, const Rat& r,
                                    unsigned start_precision = kDefaultPrecision) {
    if (a.is_zero()) return (r > 0) ? Order::less : Order::equal;
    if (a.is_rational()) {
        Rat v = abs(a.rational_value());
        if (v < r) return Order::less;
        if (v == r) return Order::equal;
        return Order::greater;
    }
    bool side_channels_done = false;
    unsigned p = std::max(start_precision, kMinPrecision);
    for (; p <= kMaxPrecision; p *= 2) {
        try {
            auto places = compute_places(a.field(), p);
            Interval norm = places->embedding_norm(a, w);
            if (norm.certainly_less(r)) return Order::less;
            if (norm.certainly_greater(r)) return Order::greater;
        } catch (const error& e) {
            if (e.code() != errc::precision_exhausted) throw;
        }
        if (!side_channels_done) {
            side_channels_done = true;
            if (root_of_unity_order(Rat(1) / r * a)) return Order::equal;
        }
    }
    return Order::unknown;
}

// H(a) versus a rational bound B >= 1; `unknown` marks an exact boundary the
// ladder could not separate (reported, never silently resolved).
inline Order compare_height(const FieldElement& a, const Rat& B,
                            unsigned start_precision = kDefaultPrecision) {
    if (a.is_rational()) {
        Rat h = std::max(Rat(abs(a.rational_value().get_num())), Rat(a.rational_value().get_den()));
        if (h < B) return Order::less;
        if (h == B) return Order::equal;
        return Order::greater;
    }
    bool side_channels_done = false;
    unsigned p = std::max(start_precision, kMinPrecision);
    for (; p <= kMaxPrecision; p *= 2) {
        try {
            Interval h = height(a, p);
            if (h.certainly_less(B)) return Order::less;
            if (h.certainly_greater(B)) return Order::greater;
        } catch (const error& e) {
            if (e.code() != errc::precision_exhausted) throw;
        }
        if (!side_channels_done) {
            side_channels_done = true;
            if (root_of_unity_order(a)) {
                if (Rat(1) < B) return Order::less;
                if (Rat(1) == B) return Order::equal;
                return Order::greater;
            }
            // a = B * zeta or a = zeta / B both have height exactly B >= 1.
            if (root_of_unity_order(Rat(1) / B * a)) return Order::equal;
            if (root_of_unity_order(B * a)) return Order::equal;
        }
    }
    return Order::unknown;
}

// Certify lhs(prec) <= rhs(prec) by interval separation with escalation;
// `equal_hint` short-circuits exact ties the caller has already recognized.
template <typename LhsFn, typename RhsFn>
inline bool certify_leq(LhsFn&& lhs, RhsFn&& rhs, unsigned start_precision,
                        bool* strict_out = nullptr) {
    unsigned p = std::max(start_precision, kMinPrecision);
    for (; p <= kMaxPrecision; p *= 2) {
        try {
            Interval l = lhs(p);
            Interval r = rhs(p);
            if (l.certainly_less(r)) {
                if (strict_out) *strict_out = true;
                return true;
            }
            if (r.certainly_less(l)) {
                if (strict_out) *strict_out = false;
                return false;
            }
        } catch (const error& e) {
            if (e.code() != errc::precision_exhausted) throw;
        }
    }
    fail(errc::precision_exhausted, "inequality could not be separated below the precision cap");
}

} // namespace genfield

#endif
