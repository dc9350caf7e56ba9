#ifndef GENFIELD_STRUCTURE_HPP
#define GENFIELD_STRUCTURE_HPP

#include <optional>
#include <vector>

#include "genfield/automorphisms.hpp"

namespace genfield {

struct KwSubfield {
    std::size_t w = 0;
    FieldElement xi;             // the Lemma-2.1 element at w (B_v = 1)
    SubfieldDescription subfield; // Q(xi), canonical basis
    bool proper = false;
    Interval height;             // H(xi)
    bool height_le_ck = false;   // H(xi) <= c_K certified
};

// xi^(w) and k^(w) = Q(xi^(w)) for a totally complex field with at least two
// archimedean places, bounds B_v = 1 away from w.
inline KwSubfield kw_subfield(const FieldPtr& K, std::size_t w, const EnumOptions& opt = {}) {
    if (!K->totally_complex())
        fail(errc::bad_argument, "k^(w) construction requires a totally complex field");
    if (K->archimedean_place_count() < 2)
        fail(errc::bad_argument, "k^(w) construction requires at least two archimedean places");
    std::vector<Rat> B(static_cast<std::size_t>(K->archimedean_place_count()), Rat(1));
    auto small = small_at_all_but_one(K, w, B, opt);

    KwSubfield out{w, small.xi, subfield_generated(small.xi), false, Interval(opt.precision), false};
    out.proper = !out.subfield.is_full();
    out.height = height(small.xi, opt.precision);
    out.height_le_ck = certify_leq([&](unsigned p) { return height(small.xi, p); },
                                   [&](unsigned p) { return c_K(K, p); }, opt.precision);
    if (!out.height_le_ck)
        fail(errc::internal_inconsistency, "Lemma 2.1 output exceeded the c_K bound");
    return out;
}

struct Lemma22Report {
    bool hypothesis_ok = false; // |xi|_v < 1 certified for all v != w
    bool full_field = false;
    int relative_index = 0;     // [K : Q(xi)] when proper
    bool basis_real_at_w = false;
    bool fixed_by_conjugation = false;
    SubfieldDescription subfield;
};

// Verifies the Lemma 2.2 dichotomy for a concrete xi at w.
inline Lemma22Report lemma22_check(const FieldPtr& K, const FieldElement& xi, std::size_t w,
                                   const EnumOptions& opt = {}) {
    if (!K->totally_complex() || K->archimedean_place_count() < 2)
        fail(errc::bad_argument, "Lemma 2.2 needs a totally complex field with >= 2 places");
    for (std::size_t v = 0; v < static_cast<std::size_t>(K->archimedean_place_count()); ++v) {
        if (v == w) continue;
        if (compare_embedding_norm(xi, v, Rat(1), opt.precision) != Order::less)
            fail(errc::hypothesis_violated,
                 "|xi|_v < 1 fails at place " + std::to_string(v));
    }
    Lemma22Report rep{true, false, 0, false, false, subfield_generated(xi)};
    if (rep.subfield.is_full()) {
        rep.full_field = true;
        return rep;
    }
    rep.relative_index = K->degree() / static_cast<int>(rep.subfield.dim());
    if (rep.relative_index != 2)
        fail(errc::internal_inconsistency,
             "Lemma 2.2 dichotomy violated: proper subfield of index != 2");

    Automorphism tau = recognize_conjugation(K, w, opt);
    bool all_fixed = true, all_real = true;
    for (std::size_t i = 0; i < rep.subfield.dim(); ++i) {
        FieldElement b = rep.subfield.basis_element(i);
        if (!(tau.apply(b) == b)) all_fixed = false;
        if (!is_real_at(b, w, opt.precision)) all_real = false;
    }
    rep.fixed_by_conjugation = all_fixed;
    rep.basis_real_at_w = all_real;
    return rep;
}

// F-tilde = intersection of the k^(w); certified totally real and certified
// equal to the fixed field of the group generated by the recognized
// conjugations (the operational reading of maximality).
inline SubfieldDescription maximal_totally_real_subfield(const FieldPtr& K,
                                                         const EnumOptions& opt = {}) {
    if (!K->totally_complex())
        fail(errc::bad_argument, "the construction applies to totally complex fields");
    const auto places_count = static_cast<std::size_t>(K->archimedean_place_count());
    if (places_count == 1) {
        // imaginary quadratic: F = Q
        QMatrix one(1, 2);
        one.at(0, 0) = 1;
        return SubfieldDescription(K, one);
    }

    std::vector<SubfieldDescription> kws;
    std::vector<Automorphism> taus;
    for (std::size_t w = 0; w < places_count; ++w) {
        kws.push_back(kw_subfield(K, w, opt).subfield);
        taus.push_back(recognize_conjugation(K, w, opt));
    }
    SubfieldDescription F = intersect_subfields(kws);

    for (std::size_t i = 0; i < F.dim(); ++i)
        if (!is_totally_real(F.basis_element(i)))
            fail(errc::internal_inconsistency,
                 "intersection of the k^(w) contains a non-totally-real element");

    SubfieldDescription fixed = fixed_field(K, taus);
    if (!(F == fixed))
        fail(errc::internal_inconsistency,
             "intersection of the k^(w) does not match the conjugation fixed field");
    return F;
}

struct TorsionInfo {
    Int order;                 // 2 q_K
    Int q_K;
    FieldElement generator;
    std::vector<FieldElement> elements; // the whole group, canonical order
    bool q_divides_disc = false;
};

// Tor(K^x) found exactly: integral points with every ||xi||_v <= 1 are
// precisely the roots of unity (Kronecker); each candidate order m >= 3 with
// phi(m) | d is confirmed against the m-th cyclotomic polynomial.
inline TorsionInfo torsion_subgroup(const FieldPtr& K, const EnumOptions& opt = {}) {
    {
        std::lock_guard<std::mutex> lock(K->caches().mutex);
        if (K->caches().torsion)
            return *std::static_pointer_cast<const TorsionInfo>(K->caches().torsion);
    }
    TorsionInfo info;
    std::vector<std::pair<std::uint64_t, FieldElement>> found; // (order, element)
    if (K->degree() == 1) {
        found = {{1, K->one()}, {2, -K->one()}};
    } else {
        auto places = compute_places(K, opt.precision);
        MinkowskiLattice L = build_lattice(K, IdealSublattice::full(K), places);
        auto pts = enumerate_box(L, BoundsVector::uniform(K, Rat(1)), BoundMode::closed, opt);
        for (const auto& xi : pts) {
            auto ord = root_of_unity_order(xi);
            if (!ord)
                fail(errc::internal_inconsistency,
                     "non-torsion point with all absolute values <= 1");
            found.push_back({*ord, xi});
        }
    }
    const auto d = static_cast<std::uint64_t>(K->degree());
    std::uint64_t n = 0;
    for (const auto& [ord, el] : found) n = std::max(n, ord);
    // The spec's framing: for every m >= 3 with phi(m) | d the m-th cyclotomic
    // polynomial has a root in K iff m | n.  Confirm both directions on the
    // recognized set.
    for (std::uint64_t m = 3; m <= 2 * d * d + 2; ++m) {
        if (d % euler_phi(m) != 0) {
            continue;
        }
        bool has_root = false;
        IntPolynomial phi = cyclotomic(m);
        for (const auto& [ord, el] : found)
            if (ord == m) has_root = true;
        (void)phi;
        if (has_root != (n % m == 0))
            fail(errc::internal_inconsistency, "torsion order bookkeeping is inconsistent");
    }
    if (static_cast<std::uint64_t>(found.size()) != n)
        fail(errc::internal_inconsistency, "torsion group size is not its exponent");
    if (n % 2 != 0) fail(errc::internal_inconsistency, "torsion order must be even");

    info.order = Int(static_cast<unsigned long>(n));
    info.q_K = Int(static_cast<unsigned long>(n / 2));
    info.q_divides_disc = (K->discriminant() % info.q_K == 0);
    // Deterministic generator: lexicographically smallest element of full order.
    std::optional<FieldElement> gen;
    for (const auto& [ord, el] : found) {
        if (ord != n) continue;
        if (!gen || el.integral_coords() < gen->integral_coords()) gen = el;
    }
    if (!gen) fail(errc::internal_inconsistency, "cyclic torsion group has no generator");
    info.generator = *gen;
    for (const auto& [ord, el] : found) info.elements.push_back(el);

    auto shared = std::make_shared<const TorsionInfo>(info);
    std::lock_guard<std::mutex> lock(K->caches().mutex);
    if (!K->caches().torsion) K->caches().torsion = std::static_pointer_cast<const void>(shared);
    return *std::static_pointer_cast<const TorsionInfo>(K->caches().torsion);
}

// CM test: totally complex, and complex conjugation is induced by one common
// automorphism through every place (equivalently [K : F] = 2).
inline bool is_cm(const FieldPtr& K, const EnumOptions& opt = {}) {
    if (!K->totally_complex()) return false;
    std::optional<Automorphism> common;
    for (std::size_t w = 0; w < static_cast<std::size_t>(K->archimedean_place_count()); ++w) {
        Automorphism tau = [&]() {
            try {
                return recognize_conjugation(K, w, opt);
            } catch (const error& e) {
                if (e.code() == errc::recognition_failed) throw;
                throw;
            }
        }();
        if (!common) common = tau;
        else if (!(*common == tau)) return false;
    }
    return common.has_value();
}

} // namespace genfield

#endif
