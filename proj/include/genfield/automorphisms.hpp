#ifndef GENFIELD_AUTOMORPHISMS_HPP
#define GENFIELD_AUTOMORPHISMS_HPP

#include <optional>
#include <vector>

#include "genfield/lattice.hpp"

namespace genfield {

// Field automorphism of K over Q, represented by the exact image of theta
// (a root of the defining polynomial inside K) and the induced power-basis
// matrix.
class Automorphism {
  public:
    Automorphism(FieldPtr field, FieldElement theta_image)
        : field_(std::move(field)), image_(std::move(theta_image)) {
        const auto d = static_cast<std::size_t>(field_->degree());
        std::vector<QVec> rows;
        FieldElement p = field_->one();
        for (std::size_t k = 0; k < d; ++k) {
            rows.push_back(p.coords());
            if (k + 1 < d) p = p * image_;
        }
        matrix_ = QMatrix::from_rows(std::move(rows));
    }

    const FieldPtr& field() const { return field_; }
    const FieldElement& theta_image() const { return image_; }
    const QMatrix& matrix() const { return matrix_; }

    FieldElement apply(const FieldElement& a) const {
        return FieldElement(field_, a.coords() * matrix_);
    }

    Automorphism compose(const Automorphism& inner) const {
        // (this o inner)(theta) = this(inner(theta))
        return Automorphism(field_, apply(inner.image_));
    }

    bool is_identity() const { return image_ == field_->theta(); }
    bool operator==(const Automorphism& o) const { return image_ == o.image_; }

  private:
    FieldPtr field_;
    FieldElement image_;
    QMatrix matrix_;
};

// All automorphisms of K/Q, found exactly: the candidate images are the
// lattice points of O_K inside the closed polydisc of the root-modulus bound,
// filtered by f(t) = 0 in K.  Cached per field.
inline const std::vector<Automorphism>& field_automorphisms(const FieldPtr& K,
                                                            const EnumOptions& opt = {}) {
    {
        std::lock_guard<std::mutex> lock(K->caches().mutex);
        if (K->caches().field_automorphisms)
            return *std::static_pointer_cast<const std::vector<Automorphism>>(
                K->caches().field_automorphisms);
    }

    auto result = std::make_shared<std::vector<Automorphism>>();
    if (K->degree() == 1) {
        result->push_back(Automorphism(K, K->theta()));
    } else {
        auto places = compute_places(K, opt.precision);
        // Rational upper bound on the root moduli, padded to dodge boundary ties.
        Rat bound(0);
        for (std::size_t v = 0; v < places->size(); ++v) {
            Rat m = places->embedding_norm(K->theta(), v).hi_rat();
            bound = std::max(bound, m);
        }
        bound = detail::snap_rat(bound, 32) + Rat(1, 1024);
        MinkowskiLattice L = build_lattice(K, IdealSublattice::full(K), places);
        auto candidates =
            enumerate_box(L, BoundsVector::uniform(K, bound), BoundMode::closed, opt);
        const auto& f = K->min_poly();
        for (const auto& t : candidates) {
            // exact: f(t) == 0 in K
            FieldElement val = K->zero();
            FieldElement p = K->one();
            for (int k = 0; k <= f.degree(); ++k) {
                val = val + Rat(f.coeffs()[static_cast<std::size_t>(k)]) * p;
                if (k < f.degree()) p = p * t;
            }
            if (val.is_zero()) result->push_back(Automorphism(K, t));
        }
    }
    if (result->empty() || static_cast<int>(result->size()) > K->degree())
        fail(errc::internal_inconsistency, "automorphism count out of range");
    bool has_identity = false;
    for (const auto& a : *result)
        if (a.is_identity()) has_identity = true;
    if (!has_identity) fail(errc::internal_inconsistency, "identity automorphism not found");

    std::lock_guard<std::mutex> lock(K->caches().mutex);
    if (!K->caches().field_automorphisms)
        K->caches().field_automorphisms = std::static_pointer_cast<const void>(
            std::shared_ptr<const std::vector<Automorphism>>(result));
    return *std::static_pointer_cast<const std::vector<Automorphism>>(
        K->caches().field_automorphisms);
}

// sigma_w^{-1} rho sigma_w as an automorphism of K: the root of f in K whose
// image under sigma_w is the complex conjugate of sigma_w(theta).  Refinement
// separates the finitely many candidates; failure to match any of them is
// certified and reported as RecognitionFailed.
inline Automorphism recognize_conjugation(const FieldPtr& K, std::size_t w,
                                          const EnumOptions& opt = {}) {
    {
        auto places = compute_places(K, opt.precision);
        if (places->place(w).is_real())
            fail(errc::bad_argument, "conjugation recognition needs a complex place");
    }
    const auto& autos = field_automorphisms(K, opt);

    auto decided = with_precision_ladder(
        opt.precision, [&](unsigned prec) -> std::optional<std::optional<std::size_t>> {
            auto places = compute_places(K, prec);
            ComplexBox target = places->evaluate(K->theta(), w).conj();
            std::size_t hits = 0, last = 0;
            for (std::size_t i = 0; i < autos.size(); ++i) {
                ComplexBox img = places->evaluate(autos[i].theta_image(), w);
                if (img.intersects(target)) {
                    ++hits;
                    last = i;
                }
            }
            if (hits == 0) return std::optional<std::size_t>{}; // certified: no match
            if (hits == 1) return std::optional<std::size_t>{last};
            return std::nullopt; // ambiguous; escalate
        });
    if (!decided)
        fail(errc::recognition_failed,
             "complex conjugation through place " + std::to_string(w) +
                 " is not induced by an automorphism of the field");
    const Automorphism& tau = autos[*decided];

    // Involution check is exact; the defining property was certified by the
    // box match, and f(tau(theta)) = 0 held exactly during discovery.
    if (!(tau.compose(tau).is_identity()))
        fail(errc::internal_inconsistency, "recognized conjugation is not an involution");
    return tau;
}

// Exact fixed field: joint kernel of (matrix - identity) over all given
// automorphisms; the empty set fixes everything.
inline SubfieldDescription fixed_field(const FieldPtr& K, const std::vector<Automorphism>& autos) {
    const auto d = static_cast<std::size_t>(K->degree());
    if (autos.empty()) return SubfieldDescription(K, QMatrix::identity(d));
    std::vector<QVec> stacked(d);
    for (std::size_t i = 0; i < d; ++i) stacked[i] = QVec();
    for (const auto& tau : autos) {
        const QMatrix& m = tau.matrix();
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                Rat v = m.at(i, j);
                if (i == j) v -= 1;
                stacked[i].push_back(v);
            }
    }
    QMatrix big = QMatrix::from_rows(std::move(stacked));
    QMatrix kernel = big.left_kernel();
    if (kernel.rows() == 0)
        fail(errc::internal_inconsistency, "fixed field is empty (1 is always fixed)");
    return SubfieldDescription(K, kernel);
}

// Is K/F Galois?  Counts the automorphisms of K fixing F pointwise.
inline bool is_galois(const FieldPtr& K, const SubfieldDescription& F,
                      const EnumOptions& opt = {}) {
    if (F.field() != K) fail(errc::field_mismatch, "subfield of a different field");
    const auto& autos = field_automorphisms(K, opt);
    int fixing = 0;
    for (const auto& tau : autos) {
        bool fixes = true;
        for (std::size_t i = 0; i < F.dim() && fixes; ++i) {
            FieldElement b = F.basis_element(i);
            fixes = (tau.apply(b) == b);
        }
        if (fixes) ++fixing;
    }
    return fixing == K->degree() / static_cast<int>(F.dim());
}

// Closure of a generating set; automorphism groups here have at most d
// elements, so the plain orbit algorithm is enough.
struct AutGroup {
    std::vector<Automorphism> elements;
    std::vector<Automorphism> generators;

    static AutGroup generate(const FieldPtr& K, const std::vector<Automorphism>& gens) {
        AutGroup g;
        g.generators = gens;
        g.elements.push_back(Automorphism(K, K->theta())); // identity
        bool grew = true;
        while (grew) {
            grew = false;
            for (const auto& gen : gens) {
                for (std::size_t i = 0; i < g.elements.size(); ++i) {
                    Automorphism next = gen.compose(g.elements[i]);
                    bool known = false;
                    for (const auto& e : g.elements)
                        if (e == next) { known = true; break; }
                    if (!known) {
                        g.elements.push_back(std::move(next));
                        grew = true;
                        if (static_cast<int>(g.elements.size()) > K->degree())
                            fail(errc::internal_inconsistency, "automorphism group too large");
                    }
                }
            }
        }
        g.verify(K);
        return g;
    }

    void verify(const FieldPtr& K) const {
        // closure and inverses
        for (const auto& a : elements) {
            bool has_inverse = false;
            for (const auto& b : elements) {
                Automorphism ab = a.compose(b);
                bool known = false;
                for (const auto& e : elements)
                    if (e == ab) { known = true; break; }
                if (!known) fail(errc::internal_inconsistency, "automorphism set not closed");
                if (ab.is_identity()) has_inverse = true;
            }
            if (!has_inverse) fail(errc::internal_inconsistency, "automorphism without inverse");
        }
        (void)K;
    }
};

} // namespace genfield

#endif
