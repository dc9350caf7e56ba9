#ifndef GENFIELD_FIELD_HPP
#define GENFIELD_FIELD_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "genfield/errors.hpp"
#include "genfield/intpoly.hpp"
#include "genfield/modpoly.hpp"
#include "genfield/qmatrix.hpp"
#include "genfield/rational.hpp"

namespace genfield {

class NumberField;
class FieldElement;
using FieldPtr = std::shared_ptr<const NumberField>;

namespace detail {

// Per-field memo slots filled in by higher layers (places, automorphisms,
// torsion).  Guarded by one mutex; the stored objects are immutable.
struct FieldCaches {
    mutable std::mutex mutex;
    mutable std::map<unsigned, std::shared_ptr<const void>> places_by_precision;
    mutable std::shared_ptr<const void> field_automorphisms;
    mutable std::shared_ptr<const void> torsion;
};

} // namespace detail

struct Signature {
    int real = 0;    // r
    int complex = 0; // s
};

// A number field Q[x]/(f) with a designated integral basis.  Immutable after
// construction; create through make_field / quadratic_field / cm_composite.
class NumberField : public std::enable_shared_from_this<NumberField> {
  public:
    const IntPolynomial& min_poly() const { return f_; }
    int degree() const { return d_; }
    const QMatrix& integral_basis() const { return basis_; }      // rows, power coords
    const QMatrix& integral_basis_inverse() const { return basis_inv_; }
    const Int& discriminant() const { return disc_; }
    Signature signature() const { return sig_; }
    bool totally_real() const { return sig_.complex == 0; }
    bool totally_complex() const { return sig_.real == 0; }
    int archimedean_place_count() const { return sig_.real + sig_.complex; }
    const std::string& label() const { return label_; }

    // Trace of the power-basis monomial theta^k, 0 <= k < d.
    const Rat& power_trace(std::size_t k) const { return power_traces_[k]; }

    FieldElement element(QVec power_coords) const;
    FieldElement from_integral_coords(const ZVec& coords) const;
    FieldElement rational_element(const Rat& q) const;
    FieldElement zero() const;
    FieldElement one() const;
    FieldElement theta() const; // the class of x

    const detail::FieldCaches& caches() const { return caches_; }

    // Reduce a coefficient vector (any length) modulo the monic min_poly.
    QVec reduce(QVec c) const {
        while (c.size() > static_cast<std::size_t>(d_)) {
            Rat top = c.back();
            c.pop_back();
            if (top == 0) continue;
            std::size_t shift = c.size() - static_cast<std::size_t>(d_);
            for (int i = 0; i < d_; ++i)
                c[shift + static_cast<std::size_t>(i)] -= top * Rat(f_.coeffs()[static_cast<std::size_t>(i)]);
        }
        c.resize(static_cast<std::size_t>(d_), Rat(0));
        return c;
    }

    friend FieldPtr make_field(const IntPolynomial&, const std::optional<QMatrix>&, bool,
                               const std::string&);

  private:
    NumberField() = default;

    IntPolynomial f_;
    int d_ = 0;
    QMatrix basis_, basis_inv_;
    Int disc_;
    Signature sig_;
    QVec power_traces_;
    std::string label_;
    detail::FieldCaches caches_;
};

// Exact element of a number field, stored in power-basis coordinates.
class FieldElement {
  public:
    FieldElement() = default;
    FieldElement(FieldPtr field, QVec coords) : field_(std::move(field)), c_(std::move(coords)) {
        c_.resize(static_cast<std::size_t>(field_->degree()), Rat(0));
    }

    const FieldPtr& field() const { return field_; }
    const QVec& coords() const { return c_; }

    bool is_zero() const {
        for (const auto& v : c_)
            if (v != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    const Rat& rational_value() const { return c_[0]; } // valid when is_rational()

    bool operator==(const FieldElement& o) const { return field_ == o.field_ && c_ == o.c_; }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        a.check_same(b);
        QVec c(a.c_);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
        return FieldElement(a.field_, std::move(c));
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        a.check_same(b);
        QVec c(a.c_);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.c_[i];
        return FieldElement(a.field_, std::move(c));
    }
    FieldElement operator-() const {
        QVec c(c_);
        for (auto& v : c) v = -v;
        return FieldElement(field_, std::move(c));
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        a.check_same(b);
        QVec prod(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) prod[i + j] += a.c_[i] * b.c_[j];
        }
        return FieldElement(a.field_, a.field_->reduce(std::move(prod)));
    }
    friend FieldElement operator*(const Rat& s, const FieldElement& a) {
        QVec c(a.c_);
        for (auto& v : c) v *= s;
        return FieldElement(a.field_, std::move(c));
    }

    FieldElement inverse() const {
        if (is_zero()) fail(errc::division_by_zero, "inverse of zero");
        // Extended Euclid in Q[x]: u*self + v*f = 1.
        QVec r0 = poly_of(field_->min_poly()), r1 = c_;
        while (!r1.empty() && r1.back() == 0) r1.pop_back();
        QVec s0{Rat(0)}, s1{Rat(1)}; // coefficients multiplying `self`
        while (true) {
            // r1 is nonzero here (self is invertible mod irreducible f)
            auto [q, r2] = divmod(r0, r1);
            if (r2.empty()) break;
            QVec s2 = sub(s0, mul(q, s1));
            r0 = std::move(r1);
            r1 = std::move(r2);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        // r1 is a nonzero constant gcd.
        Rat inv_c = 1 / r1[0];
        QVec u(s1);
        for (auto& v : u) v *= inv_c;
        return FieldElement(field_, field_->reduce(std::move(u)));
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        return a * b.inverse();
    }

    FieldElement pow(unsigned long e) const {
        FieldElement base = *this, acc = field_->one();
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    QVec integral_coords() const {
        return c_ * field_->integral_basis_inverse();
    }

    bool is_integral() const {
        for (const auto& v : integral_coords())
            if (!is_integer(v)) return false;
        return true;
    }

    Rat trace() const {
        Rat t(0);
        for (std::size_t k = 0; k < c_.size(); ++k)
            if (c_[k] != 0) t += c_[k] * field_->power_trace(k);
        return t;
    }

    Rat norm() const {
        // Determinant of the multiplication-by-self matrix on the power basis.
        const auto d = static_cast<std::size_t>(field_->degree());
        QMatrix m(d, d);
        QVec row(c_);
        for (std::size_t k = 0; k < d; ++k) {
            for (std::size_t j = 0; j < d; ++j) m.at(k, j) = row[j];
            if (k + 1 < d) {
                row.insert(row.begin(), Rat(0));
                row = field_->reduce(std::move(row));
            }
        }
        return m.det();
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ", ";
            s += rat_to_string(c_[i]);
        }
        return s + "]";
    }

  private:
    void check_same(const FieldElement& o) const {
        if (field_ != o.field_) fail(errc::field_mismatch, "elements of different fields");
    }
    static QVec poly_of(const IntPolynomial& f) {
        QVec q(f.coeffs().size());
        for (std::size_t i = 0; i < q.size(); ++i) q[i] = Rat(f.coeffs()[i]);
        return q;
    }
    static std::pair<QVec, QVec> divmod(QVec a, const QVec& b) {
        QVec q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
        while (!a.empty() && a.back() == 0) a.pop_back();
        while (a.size() >= b.size() && !a.empty()) {
            Rat qc = a.back() / b.back();
            std::size_t shift = a.size() - b.size();
            q[shift] = qc;
            for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= qc * b[i];
            while (!a.empty() && a.back() == 0) a.pop_back();
        }
        return {std::move(q), std::move(a)};
    }
    static QVec mul(const QVec& a, const QVec& b) {
        if (a.empty() || b.empty()) return {};
        QVec c(a.size() + b.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
        while (!c.empty() && c.back() == 0) c.pop_back();
        return c;
    }
    static QVec sub(const QVec& a, const QVec& b) {
        QVec c(std::max(a.size(), b.size()), Rat(0));
        for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
        for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
        while (!c.empty() && c.back() == 0) c.pop_back();
        return c;
    }

    FieldPtr field_;
    QVec c_;
};

inline FieldElement NumberField::element(QVec power_coords) const {
    return FieldElement(shared_from_this(), std::move(power_coords));
}
inline FieldElement NumberField::from_integral_coords(const ZVec& coords) const {
    QVec q(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) q[i] = Rat(coords[i]);
    return element(q * basis_);
}
inline FieldElement NumberField::rational_element(const Rat& q) const {
    QVec c(static_cast<std::size_t>(d_), Rat(0));
    c[0] = q;
    return element(std::move(c));
}
inline FieldElement NumberField::zero() const { return rational_element(Rat(0)); }
inline FieldElement NumberField::one() const { return rational_element(Rat(1)); }
inline FieldElement NumberField::theta() const {
    QVec c(static_cast<std::size_t>(d_), Rat(0));
    if (d_ == 1) {
        // x == root of the degree-1 polynomial
        c[0] = Rat(-f_.coeffs()[0]) / Rat(f_.coeffs()[1]);
    } else {
        c[1] = 1;
    }
    return element(std::move(c));
}

// --- minimal polynomials, generation, subfields ---

inline IntPolynomial minimal_polynomial(const FieldElement& a) {
    const auto d = static_cast<std::size_t>(a.field()->degree());
    std::vector<QVec> powers{QVec(d, Rat(0))};
    powers[0][0] = 1;
    FieldElement p = a.field()->one();
    for (std::size_t k = 1; k <= d; ++k) {
        p = p * a;
        QMatrix span = QMatrix::from_rows(powers);
        if (auto combo = span.solve_left(p.coords())) {
            QVec mono(k + 1, Rat(0));
            mono[k] = 1;
            for (std::size_t j = 0; j < k; ++j) mono[j] = -(*combo)[j];
            return clear_denominators(mono); // primitive, positive leading
        }
        powers.push_back(p.coords());
    }
    fail(errc::internal_inconsistency, "no minimal polynomial found up to the field degree");
}

inline bool generates(const FieldElement& a) {
    return minimal_polynomial(a).degree() == a.field()->degree();
}

// A Q-subfield of K presented by a canonical (RREF) row basis in power
// coordinates.  Construction verifies the subfield invariants.
class SubfieldDescription {
  public:
    SubfieldDescription(FieldPtr field, QMatrix rows, bool verify = true)
        : field_(std::move(field)), basis_(std::move(rows)) {
        basis_.rref();
        if (verify) verify_invariants();
    }

    const FieldPtr& field() const { return field_; }
    const QMatrix& basis() const { return basis_; }
    std::size_t dim() const { return basis_.rows(); }
    bool is_full() const { return dim() == static_cast<std::size_t>(field_->degree()); }

    bool contains(const FieldElement& a) const {
        return basis_.solve_left(a.coords()).has_value();
    }
    bool contains(const SubfieldDescription& other) const {
        for (std::size_t i = 0; i < other.basis_.rows(); ++i)
            if (!basis_.solve_left(other.basis_.row(i))) return false;
        return true;
    }

    FieldElement basis_element(std::size_t i) const { return field_->element(basis_.row(i)); }

    // Canonical RREF bases make equality a matrix comparison.
    bool operator==(const SubfieldDescription& o) const {
        return field_ == o.field_ && basis_ == o.basis_;
    }

  private:
    void verify_invariants() const {
        if (basis_.rows() == 0 || static_cast<int>(basis_.rows()) > field_->degree())
            fail(errc::internal_inconsistency, "subfield basis has impossible dimension");
        if (field_->degree() % static_cast<int>(basis_.rows()) != 0)
            fail(errc::internal_inconsistency, "subfield dimension does not divide the degree");
        if (!contains(field_->one()))
            fail(errc::internal_inconsistency, "subfield does not contain 1");
        for (std::size_t i = 0; i < basis_.rows(); ++i)
            for (std::size_t j = i; j < basis_.rows(); ++j) {
                FieldElement prod = basis_element(i) * basis_element(j);
                if (!contains(prod))
                    fail(errc::internal_inconsistency, "subfield basis not multiplicatively closed");
            }
    }

    FieldPtr field_;
    QMatrix basis_;
};

inline SubfieldDescription subfield_generated(const FieldElement& a) {
    IntPolynomial m = minimal_polynomial(a);
    std::vector<QVec> rows;
    FieldElement p = a.field()->one();
    for (int k = 0; k < m.degree(); ++k) {
        rows.push_back(p.coords());
        p = p * a;
    }
    return SubfieldDescription(a.field(), QMatrix::from_rows(std::move(rows)));
}

inline SubfieldDescription intersect_subfields(const std::vector<SubfieldDescription>& fields) {
    if (fields.empty()) fail(errc::bad_argument, "intersection of empty list");
    for (const auto& s : fields)
        if (s.field() != fields.front().field())
            fail(errc::field_mismatch, "subfields of different fields");
    const auto d = static_cast<std::size_t>(fields.front().field()->degree());
    QMatrix acc = fields.front().basis();
    for (std::size_t idx = 1; idx < fields.size(); ++idx) {
        const QMatrix& u = acc;
        const QMatrix& w = fields[idx].basis();
        // v = a*u = b*w  <=>  (a, b) in the left kernel of [u; -w].
        std::vector<QVec> stacked;
        for (std::size_t i = 0; i < u.rows(); ++i) stacked.push_back(u.row(i));
        for (std::size_t i = 0; i < w.rows(); ++i) {
            QVec neg = w.row(i);
            for (auto& v : neg) v = -v;
            stacked.push_back(std::move(neg));
        }
        QMatrix kernel = QMatrix::from_rows(std::move(stacked)).left_kernel();
        std::vector<QVec> vs;
        for (std::size_t i = 0; i < kernel.rows(); ++i) {
            QVec v(d, Rat(0));
            for (std::size_t j = 0; j < u.rows(); ++j) {
                if (kernel.at(i, j) == 0) continue;
                for (std::size_t col = 0; col < d; ++col) v[col] += kernel.at(i, j) * u.at(j, col);
            }
            vs.push_back(std::move(v));
        }
        QMatrix inter = QMatrix::from_rows(std::move(vs));
        if (inter.rows() == 0) inter = QMatrix(0, d);
        inter.rref();
        // Drop zero rows.
        std::vector<QVec> nz;
        for (std::size_t i = 0; i < inter.rows(); ++i) {
            bool zero = true;
            for (std::size_t j = 0; j < d; ++j)
                if (inter.at(i, j) != 0) { zero = false; break; }
            if (!zero) nz.push_back(inter.row(i));
        }
        acc = QMatrix::from_rows(std::move(nz));
    }
    return SubfieldDescription(fields.front().field(), std::move(acc));
}

// --- field constructors ---

inline FieldPtr make_field(const IntPolynomial& f, const std::optional<QMatrix>& basis = std::nullopt,
                           bool assert_irreducible = false, const std::string& label = "") {
    if (f.degree() < 1) fail(errc::bad_argument, "defining polynomial must have degree >= 1");
    if (!f.is_monic()) fail(errc::not_monic, "defining polynomial must be monic");
    const int d = f.degree();

    if (d > 1 && !assert_irreducible && !irreducibility_sieve(f))
        fail(errc::reducible_or_undecided,
             "factor-pattern sieve could not certify irreducibility of " + f.to_string() +
                 "; pass assert_irreducible if irreducibility is known");

    auto field = std::shared_ptr<NumberField>(new NumberField());
    field->f_ = f;
    field->d_ = d;
    field->label_ = label;

    int r = count_real_roots(f);
    if ((d - r) % 2 != 0)
        fail(errc::internal_inconsistency, "real-root count parity is impossible");
    field->sig_ = Signature{r, (d - r) / 2};

    // Traces of theta^k via Newton's identities on the monic f.
    {
        const auto& a = f.coeffs();
        QVec p(static_cast<std::size_t>(d));
        p[0] = d;
        for (int k = 1; k < d; ++k) {
            Rat sum = Rat(k) * Rat(a[static_cast<std::size_t>(d - k)]);
            for (int i = 1; i < k; ++i)
                sum += Rat(a[static_cast<std::size_t>(d - i)]) * p[static_cast<std::size_t>(k - i)];
            p[static_cast<std::size_t>(k)] = -sum;
        }
        field->power_traces_ = std::move(p);
    }

    if (basis) {
        if (basis->rows() != static_cast<std::size_t>(d) || basis->cols() != static_cast<std::size_t>(d))
            fail(errc::dimension_mismatch, "integral basis must be d x d");
        field->basis_ = *basis;
    } else {
        // Z[theta] is accepted when disc(f) is squarefree, or when Dedekind's
        // criterion certifies p-maximality at every prime whose square
        // divides disc(f).  No maximal-order construction is attempted.
        if (d > 1) {
            Int disc_f = poly_discriminant(f);
            auto squares = square_prime_divisors(disc_f);
            if (!squares)
                fail(errc::not_squarefree,
                     "square part of disc(f) = " + disc_f.get_str() +
                         " could not be certified; supply an integral basis");
            for (std::uint64_t p : *squares)
                if (!modp::dedekind_p_maximal(f, p))
                    fail(errc::not_squarefree,
                         "Z[theta] is not maximal at p = " + std::to_string(p) +
                             "; supply an integral basis");
        }
        field->basis_ = QMatrix::identity(static_cast<std::size_t>(d));
    }

    // First basis row must be 1.
    for (int j = 0; j < d; ++j) {
        Rat expect = (j == 0) ? Rat(1) : Rat(0);
        if (field->basis_.at(0, static_cast<std::size_t>(j)) != expect)
            fail(errc::basis_not_a_ring, "first basis row must be the element 1");
    }
    auto inv = field->basis_.inverse();
    if (!inv) fail(errc::basis_not_a_ring, "integral basis matrix is singular");
    field->basis_inv_ = std::move(*inv);

    // Basis elements must be algebraic integers...
    for (int i = 0; i < d; ++i) {
        FieldElement w(field, field->basis_.row(static_cast<std::size_t>(i)));
        IntPolynomial m = minimal_polynomial(w);
        if (!m.is_monic())
            fail(errc::basis_not_integral,
                 "basis element " + std::to_string(i) + " is not an algebraic integer");
    }
    // ...and their Z-span must be multiplicatively closed.
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            FieldElement prod = FieldElement(field, field->basis_.row(static_cast<std::size_t>(i))) *
                                FieldElement(field, field->basis_.row(static_cast<std::size_t>(j)));
            for (const auto& coord : prod.coords() * field->basis_inv_)
                if (!is_integer(coord))
                    fail(errc::basis_not_a_ring, "basis Z-span is not closed under multiplication");
        }

    // Discriminant = det of the trace form on the basis.
    {
        QMatrix t(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) {
                FieldElement prod = FieldElement(field, field->basis_.row(static_cast<std::size_t>(i))) *
                                    FieldElement(field, field->basis_.row(static_cast<std::size_t>(j)));
                Rat tr = prod.trace();
                t.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = tr;
                t.at(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = tr;
            }
        Rat disc = t.det();
        if (!is_integer(disc) || disc == 0)
            fail(errc::basis_not_a_ring, "trace form determinant is not a nonzero integer");
        field->disc_ = disc.get_num();
    }
    return field;
}

// Q(sqrt(m)) with the classical integral basis and discriminant.
inline FieldPtr quadratic_field(const Int& m, const std::string& label = "") {
    if (m == 0 || m == 1) fail(errc::bad_argument, "m must be a squarefree integer != 0, 1");
    if (!is_squarefree(m)) fail(errc::not_squarefree, "m = " + m.get_str() + " is not squarefree");
    IntPolynomial f({-m, Int(0), Int(1)}); // x^2 - m
    QMatrix basis = QMatrix::identity(2);
    Int mod4 = ((m % 4) + 4) % 4;
    if (mod4 == 1) {
        basis.at(1, 0) = Rat(1, 2);
        basis.at(1, 1) = Rat(1, 2); // (1 + sqrt(m))/2
    }
    std::string lbl = label.empty() ? ("Q(sqrt(" + m.get_str() + "))") : label;
    auto field = make_field(f, basis, /*assert_irreducible=*/true, lbl);
    // Classical values double-checked against the trace form.
    Int expected = (mod4 == 1) ? m : 4 * m;
    if (field->discriminant() != expected)
        fail(errc::internal_inconsistency, "quadratic discriminant mismatch");
    return field;
}

inline FieldPtr rational_field() {
    return make_field(IntPolynomial{-1, 1}, std::nullopt, false, "Q");
}

} // namespace genfield

#endif
