#ifndef GENFIELD_PLACES_HPP
#define GENFIELD_PLACES_HPP

#include <algorithm>
#include <complex>
#include <memory>
#include <vector>

#include "genfield/field.hpp"
#include "genfield/interval.hpp"

namespace genfield {

namespace detail {

// Exact complex rational arithmetic for Newton polishing.
struct QComplex {
    Rat re, im;

    friend QComplex operator+(const QComplex& a, const QComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend QComplex operator-(const QComplex& a, const QComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend QComplex operator*(const QComplex& a, const QComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    Rat norm_sq() const { return re * re + im * im; }
    friend QComplex operator/(const QComplex& a, const QComplex& b) {
        Rat n = b.norm_sq();
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
};

inline Rat pow2_rat(long e) {
    Int p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
    return e >= 0 ? Rat(p) : Rat(1, p);
}

inline Rat snap_rat(const Rat& x, unsigned bits) {
    Int scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, bits);
    Rat scaled = x * Rat(scale) + Rat(1, 2);
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
    return make_rat(fl, scale);
}

inline QComplex snap(const QComplex& z, unsigned bits) {
    return {snap_rat(z.re, bits), snap_rat(z.im, bits)};
}

inline QComplex eval_qc(const IntPolynomial& f, const QComplex& z) {
    QComplex acc{Rat(0), Rat(0)};
    const auto& c = f.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * z;
        acc.re += Rat(*it);
    }
    return acc;
}

inline std::vector<std::complex<double>> aberth_roots(const IntPolynomial& f) {
    const int d = f.degree();
    std::vector<double> c(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) {
        c[static_cast<std::size_t>(i)] =
            mpz_get_d(f.coeffs()[static_cast<std::size_t>(i)].get_mpz_t());
        if (!std::isfinite(c[static_cast<std::size_t>(i)]))
            fail(errc::precision_exhausted, "coefficients overflow double in root finding");
    }
    double radius = 1.0;
    for (int i = 0; i < d; ++i)
        radius = std::max(radius,
                          1.0 + std::abs(c[static_cast<std::size_t>(i)] / c[static_cast<std::size_t>(d)]));
    std::vector<std::complex<double>> z(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
        double angle = 2.0 * 3.14159265358979323846 * k / d + 0.7;
        z[static_cast<std::size_t>(k)] =
            0.7 * radius * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    auto horner = [&](std::complex<double> x, bool deriv) {
        std::complex<double> p = 0.0;
        if (deriv) {
            for (int i = d; i >= 1; --i)
                p = p * x + c[static_cast<std::size_t>(i)] * static_cast<double>(i);
        } else {
            for (int i = d; i >= 0; --i) p = p * x + c[static_cast<std::size_t>(i)];
        }
        return p;
    };
    for (int iter = 0; iter < 800; ++iter) {
        double worst = 0.0;
        for (int k = 0; k < d; ++k) {
            auto zk = z[static_cast<std::size_t>(k)];
            auto p = horner(zk, false);
            auto dp = horner(zk, true);
            if (std::abs(dp) == 0.0) {
                z[static_cast<std::size_t>(k)] += 1e-6 * (1.0 + std::abs(zk));
                worst = 1.0;
                continue;
            }
            auto w = p / dp;
            std::complex<double> s = 0.0;
            for (int j = 0; j < d; ++j)
                if (j != k) s += 1.0 / (zk - z[static_cast<std::size_t>(j)]);
            auto denom = 1.0 - w * s;
            auto corr = (std::abs(denom) == 0.0) ? w : w / denom;
            z[static_cast<std::size_t>(k)] -= corr;
            worst = std::max(worst, std::abs(corr) / (1.0 + std::abs(zk)));
        }
        if (worst < 1e-14) break;
    }
    return z;
}

struct IsolatedRoots {
    std::vector<RationalInterval> real;                  // exact Sturm isolation, refined
    std::vector<std::pair<ComplexBox, QComplex>> upper;  // certified box + center, Im > 0
};

// Certified isolation of all roots of a squarefree integer polynomial: real
// roots by exact Sturm bisection, conjugate pairs by Aberth approximation,
// exact rational Newton polishing and one interval-Newton certification step.
inline IsolatedRoots isolate_roots(const IntPolynomial& f, unsigned precision) {
    IsolatedRoots out;
    const int d = f.degree();
    Rat width_target = pow2_rat(-static_cast<long>(precision) - 16);
    for (const auto& iv0 : isolate_real_roots(f))
        out.real.push_back(refine_root(f, iv0, width_target));
    const int r = static_cast<int>(out.real.size());
    const int s = (d - r) / 2;
    if (r + 2 * s != d)
        fail(errc::internal_inconsistency, "real-root parity breaks the signature");
    if (s == 0) return out;

    IntPolynomial fp = f.derivative();
    auto approx = aberth_roots(f);
    std::vector<QComplex> uppers;
    for (const auto& z : approx)
        if (z.imag() > 1e-9) uppers.push_back({Rat(z.real()), Rat(z.imag())});
    if (static_cast<int>(uppers.size()) != s)
        fail(errc::precision_exhausted, "numeric root finding lost conjugate pairs");

    const unsigned target_bits = precision + 24;
    const unsigned snap_bits = precision + 56;
    const Rat tol = pow2_rat(-2 * static_cast<long>(target_bits));
    for (auto& z : uppers) {
        for (int it = 0; it < 64; ++it) {
            QComplex fz = eval_qc(f, z);
            if (fz.re == 0 && fz.im == 0) break;
            QComplex dfz = eval_qc(fp, z);
            if (dfz.re == 0 && dfz.im == 0)
                fail(errc::precision_exhausted, "Newton hit a critical point");
            QComplex corr = fz / dfz;
            z = snap(z - corr, snap_bits);
            if (corr.norm_sq() < tol) break;
        }
    }

    Rat delta = pow2_rat(-static_cast<long>(precision) - 12);
    // The operator evaluation runs well above the working precision: f(m) is a
    // near-total cancellation, and its enclosure must come out thinner than
    // the certification box.
    const unsigned eval_prec = precision + 96;
    for (const auto& z : uppers) {
        ComplexBox X{Interval::hull_of(Interval::from_rat(z.re - delta, eval_prec),
                                       Interval::from_rat(z.re + delta, eval_prec)),
                     Interval::hull_of(Interval::from_rat(z.im - delta, eval_prec),
                                       Interval::from_rat(z.im + delta, eval_prec))};
        ComplexBox certified = X;
        bool ok = false;
        {
            ComplexBox m{Interval::from_rat(z.re, eval_prec), Interval::from_rat(z.im, eval_prec)};
            ComplexBox dfX = eval_poly(fp.coeffs(), X, eval_prec);
            if (!dfX.modulus_sq().contains_zero()) {
                ComplexBox fm = eval_poly(f.coeffs(), m, eval_prec);
                ComplexBox N = m - fm / dfX;
                // N(X) inside the interior of X certifies exactly one root, in N.
                if (mpfr_cmp(X.re.lo(), N.re.lo()) < 0 && mpfr_cmp(N.re.hi(), X.re.hi()) < 0 &&
                    mpfr_cmp(X.im.lo(), N.im.lo()) < 0 && mpfr_cmp(N.im.hi(), X.im.hi()) < 0) {
                    ok = true;
                    certified = N;
                }
            }
        }
        if (!ok) fail(errc::precision_exhausted, "interval Newton failed to certify a root");
        if (!certified.im.strictly_positive())
            fail(errc::precision_exhausted, "complex root box touches the real axis");
        out.upper.push_back({certified, z});
    }

    for (std::size_t i = 0; i < out.upper.size(); ++i)
        for (std::size_t j = i + 1; j < out.upper.size(); ++j)
            if (out.upper[i].first.intersects(out.upper[j].first))
                fail(errc::precision_exhausted, "complex root boxes are not disjoint");
    return out;
}

} // namespace detail

struct Place {
    enum class Kind { real, complex };
    Kind kind = Kind::real;
    ComplexBox box;                    // certified box; complex kind has Im > 0
    RationalInterval real_isolation{}; // real kind only: exact Sturm interval
    detail::QComplex center{};         // rational approximation inside the box

    int local_degree() const { return kind == Kind::real ? 1 : 2; }
    bool is_real() const { return kind == Kind::real; }
};

// Ordered archimedean places of a field at a working precision: real places
// first ascending, then complex places ascending by real part with ties by
// imaginary part.  Ordering keys are computed at a fixed internal accuracy,
// so the order never depends on the requested precision.
class PlaceSet {
  public:
    const FieldPtr& field() const { return field_; }
    unsigned precision() const { return prec_; }
    std::size_t size() const { return places_.size(); }
    const Place& place(std::size_t i) const { return places_[i]; }
    const std::vector<Place>& places() const { return places_; }
    int real_count() const { return field_->signature().real; }
    int complex_count() const { return field_->signature().complex; }

    // sigma_v(a) as a certified box.
    ComplexBox evaluate(const FieldElement& a, std::size_t idx) const {
        return eval_poly(a.coords(), places_[idx].box, prec_);
    }
    // ||a||_v
    Interval embedding_norm(const FieldElement& a, std::size_t idx) const {
        return evaluate(a, idx).modulus();
    }

    friend std::shared_ptr<const PlaceSet> compute_places(const FieldPtr&, unsigned);

  private:
    PlaceSet() = default;
    FieldPtr field_;
    unsigned prec_ = 0;
    std::vector<Place> places_;
};

inline std::shared_ptr<const PlaceSet> compute_places(const FieldPtr& K,
                                                      unsigned precision = kDefaultPrecision) {
    if (precision < kMinPrecision) precision = kMinPrecision;
    if (precision > kMaxPrecision)
        fail(errc::precision_exhausted, "requested precision beyond the hard cap");
    {
        std::lock_guard<std::mutex> lock(K->caches().mutex);
        auto it = K->caches().places_by_precision.find(precision);
        if (it != K->caches().places_by_precision.end())
            return std::static_pointer_cast<const PlaceSet>(it->second);
    }

    const IntPolynomial& f = K->min_poly();
    auto roots = detail::isolate_roots(f, precision);
    if (static_cast<int>(roots.real.size()) != K->signature().real)
        fail(errc::internal_inconsistency, "real place count disagrees with the signature");

    auto ps = std::shared_ptr<PlaceSet>(new PlaceSet());
    ps->field_ = K;
    ps->prec_ = precision;

    for (const auto& iv : roots.real) {
        Place p;
        p.kind = Place::Kind::real;
        p.real_isolation = iv;
        Interval re = Interval::hull_of(Interval::from_rat(iv.lo, precision),
                                        Interval::from_rat(iv.hi, precision));
        p.box = ComplexBox{re, Interval(precision)};
        p.center = detail::QComplex{iv.mid(), Rat(0)};
        ps->places_.push_back(std::move(p));
    }

    if (!roots.upper.empty()) {
        // Canonical (re, im) keys at fixed accuracy 2^-280.
        IntPolynomial fp = f.derivative();
        std::vector<std::pair<detail::QComplex, std::size_t>> keys;
        const Rat key_tol = detail::pow2_rat(-2 * 300L);
        for (std::size_t i = 0; i < roots.upper.size(); ++i) {
            detail::QComplex z = roots.upper[i].second;
            for (int it = 0; it < 64; ++it) {
                detail::QComplex fz = detail::eval_qc(f, z);
                if (fz.re == 0 && fz.im == 0) break;
                detail::QComplex dfz = detail::eval_qc(fp, z);
                if (dfz.re == 0 && dfz.im == 0)
                    fail(errc::precision_exhausted, "Newton hit a critical point");
                detail::QComplex corr = fz / dfz;
                z = detail::snap(z - corr, 340);
                if (corr.norm_sq() < key_tol) break;
            }
            keys.push_back({detail::snap(z, 280), i});
        }
        std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
            if (a.first.re != b.first.re) return a.first.re < b.first.re;
            return a.first.im < b.first.im;
        });
        for (const auto& k : keys) {
            Place p;
            p.kind = Place::Kind::complex;
            p.box = roots.upper[k.second].first;
            p.center = roots.upper[k.second].second;
            ps->places_.push_back(std::move(p));
        }
    }

    if (static_cast<int>(ps->places_.size()) != K->archimedean_place_count())
        fail(errc::internal_inconsistency, "place count mismatch");

    std::shared_ptr<const PlaceSet> out = ps;
    {
        std::lock_guard<std::mutex> lock(K->caches().mutex);
        K->caches().places_by_precision[precision] = std::static_pointer_cast<const void>(out);
    }
    return out;
}

// Escalation ladder shared by certified decisions: fn(prec) returns an
// optional decided value or throws a retryable PrecisionExhausted.
template <typename Fn>
auto with_precision_ladder(unsigned start, Fn&& fn) {
    unsigned p = std::max(start, kMinPrecision);
    for (;; p *= 2) {
        if (p > kMaxPrecision) fail(errc::precision_exhausted, "escalation ladder exhausted");
        try {
            if (auto result = fn(p)) return *result;
        } catch (const error& e) {
            if (e.code() != errc::precision_exhausted) throw;
            if (p * 2 > kMaxPrecision) throw;
        }
    }
}

} // namespace genfield

#endif
