#ifndef GENFIELD_INTERVAL_HPP
#define GENFIELD_INTERVAL_HPP

#include <mpfr.h>

#include <cmath>
#include <string>
#include <utility>

#include "genfield/errors.hpp"
#include "genfield/rational.hpp"

namespace genfield {

inline constexpr unsigned kMinPrecision = 64;
inline constexpr unsigned kDefaultPrecision = 128;
inline constexpr unsigned kMaxPrecision = 32768; // hard cap; beyond it PrecisionExhausted

// Closed real interval with outward-rounded mpfr endpoints.  Every operation
// returns an interval containing the exact result.
class Interval {
  public:
    explicit Interval(unsigned prec = kDefaultPrecision) : prec_(prec) {
        mpfr_init2(lo_, prec);
        mpfr_init2(hi_, prec);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }
    Interval(const Interval& o) : prec_(o.prec_) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    Interval(Interval&& o) noexcept : prec_(o.prec_) {
        mpfr_init2(lo_, 2);
        mpfr_init2(hi_, 2);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }
    Interval& operator=(Interval o) noexcept {
        std::swap(prec_, o.prec_);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        return *this;
    }
    ~Interval() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    static Interval from_rat(const Rat& q, unsigned prec) {
        Interval r(prec);
        mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
        return r;
    }
    static Interval from_int(const Int& n, unsigned prec) {
        Interval r(prec);
        mpfr_set_z(r.lo_, n.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(r.hi_, n.get_mpz_t(), MPFR_RNDU);
        return r;
    }
    static Interval from_long(long n, unsigned prec) {
        Interval r(prec);
        mpfr_set_si(r.lo_, n, MPFR_RNDD);
        mpfr_set_si(r.hi_, n, MPFR_RNDU);
        return r;
    }
    static Interval pi(unsigned prec) {
        Interval r(prec);
        mpfr_const_pi(r.lo_, MPFR_RNDD);
        mpfr_const_pi(r.hi_, MPFR_RNDU);
        return r;
    }
    static Interval hull_of(const Interval& a, const Interval& b) {
        Interval r(std::max(a.prec_, b.prec_));
        mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }

    unsigned precision() const { return prec_; }
    mpfr_srcptr lo() const { return lo_; }
    mpfr_srcptr hi() const { return hi_; }
    double lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }
    double width_double() const {
        Interval w = *this; // w = hi - lo, rounded up
        mpfr_sub(w.hi_, hi_, lo_, MPFR_RNDU);
        return mpfr_get_d(w.hi_, MPFR_RNDU);
    }
    bool is_point() const { return mpfr_equal_p(lo_, hi_); }

    bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
    bool strictly_positive() const { return mpfr_sgn(lo_) > 0; }
    bool strictly_negative() const { return mpfr_sgn(hi_) < 0; }
    bool contains(const Rat& q) const {
        return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
    }
    bool contains(const Interval& o) const {
        return mpfr_cmp(lo_, o.lo_) <= 0 && mpfr_cmp(hi_, o.hi_) >= 0;
    }
    bool intersects(const Interval& o) const {
        return !(mpfr_cmp(hi_, o.lo_) < 0 || mpfr_cmp(o.hi_, lo_) < 0);
    }

    // hi < o.lo: every value here is below every value there.
    bool certainly_less(const Interval& o) const { return mpfr_cmp(hi_, o.lo_) < 0; }
    bool certainly_less_equal(const Interval& o) const { return mpfr_cmp(hi_, o.lo_) <= 0; }
    bool certainly_less(const Rat& q) const { return mpfr_cmp_q(hi_, q.get_mpq_t()) < 0; }
    bool certainly_greater(const Rat& q) const { return mpfr_cmp_q(lo_, q.get_mpq_t()) > 0; }
    bool certainly_greater_equal(const Rat& q) const {
        return mpfr_cmp_q(lo_, q.get_mpq_t()) >= 0;
    }
    bool certainly_less_equal(const Rat& q) const {
        return mpfr_cmp_q(hi_, q.get_mpq_t()) <= 0;
    }

    friend Interval operator-(const Interval& a) {
        Interval r(a.prec_);
        mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
        mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
        return r;
    }
    friend Interval operator+(const Interval& a, const Interval& b) {
        Interval r(std::max(a.prec_, b.prec_));
        mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }
    friend Interval operator-(const Interval& a, const Interval& b) {
        Interval r(std::max(a.prec_, b.prec_));
        mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
        return r;
    }
    friend Interval operator*(const Interval& a, const Interval& b) {
        unsigned prec = std::max(a.prec_, b.prec_);
        Interval r(prec), t(prec);
        // lo: min of the four products rounded down
        mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_mul(t.lo_, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t.lo_, MPFR_RNDD);
        mpfr_mul(t.lo_, a.hi_, b.lo_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t.lo_, MPFR_RNDD);
        mpfr_mul(t.lo_, a.hi_, b.hi_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t.lo_, MPFR_RNDD);
        // hi: max of the four products rounded up
        mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
        mpfr_mul(t.hi_, a.lo_, b.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t.hi_, MPFR_RNDU);
        mpfr_mul(t.hi_, a.hi_, b.lo_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t.hi_, MPFR_RNDU);
        mpfr_mul(t.hi_, a.hi_, b.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t.hi_, MPFR_RNDU);
        return r;
    }
    friend Interval operator/(const Interval& a, const Interval& b) {
        if (b.contains_zero()) fail(errc::precision_exhausted, "division by interval containing 0");
        return a * b.reciprocal();
    }

    Interval reciprocal() const {
        if (contains_zero()) fail(errc::precision_exhausted, "reciprocal of interval containing 0");
        Interval r(prec_);
        mpfr_ui_div(r.lo_, 1, hi_, MPFR_RNDD);
        mpfr_ui_div(r.hi_, 1, lo_, MPFR_RNDU);
        return r;
    }

    Interval sqr() const {
        Interval r(prec_);
        if (contains_zero()) {
            mpfr_set_zero(r.lo_, 1);
            Interval t(prec_);
            mpfr_mul(t.hi_, lo_, lo_, MPFR_RNDU);
            mpfr_mul(r.hi_, hi_, hi_, MPFR_RNDU);
            mpfr_max(r.hi_, r.hi_, t.hi_, MPFR_RNDU);
        } else if (strictly_positive()) {
            mpfr_mul(r.lo_, lo_, lo_, MPFR_RNDD);
            mpfr_mul(r.hi_, hi_, hi_, MPFR_RNDU);
        } else {
            mpfr_mul(r.lo_, hi_, hi_, MPFR_RNDD);
            mpfr_mul(r.hi_, lo_, lo_, MPFR_RNDU);
        }
        return r;
    }

    Interval abs() const {
        Interval r(prec_);
        if (contains_zero()) {
            mpfr_set_zero(r.lo_, 1);
            Interval t(prec_);
            mpfr_neg(t.hi_, lo_, MPFR_RNDU);
            mpfr_max(r.hi_, hi_, t.hi_, MPFR_RNDU);
        } else if (strictly_positive()) {
            r = *this;
        } else {
            r = -*this;
        }
        return r;
    }

    // Requires a nonnegative interval.
    Interval sqrt() const {
        Interval r(prec_);
        mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
        mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
        return r;
    }
    Interval rootn(unsigned long n) const {
        Interval r(prec_);
        mpfr_rootn_ui(r.lo_, lo_, n, MPFR_RNDD);
        mpfr_rootn_ui(r.hi_, hi_, n, MPFR_RNDU);
        return r;
    }
    // Requires a nonnegative interval (all uses are powers of absolute values).
    Interval pow_ui(unsigned long e) const {
        Interval r(prec_);
        mpfr_pow_ui(r.lo_, lo_, e, MPFR_RNDD);
        mpfr_pow_ui(r.hi_, hi_, e, MPFR_RNDU);
        return r;
    }

    Interval max_with_one() const {
        Interval r = *this;
        if (mpfr_cmp_ui(r.lo_, 1) < 0) mpfr_set_ui(r.lo_, 1, MPFR_RNDD);
        if (mpfr_cmp_ui(r.hi_, 1) < 0) mpfr_set_ui(r.hi_, 1, MPFR_RNDU);
        return r;
    }

    Interval widen_to(unsigned prec) const {
        Interval r(prec);
        mpfr_set(r.lo_, lo_, MPFR_RNDD);
        mpfr_set(r.hi_, hi_, MPFR_RNDU);
        return r;
    }

    // Rational upper/lower bounds (exact value of the endpoint).
    Rat hi_rat() const { return rat_of(hi_); }
    Rat lo_rat() const { return rat_of(lo_); }

    std::string to_string() const {
        char* ls = nullptr;
        char* hs = nullptr;
        mpfr_asprintf(&ls, "%.20Rg", lo_);
        mpfr_asprintf(&hs, "%.20Rg", hi_);
        std::string out = std::string("[") + ls + ", " + hs + "]";
        mpfr_free_str(ls);
        mpfr_free_str(hs);
        return out;
    }

    // Longest decimal prefix on which both endpoints agree, then an
    // uncertainty marker; avoids over-claiming precision.
    std::string to_decimal_string(int max_digits = 30) const {
        if (is_point() && mpfr_integer_p(lo_)) {
            char* s = nullptr;
            mpfr_asprintf(&s, "%.0Rf", lo_);
            std::string out = s;
            mpfr_free_str(s);
            return out;
        }
        for (int digits = max_digits; digits >= 1; --digits) {
            char* ls = nullptr;
            char* hs = nullptr;
            mpfr_asprintf(&ls, "%.*Re", digits, lo_);
            mpfr_asprintf(&hs, "%.*Re", digits, hi_);
            bool same = std::string(ls) == std::string(hs);
            std::string out = ls;
            mpfr_free_str(ls);
            mpfr_free_str(hs);
            if (same) return out + "...";
        }
        return to_string();
    }

  private:
    static Rat rat_of(mpfr_srcptr x) {
        if (mpfr_zero_p(x)) return Rat(0);
        if (!mpfr_number_p(x)) fail(errc::internal_inconsistency, "non-finite interval endpoint");
        Int mant;
        mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x);
        Rat r(mant);
        if (e >= 0) {
            Int two_e;
            mpz_ui_pow_ui(two_e.get_mpz_t(), 2, static_cast<unsigned long>(e));
            r *= Rat(two_e);
        } else {
            Int two_e;
            mpz_ui_pow_ui(two_e.get_mpz_t(), 2, static_cast<unsigned long>(-e));
            r /= Rat(two_e);
        }
        return r;
    }

    mpfr_t lo_, hi_;
    unsigned prec_;
};

// Rectangular complex interval.
struct ComplexBox {
    Interval re, im;

    ComplexBox() = default;
    ComplexBox(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

    friend ComplexBox operator+(const ComplexBox& a, const ComplexBox& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexBox operator-(const ComplexBox& a, const ComplexBox& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexBox operator*(const ComplexBox& a, const ComplexBox& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }

    ComplexBox conj() const { return {re, -im}; }

    Interval modulus_sq() const { return re.sqr() + im.sqr(); }
    Interval modulus() const { return modulus_sq().sqrt(); }

    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    bool intersects(const ComplexBox& o) const {
        return re.intersects(o.re) && im.intersects(o.im);
    }
    bool contains(const ComplexBox& o) const { return re.contains(o.re) && im.contains(o.im); }

    // a / b with 0 outside b.
    friend ComplexBox operator/(const ComplexBox& a, const ComplexBox& b) {
        Interval den = b.modulus_sq();
        if (den.contains_zero())
            fail(errc::precision_exhausted, "complex division by a box containing 0");
        ComplexBox num = a * b.conj();
        return {num.re / den, num.im / den};
    }

    std::string to_string() const { return re.to_string() + " + i*" + im.to_string(); }
};

inline Interval coeff_interval(const Int& c, unsigned prec) { return Interval::from_int(c, prec); }
inline Interval coeff_interval(const Rat& c, unsigned prec) { return Interval::from_rat(c, prec); }

// Horner evaluation on a complex box; Coeffs is any reversible range of Int
// or Rat coefficients, ascending by degree.
template <typename Coeffs>
inline ComplexBox eval_poly(const Coeffs& coeffs, const ComplexBox& z, unsigned prec) {
    ComplexBox acc{Interval(prec), Interval(prec)};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * z;
        acc.re = acc.re + coeff_interval(*it, prec);
    }
    return acc;
}

template <typename Coeffs>
inline Interval eval_poly_real(const Coeffs& coeffs, const Interval& x, unsigned prec) {
    Interval acc(prec);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc * x + coeff_interval(*it, prec);
    return acc;
}

} // namespace genfield

#endif
