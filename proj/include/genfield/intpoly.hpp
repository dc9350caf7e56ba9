#ifndef GENFIELD_INTPOLY_HPP
#define GENFIELD_INTPOLY_HPP

#include <algorithm>
#include <cassert>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "genfield/errors.hpp"
#include "genfield/rational.hpp"

namespace genfield {

// Dense integer polynomial, coefficients ascending by degree.  The zero
// polynomial has an empty coefficient vector.
class IntPolynomial {
  public:
    IntPolynomial() = default;
    explicit IntPolynomial(ZVec coeffs) : c_(std::move(coeffs)) { trim(); }
    IntPolynomial(std::initializer_list<long> coeffs) {
        for (long v : coeffs) c_.emplace_back(v);
        trim();
    }

    static IntPolynomial x_power(std::size_t k) {
        ZVec c(k + 1, Int(0));
        c[k] = 1;
        return IntPolynomial(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const ZVec& coeffs() const { return c_; }
    const Int& operator[](std::size_t i) const { return c_[i]; }
    const Int& leading() const { return c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rat(*it);
        return acc;
    }
    Int eval(const Int& x) const {
        Int acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    IntPolynomial derivative() const {
        if (c_.size() <= 1) return IntPolynomial();
        ZVec d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
        return IntPolynomial(std::move(d));
    }

    IntPolynomial operator-() const {
        ZVec d(c_);
        for (auto& v : d) v = -v;
        return IntPolynomial(std::move(d));
    }

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
        ZVec d(std::max(a.c_.size(), b.c_.size()), Int(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) d[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) d[i] += b.c_[i];
        return IntPolynomial(std::move(d));
    }
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
        return a + (-b);
    }
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return IntPolynomial();
        ZVec d(a.c_.size() + b.c_.size() - 1, Int(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) d[i + j] += a.c_[i] * b.c_[j];
        return IntPolynomial(std::move(d));
    }
    friend IntPolynomial operator*(const Int& s, const IntPolynomial& a) {
        ZVec d(a.c_);
        for (auto& v : d) v *= s;
        return IntPolynomial(std::move(d));
    }

    Int content() const {
        Int g(0);
        for (const auto& v : c_) g = gcd(g, v);
        return g;
    }

    // Content-free copy with positive leading coefficient.
    IntPolynomial primitive() const {
        if (is_zero()) return *this;
        Int g = content();
        if (leading() < 0) g = -g;
        ZVec d(c_);
        for (auto& v : d) v /= g;
        return IntPolynomial(std::move(d));
    }

    // Exact division, asserting divisibility (used with monic divisors).
    IntPolynomial divexact(const IntPolynomial& b) const {
        assert(!b.is_zero());
        IntPolynomial r(*this);
        ZVec q(r.c_.size() >= b.c_.size() ? r.c_.size() - b.c_.size() + 1 : 0, Int(0));
        while (!r.is_zero() && r.degree() >= b.degree()) {
            Int qc = r.leading() / b.leading();
            assert(qc * b.leading() == r.leading());
            std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
            q[shift] = qc;
            for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[shift + i] -= qc * b.c_[i];
            r.trim();
        }
        assert(r.is_zero());
        return IntPolynomial(std::move(q));
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            if (c_[i] == 0) continue;
            if (!s.empty()) s += (c_[i] > 0 ? " + " : " - ");
            else if (c_[i] < 0) s += "-";
            Int a = abs(c_[i]);
            if (a != 1 || i == 0) s += a.get_str();
            if (i > 0) s += (i == 1 ? "x" : "x^" + std::to_string(i));
        }
        return s;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    ZVec c_;
};

// --- rational-coefficient helpers (denominator-cleared results) ---

inline IntPolynomial clear_denominators(const QVec& q) {
    Int l(1);
    for (const auto& v : q) l = lcm(l, v.get_den());
    ZVec d(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        Rat scaled = q[i] * Rat(l);
        d[i] = scaled.get_num();
    }
    return IntPolynomial(std::move(d));
}

// --- resultants and discriminants (Bareiss on the Sylvester matrix) ---

namespace detail {

inline Int bareiss_det(std::vector<ZVec> m) {
    const std::size_t n = m.size();
    if (n == 0) return Int(1);
    Int sign(1), prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return Int(0);
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = num / prev; // exact by Bareiss
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

} // namespace detail

inline Int resultant(const IntPolynomial& f, const IntPolynomial& g) {
    if (f.is_zero() || g.is_zero()) return Int(0);
    const int m = f.degree(), n = g.degree();
    if (m == 0) {
        Int r;
        mpz_pow_ui(r.get_mpz_t(), f.leading().get_mpz_t(), static_cast<unsigned long>(n));
        return r;
    }
    if (n == 0) {
        Int r;
        mpz_pow_ui(r.get_mpz_t(), g.leading().get_mpz_t(), static_cast<unsigned long>(m));
        return r;
    }
    const std::size_t dim = static_cast<std::size_t>(m + n);
    std::vector<ZVec> s(dim, ZVec(dim, Int(0)));
    for (int row = 0; row < n; ++row)
        for (int j = 0; j <= m; ++j) s[row][row + j] = f.coeffs()[static_cast<std::size_t>(m - j)];
    for (int row = 0; row < m; ++row)
        for (int j = 0; j <= n; ++j) s[n + row][row + j] = g.coeffs()[static_cast<std::size_t>(n - j)];
    return detail::bareiss_det(std::move(s));
}

inline Int poly_discriminant(const IntPolynomial& f) {
    const int d = f.degree();
    if (d <= 0) fail(errc::bad_argument, "discriminant needs degree >= 1");
    if (d == 1) return Int(1);
    Int res = resultant(f, f.derivative());
    Int disc = res / f.leading(); // exact: lc | Res(f, f')
    if (((static_cast<long>(d) * (d - 1)) / 2) % 2 == 1) disc = -disc;
    return disc;
}

// --- Sturm sequences, real-root counting and isolation ---

class SturmChain {
  public:
    explicit SturmChain(const IntPolynomial& f) {
        chain_.push_back(positive_scale(f));
        IntPolynomial d = f.derivative();
        if (!d.is_zero()) chain_.push_back(positive_scale(d));
        while (chain_.size() >= 2 && !chain_.back().is_zero() && chain_.back().degree() > 0) {
            IntPolynomial r = neg_rem(chain_[chain_.size() - 2], chain_.back());
            if (r.is_zero()) break;
            chain_.push_back(positive_scale(r));
        }
    }

    // Number of distinct real roots in (a, b].
    int count_in(const Rat& a, const Rat& b) const { return changes_at(a) - changes_at(b); }

    int count_all() const { return changes_at_minus_inf() - changes_at_plus_inf(); }

    const IntPolynomial& poly() const { return chain_.front(); }

  private:
    // Scale out the content only; Sturm chains must never flip signs.
    static IntPolynomial positive_scale(const IntPolynomial& p) {
        if (p.is_zero()) return p;
        Int g = p.content();
        ZVec d(p.coeffs());
        for (auto& v : d) v /= g;
        return IntPolynomial(std::move(d));
    }

    static IntPolynomial neg_rem(const IntPolynomial& a, const IntPolynomial& b) {
        // -(a mod b) computed over Q, denominators cleared with a positive
        // scalar so evaluation signs are preserved.
        QVec r(a.coeffs().size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = Rat(a.coeffs()[i]);
        const auto& bc = b.coeffs();
        while (true) {
            while (!r.empty() && r.back() == 0) r.pop_back();
            if (static_cast<int>(r.size()) - 1 < b.degree()) break;
            Rat q = r.back() / Rat(bc.back());
            std::size_t shift = r.size() - bc.size();
            for (std::size_t i = 0; i < bc.size(); ++i) r[shift + i] -= q * Rat(bc[i]);
            r.pop_back();
        }
        for (auto& v : r) v = -v;
        return clear_denominators(r);
    }

    static int sgn(const Rat& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

    int changes_at(const Rat& x) const {
        int changes = 0, last = 0;
        for (const auto& p : chain_) {
            int s = sgn(p.eval(x));
            if (s != 0) {
                if (last != 0 && s != last) ++changes;
                last = s;
            }
        }
        return changes;
    }
    int changes_at_plus_inf() const {
        int changes = 0, last = 0;
        for (const auto& p : chain_) {
            int s = p.is_zero() ? 0 : sgn(Rat(p.leading()));
            if (s != 0) {
                if (last != 0 && s != last) ++changes;
                last = s;
            }
        }
        return changes;
    }
    int changes_at_minus_inf() const {
        int changes = 0, last = 0;
        for (const auto& p : chain_) {
            if (p.is_zero()) continue;
            int s = sgn(Rat(p.leading()));
            if (p.degree() % 2 == 1) s = -s;
            if (last != 0 && s != last) ++changes;
            last = s;
        }
        return changes;
    }

    std::vector<IntPolynomial> chain_;
};

inline int count_real_roots(const IntPolynomial& f) {
    if (f.degree() <= 0) return 0;
    return SturmChain(f).count_all();
}

// 1 + max |a_i| / |lead|, rounded up to an integer.
inline Int cauchy_root_bound(const IntPolynomial& f) {
    assert(f.degree() >= 0);
    Rat m(0);
    for (int i = 0; i < f.degree(); ++i) {
        Rat v = abs(Rat(f.coeffs()[static_cast<std::size_t>(i)]) / Rat(f.leading()));
        if (v > m) m = v;
    }
    Int b;
    mpz_cdiv_q(b.get_mpz_t(), m.get_num().get_mpz_t(), m.get_den().get_mpz_t());
    return b + 1;
}

struct RationalInterval {
    Rat lo, hi; // lo == hi encodes an exact rational root
    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
};

inline RationalInterval refine_root(const IntPolynomial& f, RationalInterval iv,
                                    const Rat& target_width);

// Disjoint isolating intervals for the distinct real roots of f, ascending.
// Open-closed bookkeeping follows Sturm's theorem; returned intervals contain
// exactly one root each (as [lo, hi] with f(lo) != 0 unless degenerate).
inline std::vector<RationalInterval> isolate_real_roots(const IntPolynomial& f_in) {
    std::vector<RationalInterval> out;
    if (f_in.degree() <= 0) return out;
    IntPolynomial f = f_in.primitive();
    if (f.degree() == 1) {
        Rat root = Rat(-f.coeffs()[0]) / Rat(f.coeffs()[1]);
        out.push_back({root, root});
        return out;
    }
    SturmChain chain(f);
    Int bound = cauchy_root_bound(f);
    struct Seg {
        Rat a, b;
        int count;
    };
    std::vector<Seg> stack;
    int total = chain.count_in(Rat(-bound), Rat(bound));
    if (total > 0) stack.push_back({Rat(-bound), Rat(bound), total});
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        if (s.count == 1) {
            out.push_back({s.a, s.b});
            continue;
        }
        Rat mid = (s.a + s.b) / 2;
        if (f.eval(mid) == 0) {
            out.push_back({mid, mid});
            // Exclude the exact root from both halves via a shrunk gap.
            Rat eps = (s.b - s.a) / 1024;
            Rat lo_hi = mid - eps, hi_lo = mid + eps;
            while (f.eval(lo_hi) == 0) lo_hi = (s.a + lo_hi) / 2;
            while (f.eval(hi_lo) == 0) hi_lo = (hi_lo + s.b) / 2;
            int left = chain.count_in(s.a, lo_hi);
            int right = chain.count_in(hi_lo, s.b);
            if (left > 0) stack.push_back({s.a, lo_hi, left});
            if (right > 0) stack.push_back({hi_lo, s.b, right});
        } else {
            int left = chain.count_in(s.a, mid);
            int right = s.count - left;
            if (left > 0) stack.push_back({s.a, mid, left});
            if (right > 0) stack.push_back({mid, s.b, right});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const RationalInterval& x, const RationalInterval& y) { return x.lo < y.lo; });
    // Shrink until the boxes are pairwise strictly disjoint (roots are
    // distinct, so this terminates).
    bool touching = true;
    while (touching) {
        touching = false;
        for (std::size_t i = 0; i + 1 < out.size(); ++i) {
            if (out[i].hi >= out[i + 1].lo) {
                touching = true;
                out[i] = refine_root(f, out[i], out[i].width() / 4);
                out[i + 1] = refine_root(f, out[i + 1], out[i + 1].width() / 4);
            }
        }
    }
    return out;
}

// Bisect an isolating interval until its width is below `target_width`.
inline RationalInterval refine_root(const IntPolynomial& f, RationalInterval iv,
                                    const Rat& target_width) {
    if (iv.lo == iv.hi) return iv;
    if (f.eval(iv.hi) == 0) return {iv.hi, iv.hi};
    // Sign at the left endpoint anchors the bisection.
    Rat fl = f.eval(iv.lo);
    if (fl == 0) return {iv.lo, iv.lo};
    const bool left_neg = fl < 0;
    while (iv.width() > target_width) {
        Rat mid = iv.mid();
        Rat fm = f.eval(mid);
        if (fm == 0) return {mid, mid};
        if ((fm < 0) == left_neg) iv.lo = mid;
        else iv.hi = mid;
    }
    return iv;
}

// --- cyclotomic polynomials ---

inline IntPolynomial cyclotomic(std::uint64_t n) {
    if (n == 1) return IntPolynomial{-1, 1};
    ZVec xn(n + 1, Int(0));
    xn[0] = -1;
    xn[n] = 1;
    IntPolynomial phi(std::move(xn));
    for (std::uint64_t d = 1; d < n; ++d)
        if (n % d == 0) phi = phi.divexact(cyclotomic(d));
    return phi;
}

// If g is the n-th cyclotomic polynomial for some n, return n.
inline std::optional<std::uint64_t> cyclotomic_index(const IntPolynomial& g) {
    if (g.degree() < 1 || !g.is_monic()) return std::nullopt;
    auto m = static_cast<std::uint64_t>(g.degree());
    // phi(n) = m forces n <= 2 m^2 + 2 comfortably at desk scale.
    for (std::uint64_t n = 1; n <= 2 * m * m + 2; ++n)
        if (euler_phi(n) == m && cyclotomic(n) == g) return n;
    return std::nullopt;
}

} // namespace genfield

#endif
