#ifndef GENFIELD_LATTICE_HPP
#define GENFIELD_LATTICE_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "genfield/heights.hpp"
#include "genfield/places.hpp"

namespace genfield {

// Full-rank subgroup of O_K, generator rows in integral-basis coordinates.
// Theorem-level ideals enter only through the index, so any full-rank
// sublattice is accepted.
struct IdealSublattice {
    FieldPtr field;
    std::vector<ZVec> rows;
    Int index; // [O_K : A] = |det|

    static IdealSublattice full(const FieldPtr& K) {
        IdealSublattice a;
        a.field = K;
        const auto d = static_cast<std::size_t>(K->degree());
        a.rows.assign(d, ZVec(d, Int(0)));
        for (std::size_t i = 0; i < d; ++i) a.rows[i][i] = 1;
        a.index = 1;
        return a;
    }
    static IdealSublattice from_rows(const FieldPtr& K, std::vector<ZVec> rows) {
        IdealSublattice a;
        a.field = K;
        a.rows = std::move(rows);
        Int det = detail::bareiss_det(a.rows);
        if (det == 0) fail(errc::bad_argument, "sublattice generators are not full rank");
        a.index = abs(det);
        return a;
    }
};

// Per-place positive bounds.  Stored in the embedding view b(tau) (one value
// per place; conjugate symmetry is automatic), with the place-normalized view
// B_v available when constructed from it: b(tau) = B_v^{d/d_v} stays rational
// because d_v | d.
class BoundsVector {
  public:
    static BoundsVector from_embedding_bounds(const FieldPtr& K, std::vector<Rat> b) {
        BoundsVector out;
        out.field_ = K;
        out.b_ = std::move(b);
        out.check();
        return out;
    }
    static BoundsVector from_place_bounds(const FieldPtr& K, const PlaceSet& places,
                                          const std::vector<Rat>& B) {
        BoundsVector out;
        out.field_ = K;
        const auto d = static_cast<unsigned long>(K->degree());
        for (std::size_t v = 0; v < B.size(); ++v) {
            auto dv = static_cast<unsigned long>(places.place(v).local_degree());
            Rat b(1);
            for (unsigned long i = 0; i < d / dv; ++i) b *= B[v];
            out.b_.push_back(b);
        }
        out.place_view_ = B;
        out.check();
        return out;
    }
    static BoundsVector uniform(const FieldPtr& K, const Rat& b) {
        std::vector<Rat> bs(static_cast<std::size_t>(K->archimedean_place_count()), b);
        return from_embedding_bounds(K, std::move(bs));
    }

    const FieldPtr& field() const { return field_; }
    std::size_t size() const { return b_.size(); }
    const Rat& embedding_bound(std::size_t v) const { return b_[v]; }
    const std::vector<Rat>& embedding_bounds() const { return b_; }
    const std::optional<std::vector<Rat>>& place_view() const { return place_view_; }

    // Product over embeddings: prod b(tau) = prod_v b_v^{d_v}.
    Rat embedding_product(const PlaceSet& places) const {
        Rat p(1);
        for (std::size_t v = 0; v < b_.size(); ++v) {
            p *= b_[v];
            if (places.place(v).local_degree() == 2) p *= b_[v];
        }
        return p;
    }

  private:
    void check() const {
        if (static_cast<int>(b_.size()) != field_->archimedean_place_count())
            fail(errc::dimension_mismatch, "one bound per archimedean place required");
        for (const auto& b : b_)
            if (b <= 0) fail(errc::bad_argument, "bounds must be positive");
    }
    FieldPtr field_;
    std::vector<Rat> b_;
    std::optional<std::vector<Rat>> place_view_;
};

// --- exact Gram-based LLL ---

namespace detail {

// LLL (delta = 0.99) on an exact rational Gram matrix; returns the unimodular
// transform U with reduced basis = U * original.  Falls back to the identity
// when the rounded Gram is not positive definite.
inline std::vector<ZVec> lll_reduce_gram(QMatrix G, const Rat& delta = Rat(99, 100)) {
    const std::size_t n = G.rows();
    std::vector<ZVec> U(n, ZVec(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i) U[i][i] = 1;

    // Gram-Schmidt data recomputed from G on demand.
    std::vector<QVec> mu(n, QVec(n, Rat(0)));
    QVec Bnorm(n, Rat(0));
    auto gso = [&]() -> bool {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                Rat num = G.at(i, j);
                for (std::size_t k = 0; k < j; ++k) num -= mu[i][k] * mu[j][k] * Bnorm[k];
                mu[i][j] = num / Bnorm[j];
            }
            Rat b = G.at(i, i);
            for (std::size_t k = 0; k < i; ++k) b -= mu[i][k] * mu[i][k] * Bnorm[k];
            if (b <= 0) return false;
            Bnorm[i] = b;
        }
        return true;
    };
    auto row_op = [&](std::size_t k, std::size_t l, const Int& q) {
        // row_k -= q * row_l, applied to U and symmetrically to G
        for (std::size_t j = 0; j < n; ++j) U[k][j] -= q * U[l][j];
        for (std::size_t j = 0; j < n; ++j) G.at(k, j) -= Rat(q) * G.at(l, j);
        for (std::size_t j = 0; j < n; ++j) G.at(j, k) -= Rat(q) * G.at(j, l);
    };
    auto swap_rows = [&](std::size_t k, std::size_t l) {
        std::swap(U[k], U[l]);
        for (std::size_t j = 0; j < n; ++j) std::swap(G.at(k, j), G.at(l, j));
        for (std::size_t j = 0; j < n; ++j) std::swap(G.at(j, k), G.at(j, l));
    };

    if (!gso()) {
        for (std::size_t i = 0; i < n; ++i) {
            U[i].assign(n, Int(0));
            U[i][i] = 1;
        }
        return U;
    }

    std::size_t k = 1;
    int guard = 0;
    const int guard_max = 10000;
    while (k < n && guard++ < guard_max) {
        // size reduction
        for (std::size_t l = k; l-- > 0;) {
            Rat m = mu[k][l];
            if (m > Rat(1, 2) || m < Rat(-1, 2)) {
                Rat shifted = m + Rat(1, 2);
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), shifted.get_num().get_mpz_t(),
                           shifted.get_den().get_mpz_t());
                row_op(k, l, q);
                if (!gso()) return U;
            }
        }
        // Lovasz condition
        Rat lhs = Bnorm[k];
        Rat rhs = (delta - mu[k][k - 1] * mu[k][k - 1]) * Bnorm[k - 1];
        if (lhs < rhs) {
            swap_rows(k, k - 1);
            if (!gso()) return U;
            if (k > 1) --k;
        } else {
            ++k;
        }
    }
    return U;
}

inline Int det_of(const std::vector<ZVec>& rows) { return bareiss_det(rows); }

// --- outward-rounded double intervals for the enumeration tree ---

struct DI {
    double lo, hi;
};
inline double d_up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }
inline double d_dn(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
inline DI di_of(const Interval& I) { return {I.lo_double(), I.hi_double()}; }
inline DI di_add(DI a, DI b) { return {d_dn(a.lo + b.lo), d_up(a.hi + b.hi)}; }
inline DI di_sub(DI a, DI b) { return {d_dn(a.lo - b.hi), d_up(a.hi - b.lo)}; }
inline DI di_mul(DI a, DI b) {
    double c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    double lo = c[0], hi = c[0];
    for (double v : c) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {d_dn(lo), d_up(hi)};
}
inline DI di_sqr(DI a) {
    DI m = di_mul(a, a);
    if (a.lo <= 0.0 && a.hi >= 0.0) m.lo = 0.0;
    else m.lo = std::max(m.lo, 0.0);
    return m;
}
inline DI di_sqrt(DI a) {
    return {d_dn(std::sqrt(std::max(a.lo, 0.0))), d_up(std::sqrt(std::max(a.hi, 0.0)))};
}
inline DI di_div_pos(DI a, DI b) {
    // b strictly positive
    double c[4] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
    double lo = c[0], hi = c[0];
    for (double v : c) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {d_dn(lo), d_up(hi)};
}
inline bool di_finite(DI a) { return std::isfinite(a.lo) && std::isfinite(a.hi); }

} // namespace detail

struct EnumOptions {
    unsigned precision = kDefaultPrecision;
    long long node_cap = 100000000LL;
};

// The Minkowski embedding of a sublattice: generator images as certified
// interval coordinates (real places one column, complex places re/im pairs),
// plus the covolume self-check.
class MinkowskiLattice {
  public:
    const FieldPtr& field() const { return field_; }
    const IdealSublattice& sublattice() const { return sub_; }
    const std::shared_ptr<const PlaceSet>& places() const { return places_; }
    unsigned precision() const { return prec_; }

    // row i = embedding of generator i
    const std::vector<std::vector<Interval>>& embedding() const { return emb_; }

    // Generators as field elements.
    FieldElement generator(std::size_t i) const { return field_->from_integral_coords(sub_.rows[i]); }

    friend MinkowskiLattice build_lattice(const FieldPtr&, const IdealSublattice&,
                                          const std::shared_ptr<const PlaceSet>&);

  private:
    FieldPtr field_;
    IdealSublattice sub_;
    std::shared_ptr<const PlaceSet> places_;
    unsigned prec_ = 0;
    std::vector<std::vector<Interval>> emb_;
};

inline MinkowskiLattice build_lattice(const FieldPtr& K, const IdealSublattice& A,
                                      const std::shared_ptr<const PlaceSet>& places) {
    MinkowskiLattice L;
    L.field_ = K;
    L.sub_ = A;
    L.places_ = places;
    L.prec_ = places->precision();
    const auto d = static_cast<std::size_t>(K->degree());
    if (A.rows.size() != d) fail(errc::dimension_mismatch, "sublattice rank must equal the degree");

    for (std::size_t i = 0; i < d; ++i) {
        FieldElement g = K->from_integral_coords(A.rows[i]);
        std::vector<Interval> row;
        for (std::size_t v = 0; v < places->size(); ++v) {
            ComplexBox z = places->evaluate(g, v);
            row.push_back(z.re);
            if (!places->place(v).is_real()) row.push_back(z.im);
        }
        if (row.size() != d) fail(errc::internal_inconsistency, "embedding dimension mismatch");
        L.emb_.push_back(std::move(row));
    }

    // Covolume self-check: det(embedding)^2 must contain |disc| index^2 / 4^s.
    {
        auto m = L.emb_;
        Interval det = Interval::from_long(1, L.prec_);
        bool ok = true;
        for (std::size_t k = 0; k < d && ok; ++k) {
            std::size_t piv = k;
            double best = 0;
            for (std::size_t i = k; i < d; ++i) {
                double mag = std::max(std::fabs(m[i][k].lo_double()), std::fabs(m[i][k].hi_double()));
                if (!m[i][k].contains_zero() && mag > best) {
                    best = mag;
                    piv = i;
                }
            }
            if (m[piv][k].contains_zero()) {
                ok = false;
                break;
            }
            if (piv != k) {
                std::swap(m[piv], m[k]);
                det = -det;
            }
            det = det * m[k][k];
            for (std::size_t i = k + 1; i < d; ++i) {
                Interval factor = m[i][k] / m[k][k];
                for (std::size_t j = k; j < d; ++j) m[i][j] = m[i][j] - factor * m[k][j];
            }
        }
        if (!ok) fail(errc::precision_exhausted, "embedding determinant not separated from 0");
        Int expected_num = abs(K->discriminant()) * A.index * A.index;
        Int four_s(1);
        for (int i = 0; i < K->signature().complex; ++i) four_s *= 4;
        if (!det.sqr().contains(Rat(expected_num, four_s)))
            fail(errc::internal_inconsistency, "covolume self-check failed");
    }
    return L;
}

namespace detail {

// Complete enumeration of nonzero lattice vectors inside the scaled ball
// Q(x) <= r + s, where coordinates of place v are divided by its envelope.
// Completeness is certified: pruning uses outward-rounded double intervals
// and an LLL-reduced basis; candidates still require exact per-place checks.
inline std::vector<ZVec> enumerate_ellipsoid(const MinkowskiLattice& L,
                                             const std::vector<Rat>& envelopes,
                                             const EnumOptions& opt) {
    const auto d = static_cast<std::size_t>(L.field()->degree());
    const auto& places = *L.places();
    const unsigned prec = L.precision();

    // Scaled interval embedding rows.
    std::vector<std::vector<Interval>> scaled(d);
    for (std::size_t i = 0; i < d; ++i) {
        std::size_t col = 0;
        for (std::size_t v = 0; v < places.size(); ++v) {
            Interval inv = Interval::from_rat(envelopes[v], prec).reciprocal();
            scaled[i].push_back(L.embedding()[i][col] * inv);
            ++col;
            if (!places.place(v).is_real()) {
                scaled[i].push_back(L.embedding()[i][col] * inv);
                ++col;
            }
        }
    }

    // Interval Gram, rational rounding, exact LLL.
    std::vector<std::vector<Interval>> gram(d, std::vector<Interval>(d, Interval(prec)));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            Interval acc(prec);
            for (std::size_t k = 0; k < d; ++k) acc = acc + scaled[i][k] * scaled[j][k];
            gram[i][j] = acc;
            gram[j][i] = acc;
        }
    QMatrix G_mid(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            G_mid.at(i, j) = snap_rat((gram[i][j].lo_rat() + gram[i][j].hi_rat()) / 2, 96);
    // Symmetrize the rounding.
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) G_mid.at(j, i) = G_mid.at(i, j);

    std::vector<ZVec> U = lll_reduce_gram(G_mid);
    if (abs(bareiss_det(U)) != 1) fail(errc::internal_inconsistency, "LLL transform not unimodular");

    // Certified Gram of the reduced basis, then outward double Cholesky.
    std::vector<std::vector<Interval>> red(d, std::vector<Interval>(d, Interval(prec)));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) {
            Interval acc(prec);
            for (std::size_t j = 0; j < d; ++j) {
                if (U[i][j] == 0) continue;
                acc = acc + Interval::from_int(U[i][j], prec) * scaled[j][k];
            }
            red[i][k] = acc;
        }
    std::vector<std::vector<DI>> R(d, std::vector<DI>(d, DI{0, 0}));
    {
        std::vector<std::vector<DI>> g(d, std::vector<DI>(d));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                Interval acc(prec);
                for (std::size_t k = 0; k < d; ++k) acc = acc + red[i][k] * red[j][k];
                g[i][j] = di_of(acc);
            }
        for (std::size_t i = 0; i < d; ++i) {
            DI t = g[i][i];
            for (std::size_t k = 0; k < i; ++k) t = di_sub(t, di_sqr(R[k][i]));
            if (!(t.lo > 0) || !di_finite(t))
                fail(errc::precision_exhausted, "Cholesky pivot not separated from 0");
            R[i][i] = di_sqrt(t);
            for (std::size_t j = i + 1; j < d; ++j) {
                DI acc = g[i][j];
                for (std::size_t k = 0; k < i; ++k) acc = di_sub(acc, di_mul(R[k][i], R[k][j]));
                R[i][j] = di_div_pos(acc, R[i][i]);
            }
        }
    }

    const double C = d_up(static_cast<double>(places.size()) + 1e-9);

    std::vector<ZVec> found;
    std::vector<long> x(d, 0);
    std::vector<DI> partial(d + 1, DI{0, 0});
    long long nodes = 0;

    // S[i] = sum_{j>i} R[i][j] x_j, maintained per level on descent.
    std::function<void(std::size_t)> descend = [&](std::size_t level_plus1) {
        std::size_t i = level_plus1 - 1;
        DI s{0, 0};
        for (std::size_t j = i + 1; j < d; ++j) {
            DI xj{static_cast<double>(x[j]), static_cast<double>(x[j])};
            s = di_add(s, di_mul(R[i][j], xj));
        }
        DI rem = di_sub(DI{C, C}, partial[i + 1]);
        if (rem.hi < 0) return;
        DI rad = di_sqrt(DI{0, rem.hi});
        DI num_lo = di_sub(DI{-rad.hi, -rad.hi}, s);
        DI num_hi = di_sub(DI{rad.hi, rad.hi}, s);
        DI lo_b = di_div_pos(num_lo, R[i][i]);
        DI hi_b = di_div_pos(num_hi, R[i][i]);
        if (!di_finite(lo_b) || !di_finite(hi_b))
            fail(errc::precision_exhausted, "enumeration bounds overflow");
        long from = static_cast<long>(std::ceil(lo_b.lo));
        long to = static_cast<long>(std::floor(hi_b.hi));
        for (long xi = from; xi <= to; ++xi) {
            if (++nodes > opt.node_cap) fail(errc::budget_exceeded, "enumeration node cap exceeded");
            x[i] = xi;
            DI xiD{static_cast<double>(xi), static_cast<double>(xi)};
            DI term = di_sqr(di_add(di_mul(R[i][i], xiD), s));
            DI p = di_add(partial[i + 1], term);
            if (p.lo > C) continue;
            partial[i] = p;
            if (i == 0) {
                bool zero = true;
                for (std::size_t j = 0; j < d; ++j)
                    if (x[j] != 0) { zero = false; break; }
                if (!zero) {
                    // back to original generator coefficients: x * U
                    ZVec coeff(d, Int(0));
                    for (std::size_t j = 0; j < d; ++j) {
                        Int acc(0);
                        for (std::size_t k = 0; k < d; ++k)
                            if (x[k] != 0) acc += Int(x[k]) * U[k][j];
                        coeff[j] = acc;
                    }
                    found.push_back(std::move(coeff));
                }
            } else {
                descend(i);
            }
        }
        x[i] = 0;
    };
    if (d > 0) descend(d);
    return found;
}

} // namespace detail

enum class BoundMode { strict, closed };

// All nonzero lattice points with |tau(xi)| < b(tau) (strict) or <= (closed),
// each certified exactly; deterministic order by |field norm|, then by
// integral coordinates.
inline std::vector<FieldElement> enumerate_box(const MinkowskiLattice& L, const BoundsVector& b,
                                               BoundMode mode = BoundMode::strict,
                                               const EnumOptions& opt = {}) {
    auto raw = detail::enumerate_ellipsoid(L, b.embedding_bounds(), opt);
    const auto& K = L.field();
    const auto d = static_cast<std::size_t>(K->degree());
    std::vector<FieldElement> out;
    for (const auto& coeff : raw) {
        // integral coords = coeff * A
        ZVec z(d, Int(0));
        for (std::size_t j = 0; j < d; ++j) {
            Int acc(0);
            for (std::size_t k = 0; k < d; ++k)
                if (coeff[k] != 0) acc += coeff[k] * L.sublattice().rows[k][j];
            z[j] = acc;
        }
        FieldElement xi = K->from_integral_coords(z);
        bool accept = true;
        for (std::size_t v = 0; v < b.size() && accept; ++v) {
            Order o = compare_embedding_norm(xi, v, b.embedding_bound(v), opt.precision);
            switch (o) {
                case Order::less: break;
                case Order::equal:
                    if (mode == BoundMode::strict) accept = false;
                    break;
                case Order::greater: accept = false; break;
                case Order::unknown:
                    fail(errc::precision_exhausted,
                         "bound comparison undecided below the precision cap");
            }
        }
        if (accept) out.push_back(std::move(xi));
    }
    std::sort(out.begin(), out.end(), [](const FieldElement& a, const FieldElement& b2) {
        Rat na = abs(a.norm()), nb = abs(b2.norm());
        if (na != nb) return na < nb;
        return a.integral_coords() < b2.integral_coords();
    });
    return out;
}

// Theorem-2.1 solver: one nonzero xi with every |tau xi| < b(tau), or nothing.
// The Minkowski hypothesis (2.11) is checked, not assumed: when it certifies
// as true an empty enumeration is an internal error.
inline std::optional<FieldElement> minkowski_solve(const IdealSublattice& A, const BoundsVector& b,
                                                   const EnumOptions& opt = {}) {
    const FieldPtr& K = A.field;
    auto places = compute_places(K, opt.precision);
    MinkowskiLattice L = build_lattice(K, A, places);
    auto points = enumerate_box(L, b, BoundMode::strict, opt);
    if (!points.empty()) return points.front();

    // (2.11): c_K^d [O_K : A] < prod b(tau)
    Rat rhs = b.embedding_product(*places);
    bool hypothesis = false;
    try {
        hypothesis = certify_leq(
            [&](unsigned p) {
                return c_K(K, p).pow_ui(static_cast<unsigned long>(K->degree())) *
                       Interval::from_int(A.index, p);
            },
            [&](unsigned p) { return Interval::from_rat(rhs, p); }, opt.precision);
    } catch (const error& e) {
        if (e.code() != errc::precision_exhausted) throw;
        hypothesis = false; // boundary case: treat as unsatisfied, NotFound stays legal
    }
    if (hypothesis)
        fail(errc::internal_inconsistency,
             "Minkowski hypothesis holds strictly but no lattice point was found");
    return std::nullopt;
}

struct SmallElementResult {
    FieldElement xi;
    std::size_t place; // w
    Interval xi_norm_at_w;      // |xi|_w (normalized absolute value)
    Interval lemma_bound;       // c_K * prod B_v^{-1}
    bool bound_certified = false; // |xi|_w <= lemma_bound separated by intervals
};

// Lemma-2.1 element: nonzero integral xi with |xi|_v < B_v at every
// archimedean v != w and |xi|_w <= c_K prod B_v^{-1}.  One enumeration pass
// over the epsilon = 1 envelope realizes the paper's limit argument; the
// minimizer of |xi|_w is returned, ties broken by sign-normalized integral
// coordinates.
inline SmallElementResult small_at_all_but_one(const FieldPtr& K, std::size_t w,
                                               const std::vector<Rat>& place_bounds,
                                               const EnumOptions& opt = {}) {
    if (K->archimedean_place_count() < 2)
        fail(errc::bad_argument, "the field must have at least two archimedean places");
    auto places = compute_places(K, opt.precision);
    if (w >= places->size()) fail(errc::bad_argument, "place index out of range");
    if (place_bounds.size() != places->size())
        fail(errc::dimension_mismatch, "one bound per place required (entry at w ignored)");
    for (std::size_t v = 0; v < place_bounds.size(); ++v) {
        if (v == w) continue;
        if (place_bounds[v] <= 0 || place_bounds[v] > 1)
            fail(errc::bad_argument, "bounds must satisfy 0 < B_v <= 1");
    }
    const auto d = static_cast<unsigned long>(K->degree());
    const auto dw = static_cast<unsigned long>(places->place(w).local_degree());

    // Envelope at w: |xi|_w <= 2 c_K prod B_v^{-1}; rational upper bound.
    Rat prod_inv(1);
    for (std::size_t v = 0; v < place_bounds.size(); ++v)
        if (v != w) prod_inv /= place_bounds[v];
    Rat ck_up = c_K(K, opt.precision).hi_rat();
    Rat envelope_w = 2 * ck_up * prod_inv;

    std::vector<Rat> B = place_bounds;
    B[w] = envelope_w;
    BoundsVector bounds = BoundsVector::from_place_bounds(K, *places, B);

    MinkowskiLattice L = build_lattice(K, IdealSublattice::full(K), places);
    // Strict at v != w, closed at w: enumerate with the closed filter and
    // re-filter strictness away from w.
    auto raw = enumerate_box(L, bounds, BoundMode::closed, opt);
    std::vector<FieldElement> candidates;
    for (auto& xi : raw) {
        bool ok = true;
        for (std::size_t v = 0; v < places->size() && ok; ++v) {
            if (v == w) continue;
            Order o = compare_embedding_norm(xi, v, bounds.embedding_bound(v), opt.precision);
            ok = (o == Order::less);
        }
        if (ok) candidates.push_back(std::move(xi));
    }
    if (candidates.empty())
        fail(errc::internal_inconsistency,
             "the epsilon = 1 Minkowski envelope contained no admissible point");

    // Interval minimization of ||xi||_w with a bounded refinement ladder;
    // candidates that cannot be minimal are discarded permanently.
    std::vector<std::size_t> alive(candidates.size());
    for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = i;
    unsigned p = opt.precision;
    for (int rung = 0; rung < 4 && alive.size() > 1; ++rung, p *= 2) {
        if (p > kMaxPrecision) break;
        auto ps = compute_places(K, p);
        std::vector<Interval> norms;
        norms.reserve(alive.size());
        for (auto idx : alive) norms.push_back(ps->embedding_norm(candidates[idx], w));
        Rat min_hi = norms.front().hi_rat();
        for (const auto& n : norms) min_hi = std::min(min_hi, n.hi_rat());
        std::vector<std::size_t> next;
        for (std::size_t i = 0; i < alive.size(); ++i)
            if (!(norms[i].lo_rat() > min_hi)) next.push_back(alive[i]);
        alive = std::move(next);
    }
    // Tie group: lexicographically smallest sign-normalized coordinates.
    auto normalized = [](const FieldElement& e) {
        QVec c = e.integral_coords();
        for (const auto& v : c) {
            if (v > 0) return c;
            if (v < 0) {
                for (auto& x : c) x = -x;
                return c;
            }
        }
        return c;
    };
    std::size_t best = alive.front();
    QVec best_key = normalized(candidates[best]);
    for (std::size_t i = 1; i < alive.size(); ++i) {
        QVec key = normalized(candidates[alive[i]]);
        if (key < best_key) {
            best = alive[i];
            best_key = std::move(key);
        }
    }

    SmallElementResult out{candidates[best], w, Interval(opt.precision), Interval(opt.precision),
                           false};
    auto ps = compute_places(K, opt.precision);
    out.xi_norm_at_w = ps->embedding_norm(out.xi, w).pow_ui(dw).rootn(d);
    {
        Interval ck = c_K(K, opt.precision);
        out.lemma_bound = ck * Interval::from_rat(prod_inv, opt.precision);
        try {
            out.bound_certified = certify_leq(
                [&](unsigned pp) {
                    auto pps = compute_places(K, pp);
                    return pps->embedding_norm(out.xi, w).pow_ui(dw).rootn(d);
                },
                [&](unsigned pp) {
                    return c_K(K, pp) * Interval::from_rat(prod_inv, pp);
                },
                opt.precision);
        } catch (const error& e) {
            if (e.code() != errc::precision_exhausted) throw;
            out.bound_certified = false; // exact boundary; reported, not hidden
        }
    }
    return out;
}

} // namespace genfield

#endif
