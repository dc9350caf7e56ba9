#ifndef GENFIELD_COMPOSITUM_HPP
#define GENFIELD_COMPOSITUM_HPP

#include <optional>
#include <string>
#include <vector>

#include "genfield/field.hpp"

namespace genfield {

namespace detail {

// Element of F (x) Q(sqrt(-n)) in the tensor basis { y^i z^j : 0<=i<N, j<2 }
// with y a root of f_F and z^2 = -n.  Index = i + N*j.
struct TensorAlgebra {
    const IntPolynomial& f; // monic, degree N
    Int n;                  // z^2 = -n
    int N;

    QVec mul(const QVec& a, const QVec& b) const {
        const auto nn = static_cast<std::size_t>(N);
        // y-polynomials per z-degree 0..2 before reduction.
        std::vector<QVec> acc(3, QVec(2 * nn, Rat(0)));
        for (std::size_t ia = 0; ia < 2 * nn; ++ia) {
            if (a[ia] == 0) continue;
            const std::size_t ya = ia % nn, za = ia / nn;
            for (std::size_t ib = 0; ib < 2 * nn; ++ib) {
                if (b[ib] == 0) continue;
                acc[za + ib / nn][ya + ib % nn] += a[ia] * b[ib];
            }
        }
        // z^2 -> -n
        for (std::size_t k = 0; k < 2 * nn; ++k) acc[0][k] -= Rat(n) * acc[2][k];
        QVec out(2 * nn, Rat(0));
        for (std::size_t zdeg = 0; zdeg < 2; ++zdeg) {
            QVec y = reduce_y(acc[zdeg]);
            for (std::size_t k = 0; k < nn; ++k) out[k + zdeg * nn] = y[k];
        }
        return out;
    }

    QVec reduce_y(QVec c) const {
        const auto nn = static_cast<std::size_t>(N);
        while (c.size() > nn) {
            Rat top = c.back();
            c.pop_back();
            if (top == 0) continue;
            std::size_t shift = c.size() - nn;
            for (std::size_t i = 0; i < nn; ++i)
                c[shift + i] -= top * Rat(f.coeffs()[i]);
        }
        c.resize(nn, Rat(0));
        return c;
    }
};

} // namespace detail

// K = F(sqrt(-n)) for a totally real F with known integral basis and a
// positive squarefree n with gcd(disc F, disc Q(sqrt(-n))) = 1.  The product
// basis { w_i, w_i * xi } is carried over to the power basis of a primitive
// element, and |disc K| = (disc F)^2 |disc M|^N is verified on the result.
inline FieldPtr cm_composite(const FieldPtr& F, const Int& n, const std::string& label = "") {
    if (n <= 0 || !is_squarefree(n))
        fail(errc::not_squarefree, "n must be positive and squarefree");
    if (!F->totally_real()) fail(errc::f_not_totally_real, "F must be totally real");

    const Int m = -n;
    const bool one_mod4 = ((m % 4) + 4) % 4 == 1;
    const Int disc_M = one_mod4 ? m : 4 * m;
    if (gcd(abs(F->discriminant()), abs(disc_M)) != 1)
        fail(errc::discriminants_not_coprime,
             "gcd(" + F->discriminant().get_str() + ", " + disc_M.get_str() + ") != 1");

    std::string lbl = label.empty()
                          ? (F->label() + "(sqrt(-" + n.get_str() + "))")
                          : label;
    if (F->degree() == 1) return quadratic_field(m, lbl);

    const int N = F->degree();
    const auto nn = static_cast<std::size_t>(N);
    const std::size_t dim = 2 * nn;
    detail::TensorAlgebra T{F->min_poly(), n, N};

    for (long c = 1; c <= 64; ++c) {
        // gamma = y + c z
        QVec gamma(dim, Rat(0));
        if (nn > 1) gamma[1] = 1;
        else gamma[0] += Rat(0); // N == 1 handled above
        gamma[nn] = c;

        std::vector<QVec> powers;
        QVec p(dim, Rat(0));
        p[0] = 1;
        for (std::size_t k = 0; k < dim; ++k) {
            powers.push_back(p);
            p = T.mul(p, gamma);
        }
        QMatrix P = QMatrix::from_rows(powers);
        auto Pinv = P.inverse();
        if (!Pinv) continue; // gamma not primitive; larger multiplier

        // p now holds gamma^(2N); its expression in lower powers gives the
        // minimal polynomial.
        auto combo = P.solve_left(p);
        if (!combo) fail(errc::internal_inconsistency, "power expansion failed");
        QVec mono(dim + 1, Rat(0));
        mono[dim] = 1;
        for (std::size_t j = 0; j < dim; ++j) {
            if (!is_integer((*combo)[j]))
                fail(errc::internal_inconsistency, "compositum minimal polynomial not integral");
            mono[j] = -(*combo)[j];
        }
        IntPolynomial g = clear_denominators(mono);

        // Integral basis rows: w_i in z-degree 0, then w_i * xi.
        QVec xi(dim, Rat(0));
        if (one_mod4) {
            xi[0] = Rat(1, 2);
            xi[nn] = Rat(1, 2);
        } else {
            xi[nn] = 1;
        }
        std::vector<QVec> basis_rows;
        for (std::size_t i = 0; i < nn; ++i) {
            QVec w(dim, Rat(0));
            for (std::size_t jj = 0; jj < nn; ++jj) w[jj] = F->integral_basis().at(i, jj);
            basis_rows.push_back(w * *Pinv);
            basis_rows.push_back(T.mul(w, xi) * *Pinv);
        }
        // Keep the paper's ordering: w_1..w_N, then w_1 xi..w_N xi.
        std::vector<QVec> ordered;
        for (std::size_t i = 0; i < nn; ++i) ordered.push_back(basis_rows[2 * i]);
        for (std::size_t i = 0; i < nn; ++i) ordered.push_back(basis_rows[2 * i + 1]);

        FieldPtr K = make_field(g, QMatrix::from_rows(ordered), /*assert_irreducible=*/true, lbl);

        Int expected = F->discriminant() * F->discriminant();
        Int dm = abs(disc_M);
        for (int i = 0; i < N; ++i) expected *= dm;
        if (abs(K->discriminant()) != expected)
            fail(errc::internal_inconsistency, "compositum discriminant identity failed");
        if (!K->totally_complex() || K->signature().complex != N)
            fail(errc::internal_inconsistency, "compositum signature is not (0, N)");
        return K;
    }
    fail(errc::internal_inconsistency, "no primitive element of the form y + c z found");
}

} // namespace genfield

#endif
