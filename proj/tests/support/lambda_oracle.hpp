#pragma once

#include <array>

#include "symlab/rational.hpp"

// Symbolic route to tau(E,E,E) for the projection built from a unit vector
// of functions (f,g,h), independent of any quadrature.
//
// Every entry of E is an affine combination of {1, f, g, h}. For such
// combinations tau contracts through three facts:
//   - d(1) = 0, so a letter 1 in the second or third slot kills the term,
//     and tau(1, a, b) integrates an exact 2-form, hence vanishes;
//   - repeated letters vanish: da da = 0, and a d(a) d(b) = 1/2 d(a^2) d(b)
//     integrates to zero over a closed surface;
//   - the three cyclic orderings of (f,g,h) share one value
//     T = integral f dg dh, and odd orderings give -T.
// So tau(x_i, x_j, x_k) = eps_ijk T on the letters {f,g,h}, which turns
// tau(a,b,c) into T times the scalar triple product of the letter parts.
//
// The function below returns lambda with tau(E,E,E) = lambda * T, as an
// exact Gaussian rational.

namespace lambda_oracle {

using symlab::GaussianRational;

// Coefficients of one entry in the basis (1, f, g, h).
using LinForm = std::array<GaussianRational, 4>;

inline GaussianRational triple_product(const LinForm& a, const LinForm& b, const LinForm& c) {
    // Scalar triple product over the letter components 1..3.
    GaussianRational out;
    int idx[3][3] = {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}};
    for (auto& p : idx) {
        out += a[p[0]] * (b[p[1]] * c[p[2]] - b[p[2]] * c[p[1]]);
    }
    return out;
}

inline GaussianRational lambda_of_projection() {
    const mpq_class half(1, 2);
    const GaussianRational h2(half);
    const GaussianRational ih2(mpq_class(0), half);
    // E = 1/2 [[1+h, f+ig], [f-ig, 1-h]].
    LinForm e[2][2];
    e[0][0] = {h2, GaussianRational(0), GaussianRational(0), h2};
    e[0][1] = {GaussianRational(0), h2, ih2, GaussianRational(0)};
    e[1][0] = {GaussianRational(0), h2, -ih2, GaussianRational(0)};
    e[1][1] = {h2, GaussianRational(0), GaussianRational(0), -h2};

    GaussianRational lambda;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) lambda += triple_product(e[i][j], e[j][k], e[k][i]);
    return lambda;
}

} // namespace lambda_oracle
