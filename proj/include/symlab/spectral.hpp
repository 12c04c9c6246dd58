#pragma once

#include <map>
#include <string>
#include <vector>

#include "symlab/weyl.hpp"

namespace symlab {

/// Conjugation by the Fourier transform with kernel e^{-i<x,xi>}.
///
/// Generator substitution, applied termwise and then normal-ordered:
///
///     x  -> -i dx        y  -> -i dy
///     dx -> -i x         dy -> -i y
///
/// Unit factors are kept as they fall out; nothing is normalized away.
/// The result swaps order and coefficient degree with the input.
WeylOp fourier_conjugate(const WeylOp& D);

/// Exact check that conjugation is multiplicative on a concrete pair:
/// conjugate(A B) == conjugate(A) conjugate(B) as normal forms.
/// Guarded to orders <= 3; larger inputs are rejected.
bool conjugation_is_homomorphism(const WeylOp& A, const WeylOp& B);

/// Polynomial in (x, y, xi, eta): a coefficient polynomial in (x, y) for
/// each covariable monomial xi^p eta^q. A principal symbol is homogeneous
/// of degree = operator order in (xi, eta).
struct SymbolPoly {
    int order = 0;
    std::map<Monomial2, GaussianPoly2, GradedLexLess> coeffs; ///< key: (p, q) covariable exponents

    GaussianPoly2 coefficient(int p, int q) const;

    friend bool operator==(const SymbolPoly& l, const SymbolPoly& r) {
        return l.order == r.order && l.coeffs == r.coeffs;
    }
};

/// Keeps the terms with p+q == order(D) and renames dx^p dy^q to
/// xi^p eta^q. Rejects the zero operator.
SymbolPoly principal_symbol(const WeylOp& D);

std::string to_string(const SymbolPoly& s);

enum class EllipticVerdict { elliptic, degenerate, indefinite };

const char* to_string(EllipticVerdict v);

/// Axis-aligned rational rectangle.
struct RationalRect {
    mpq_class x0, x1, y0, y1;
};

/// Pointwise classification of an order-2 symbol A xi^2 + B xi eta + C eta^2
/// on a rational sample grid, plus the symbolic discriminant B^2 - 4AC.
///
/// The symbol must be real after removing one global unit factor (1 or i);
/// the removed factor is recorded. Verdicts are exact: elliptic iff the
/// discriminant is negative at the sample point.
struct EllipticityReport {
    GaussianPoly2 A, B, C;       ///< realified coefficient forms
    GaussianPoly2 discriminant;  ///< B^2 - 4AC of the realified symbol
    GaussianRational removed_phase;

    struct GridPoint {
        mpq_class x, y;
        mpq_class disc;
        EllipticVerdict verdict;
    };
    std::vector<GridPoint> grid; ///< row-major, y outer, x inner

    /// Indices of exactly-degenerate samples.
    std::vector<std::size_t> degenerate_samples;
    /// Pairs of adjacent grid indices with strict sign change, certifying a
    /// degeneracy between them.
    std::vector<std::pair<std::size_t, std::size_t>> sign_change_pairs;

    int resolution = 0;
    RationalRect region;
};

EllipticityReport ellipticity_report(const SymbolPoly& s, const RationalRect& region, int resolution);

} // namespace symlab
