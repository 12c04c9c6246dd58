#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symlab/weyl.hpp"

namespace symlab {

/// Dense exact matrix, row-major.
struct ExactMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<GaussianRational> entries;

    ExactMatrix() = default;
    ExactMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}

    GaussianRational& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    const GaussianRational& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
};

/// Matrix of D from the degree-<=d basis into the degree-<=(d+r) basis,
/// r = max(0, coefficient degree - order) over terms. Column j holds the
/// coordinates of D applied to the j-th source monomial.
struct AssembledOperator {
    TruncationBasis source;
    TruncationBasis target;
    ExactMatrix matrix;
};

AssembledOperator assemble_matrix(const WeylOp& D, int d);

/// How far D can push degrees up: max(0, max over terms of
/// coeff_degree - order). Zero means D maps every truncation into itself.
int degree_shift(const WeylOp& D);

/// dim( V_m / (D(V_d) n V_m) ), exact, where V_k is the space of
/// polynomials of total degree <= k.
int truncated_corank(const WeylOp& D, int m, int d);

struct LadderEntry {
    int m = 0;
    int d = 0;
    int codim = 0;
};

struct StabilizedCodim {
    int m = 0;
    bool stabilized = false;
    int value = -1; ///< codim over the final run, meaningful when stabilized
    int run_start_d = -1;
};

struct CorankLadder {
    int m_max = 0;
    int d_max = 0;
    int window = 3; ///< consecutive equal codim values required at the tail

    std::vector<LadderEntry> entries; ///< all (m,d) pairs, m-major
    std::vector<StabilizedCodim> stabilized;

    /// True when every term of D satisfies a==p and b==q, so D acts
    /// diagonally on monomials and stabilized values are exact.
    bool monomial_eigenbasis = false;

    /// Stabilized values strictly increase across the final window of m.
    bool diverging = false;

    std::string verdict; ///< "corank = k", "diverging (inf)", "not stabilized", "inconclusive"

    int codim(int m, int d) const { return entries[static_cast<std::size_t>(m) * (d_max + 1) + d].codim; }
};

CorankLadder corank_ladder(const WeylOp& D, int m_max, int d_max);

/// Outcome of testing 1, f, ..., f^(k-1) for linear independence modulo
/// D(V_d) n V_m.
struct IndependenceCertificate {
    bool independent = false;
    /// Leading monomials witnessing each power outside the range span.
    std::vector<Monomial2> witness;
    /// Coefficients of a nontrivial combination sum lambda_j f^j landing in
    /// the range intersection, when dependent.
    std::vector<GaussianRational> dependence;
};

IndependenceCertificate independence_mod_range(const WeylOp& D, const GaussianPoly2& f,
                                               int k, int m, int d);

/// True iff g lies in D(V_d) n V_m. Requires deg(g) <= m.
bool in_range_intersection(const WeylOp& D, const GaussianPoly2& g, int m, int d);

/// Side-by-side ladders for two operators over the same window. The second
/// operator is flagged comparable only when it maps truncations into
/// themselves.
struct LadderComparison {
    bool comparable = false;
    bool entries_agree = false; ///< meaningful when comparable
    std::string note;
    CorankLadder first;
    CorankLadder second;
};

LadderComparison compare_ladders(const WeylOp& A, const WeylOp& B, int m_max, int d_max);

} // namespace symlab
