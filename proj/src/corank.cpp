#include "symlab/corank.hpp"

#include <algorithm>
#include <cassert>

#include "symlab/errors.hpp"

namespace symlab {

namespace {

// Gaussian integer, the working domain of the fraction-free elimination.
struct Zi {
    mpz_class re, im;

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }

    friend Zi operator*(const Zi& a, const Zi& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Zi operator-(const Zi& a, const Zi& b) { return {a.re - b.re, a.im - b.im}; }
};

// n / d, exact. Divisibility is guaranteed by the Sylvester identity behind
// the one-step fraction-free update; a failure here is a programming error.
Zi exact_div(const Zi& n, const Zi& d) {
    mpz_class nrm = d.re * d.re + d.im * d.im;
    Zi t{n.re * d.re + n.im * d.im, n.im * d.re - n.re * d.im};
    Zi out;
    if (mpz_divisible_p(t.re.get_mpz_t(), nrm.get_mpz_t()) == 0 ||
        mpz_divisible_p(t.im.get_mpz_t(), nrm.get_mpz_t()) == 0)
        throw std::logic_error("fraction-free elimination: inexact division");
    mpz_divexact(out.re.get_mpz_t(), t.re.get_mpz_t(), nrm.get_mpz_t());
    mpz_divexact(out.im.get_mpz_t(), t.im.get_mpz_t(), nrm.get_mpz_t());
    return out;
}

// Clears denominators of a rational row; scaling a row does not change the
// row space, so pivot structure is preserved.
std::vector<Zi> to_integer_row(const std::vector<GaussianRational>& row) {
    mpz_class l = 1;
    for (const auto& e : row) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.re.get_den().get_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.im.get_den().get_mpz_t());
    }
    std::vector<Zi> out(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) {
        mpq_class re = row[i].re * l;
        mpq_class im = row[i].im * l;
        assert(re.get_den() == 1 && im.get_den() == 1);
        out[i] = {re.get_num(), im.get_num()};
    }
    return out;
}

// Fraction-free row echelon (single-step Bareiss). Pivots are searched in
// the fixed column order 0..main_cols-1 with no column exchanges; columns
// past main_cols ride along for certificate bookkeeping. Returns pivot
// column indices in scan order.
std::vector<int> bareiss_echelon(std::vector<std::vector<Zi>>& rows, std::size_t main_cols) {
    std::vector<int> pivots;
    if (rows.empty()) return pivots;
    std::size_t total_cols = rows[0].size();
    Zi prev{1, 0};
    std::size_t rr = 0;
    for (std::size_t col = 0; col < main_cols && rr < rows.size(); ++col) {
        std::size_t pr = rr;
        while (pr < rows.size() && rows[pr][col].is_zero()) ++pr;
        if (pr == rows.size()) continue;
        std::swap(rows[rr], rows[pr]);
        const Zi piv = rows[rr][col];
        for (std::size_t i = rr + 1; i < rows.size(); ++i) {
            const Zi f = rows[i][col];
            for (std::size_t j = col; j < total_cols; ++j)
                rows[i][j] = exact_div(piv * rows[i][j] - f * rows[rr][j], prev);
            rows[i][col] = Zi{0, 0};
        }
        prev = piv;
        pivots.push_back(static_cast<int>(col));
        ++rr;
    }
    return pivots;
}

// Rows spanning D(V_d) inside V_M with coordinates in descending graded
// order (basis index K-1-c), so leading entries expose the intersection
// with every V_m at once.
struct ImageEchelon {
    TruncationBasis ambient;
    std::vector<std::vector<Zi>> rows; // echelon rows, zero tail dropped
    std::vector<int> pivot_degrees;    // degree of each pivot coordinate
    std::vector<int> pivots;           // pivot column indices
};

ImageEchelon image_echelon(const WeylOp& D, int d, int ambient_degree) {
    ImageEchelon out;
    out.ambient = TruncationBasis::up_to(ambient_degree);
    const std::size_t K = out.ambient.size();
    TruncationBasis source = TruncationBasis::up_to(d);

    std::vector<std::vector<Zi>> rows;
    for (const Monomial2& s : source.monomials) {
        GaussianPoly2 img = D.apply(GaussianPoly2::monomial(s.a, s.b, GaussianRational(1)));
        if (img.is_zero()) continue;
        std::vector<GaussianRational> row(K);
        for (const auto& [mm, c] : img.terms()) {
            int idx = out.ambient.index_of(mm);
            if (idx < 0) throw std::logic_error("image escapes the ambient truncation");
            row[K - 1 - static_cast<std::size_t>(idx)] = c;
        }
        rows.push_back(to_integer_row(row));
    }

    out.pivots = bareiss_echelon(rows, K);
    rows.resize(out.pivots.size()); // rows below the frontier are zero
    out.rows = std::move(rows);
    out.pivot_degrees.reserve(out.pivots.size());
    for (int col : out.pivots) {
        const Monomial2& mono = out.ambient.monomials[K - 1 - static_cast<std::size_t>(col)];
        out.pivot_degrees.push_back(mono.degree());
    }
    return out;
}

int basis_size(int m) { return (m + 1) * (m + 2) / 2; }

int codim_from_pivots(const std::vector<int>& pivot_degrees, int m) {
    int inside = 0;
    for (int deg : pivot_degrees)
        if (deg <= m) ++inside;
    return basis_size(m) - inside;
}

bool acts_diagonally(const WeylOp& D) {
    for (const auto& [t, c] : D.terms())
        if (t.a != t.p || t.b != t.q) return false;
    return true;
}

} // namespace

int degree_shift(const WeylOp& D) {
    int shift = 0;
    for (const auto& [t, c] : D.terms()) shift = std::max(shift, t.coeff_degree() - t.order());
    return shift;
}

AssembledOperator assemble_matrix(const WeylOp& D, int d) {
    if (d < 0) throw config_error("source degree must be nonnegative");
    AssembledOperator out;
    out.source = TruncationBasis::up_to(d);
    out.target = TruncationBasis::up_to(d + degree_shift(D));
    out.matrix = ExactMatrix(out.target.size(), out.source.size());
    for (std::size_t j = 0; j < out.source.size(); ++j) {
        const Monomial2& s = out.source.monomials[j];
        GaussianPoly2 img = D.apply(GaussianPoly2::monomial(s.a, s.b, GaussianRational(1)));
        for (const auto& [mm, c] : img.terms()) {
            int idx = out.target.index_of(mm);
            if (idx < 0) throw std::logic_error("image escapes the assembled target basis");
            out.matrix.at(static_cast<std::size_t>(idx), j) = c;
        }
    }
    return out;
}

int truncated_corank(const WeylOp& D, int m, int d) {
    if (m < 0 || d < 0) throw config_error("degrees must be nonnegative");
    int ambient = std::max(m, d + degree_shift(D));
    ImageEchelon ech = image_echelon(D, d, ambient);
    return codim_from_pivots(ech.pivot_degrees, m);
}

CorankLadder corank_ladder(const WeylOp& D, int m_max, int d_max) {
    if (m_max < 0 || d_max < 0) throw config_error("degrees must be nonnegative");
    if (m_max > d_max) throw config_error("corank ladder requires m_max <= d_max");

    CorankLadder ladder;
    ladder.m_max = m_max;
    ladder.d_max = d_max;
    ladder.monomial_eigenbasis = acts_diagonally(D);

    // One elimination per source degree serves every observation degree.
    std::vector<std::vector<int>> pivot_degrees_by_d(static_cast<std::size_t>(d_max) + 1);
    for (int d = 0; d <= d_max; ++d) {
        int ambient = std::max(m_max, d + degree_shift(D));
        pivot_degrees_by_d[static_cast<std::size_t>(d)] = image_echelon(D, d, ambient).pivot_degrees;
    }

    ladder.entries.reserve(static_cast<std::size_t>(m_max + 1) * (d_max + 1));
    for (int m = 0; m <= m_max; ++m)
        for (int d = 0; d <= d_max; ++d)
            ladder.entries.push_back(
                {m, d, codim_from_pivots(pivot_degrees_by_d[static_cast<std::size_t>(d)], m)});

    for (int m = 0; m <= m_max; ++m) {
        StabilizedCodim s;
        s.m = m;
        if (d_max + 1 >= ladder.window) {
            int tail = ladder.codim(m, d_max);
            bool stable = true;
            for (int d = d_max - ladder.window + 1; d <= d_max; ++d)
                if (ladder.codim(m, d) != tail) stable = false;
            if (stable) {
                s.stabilized = true;
                s.value = tail;
                int start = d_max;
                while (start > 0 && ladder.codim(m, start - 1) == tail) --start;
                s.run_start_d = start;
            }
        }
        ladder.stabilized.push_back(s);
    }

    bool all_stabilized = true;
    for (const auto& s : ladder.stabilized)
        if (!s.stabilized) all_stabilized = false;

    if (!all_stabilized) {
        ladder.verdict = "not stabilized";
        return ladder;
    }

    if (m_max >= 2) {
        bool increasing = true;
        for (int m = m_max - 2; m < m_max; ++m)
            if (ladder.stabilized[static_cast<std::size_t>(m)].value >=
                ladder.stabilized[static_cast<std::size_t>(m) + 1].value)
                increasing = false;
        ladder.diverging = increasing;
    }

    if (ladder.diverging) {
        ladder.verdict = "diverging (inf)";
        return ladder;
    }

    bool constant_tail = true;
    int tail_value = ladder.stabilized[static_cast<std::size_t>(m_max)].value;
    for (int m = std::max(0, m_max - 2); m <= m_max; ++m)
        if (ladder.stabilized[static_cast<std::size_t>(m)].value != tail_value) constant_tail = false;

    ladder.verdict = constant_tail ? "corank = " + std::to_string(tail_value) : "inconclusive";
    return ladder;
}

IndependenceCertificate independence_mod_range(const WeylOp& D, const GaussianPoly2& f,
                                               int k, int m, int d) {
    if (k < 1) throw config_error("independence query needs k >= 1");
    if (m < 0 || d < 0) throw config_error("degrees must be nonnegative");
    if (!f.is_real()) throw config_error("independence query requires a real-coefficient f");

    std::vector<GaussianPoly2> powers;
    GaussianPoly2 p = GaussianPoly2::one();
    for (int j = 0; j < k; ++j) {
        if (p.degree() > m)
            throw degree_overflow_error("deg(f^" + std::to_string(j) + ") exceeds observation degree " +
                                        std::to_string(m));
        powers.push_back(p);
        p = p * f;
    }

    int ambient = std::max(m, d + degree_shift(D));
    ImageEchelon ech = image_echelon(D, d, ambient);
    const std::size_t K = ech.ambient.size();

    // Range rows inside V_m, already in echelon form.
    std::vector<std::vector<Zi>> rows;
    std::vector<int> range_pivots;
    for (std::size_t r = 0; r < ech.rows.size(); ++r) {
        if (ech.pivot_degrees[r] > m) continue;
        std::vector<Zi> row = ech.rows[r];
        row.resize(K + static_cast<std::size_t>(k), Zi{0, 0});
        rows.push_back(std::move(row));
        range_pivots.push_back(ech.pivots[r]);
    }
    const std::size_t dim_w = rows.size();

    for (int j = 0; j < k; ++j) {
        std::vector<GaussianRational> row(K + static_cast<std::size_t>(k));
        for (const auto& [mm, c] : powers[static_cast<std::size_t>(j)].terms()) {
            int idx = ech.ambient.index_of(mm);
            row[K - 1 - static_cast<std::size_t>(idx)] = c;
        }
        row[K + static_cast<std::size_t>(j)] = GaussianRational(1);
        rows.push_back(to_integer_row(row));
    }

    std::vector<int> pivots = bareiss_echelon(rows, K);

    IndependenceCertificate cert;
    cert.independent = pivots.size() == dim_w + static_cast<std::size_t>(k);
    if (cert.independent) {
        for (int col : pivots) {
            if (std::find(range_pivots.begin(), range_pivots.end(), col) != range_pivots.end()) continue;
            cert.witness.push_back(ech.ambient.monomials[K - 1 - static_cast<std::size_t>(col)]);
        }
        return cert;
    }

    // The first fully reduced row names an explicit combination of powers
    // inside the range intersection.
    for (std::size_t r = pivots.size(); r < rows.size(); ++r) {
        bool aug_nonzero = false;
        for (int j = 0; j < k; ++j)
            if (!rows[r][K + static_cast<std::size_t>(j)].is_zero()) aug_nonzero = true;
        if (!aug_nonzero) continue;
        mpz_class g = 0;
        for (int j = 0; j < k; ++j) {
            const Zi& z = rows[r][K + static_cast<std::size_t>(j)];
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.re.get_mpz_t());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.im.get_mpz_t());
        }
        for (int j = 0; j < k; ++j) {
            const Zi& z = rows[r][K + static_cast<std::size_t>(j)];
            cert.dependence.push_back({mpq_class(z.re) / mpq_class(g), mpq_class(z.im) / mpq_class(g)});
        }
        break;
    }
    return cert;
}

bool in_range_intersection(const WeylOp& D, const GaussianPoly2& g, int m, int d) {
    if (m < 0 || d < 0) throw config_error("degrees must be nonnegative");
    if (g.degree() > m) throw config_error("polynomial degree exceeds observation degree");
    if (g.is_zero()) return true;

    int ambient = std::max(m, d + degree_shift(D));
    ImageEchelon ech = image_echelon(D, d, ambient);
    const std::size_t K = ech.ambient.size();

    std::vector<std::vector<Zi>> rows;
    for (std::size_t r = 0; r < ech.rows.size(); ++r) {
        if (ech.pivot_degrees[r] > m) continue;
        rows.push_back(ech.rows[r]);
    }
    const std::size_t dim_w = rows.size();

    std::vector<GaussianRational> grow(K);
    for (const auto& [mm, c] : g.terms()) {
        int idx = ech.ambient.index_of(mm);
        grow[K - 1 - static_cast<std::size_t>(idx)] = c;
    }
    rows.push_back(to_integer_row(grow));

    return bareiss_echelon(rows, K).size() == dim_w;
}

LadderComparison compare_ladders(const WeylOp& A, const WeylOp& B, int m_max, int d_max) {
    LadderComparison cmp;
    cmp.first = corank_ladder(A, m_max, d_max);
    cmp.second = corank_ladder(B, m_max, d_max);
    cmp.comparable = degree_shift(B) == 0;
    if (!cmp.comparable) {
        cmp.note = "not comparable at this truncation: second operator does not map "
                   "degree truncations into themselves";
        return cmp;
    }
    cmp.entries_agree = true;
    for (std::size_t i = 0; i < cmp.first.entries.size(); ++i)
        if (cmp.first.entries[i].codim != cmp.second.entries[i].codim) cmp.entries_agree = false;
    cmp.note = cmp.entries_agree
                   ? "ladders agree on every computed cell"
                   : "ladders differ; polynomial-ring codimensions are not preserved by "
                     "conjugation even where truncations are preserved";
    return cmp;
}

} // namespace symlab
