#include "matk/exactalg.hpp"

#include "matk/error.hpp"

#include <algorithm>
#include <utility>

namespace matk {

// ------------------------------------------------------------------ //
//                              Matrix                                //
// ------------------------------------------------------------------ //

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vector>& columns)
{
    Matrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
    {
        if (columns[c].size() != rows)
            throw Error("DimensionMismatch", "column length differs from row count");
        for (std::size_t r = 0; r < rows; ++r)
            m(r, c) = columns[c][r];
    }
    return m;
}

Vector Matrix::column(std::size_t c) const
{
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        v[r] = (*this)(r, c);
    return v;
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

bool Matrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& x) { return sgn(x) == 0; });
}

Matrix Matrix::hconcat(const Matrix& other) const
{
    if (other.rows_ != rows_)
        throw Error("DimensionMismatch", "hconcat row counts differ");
    Matrix m(rows_, cols_ + other.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
    {
        for (std::size_t c = 0; c < cols_; ++c)
            m(r, c) = (*this)(r, c);
        for (std::size_t c = 0; c < other.cols_; ++c)
            m(r, cols_ + c) = other(r, c);
    }
    return m;
}

Matrix multiply(const Matrix& a, const Matrix& b, const Ring& ring)
{
    if (a.cols() != b.rows())
        throw Error("DimensionMismatch", "matrix product");
    Matrix m(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
        {
            if (sgn(a(i, k)) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (sgn(b(k, j)) != 0)
                    m(i, j) = ring.add(m(i, j), ring.mul(a(i, k), b(k, j)));
        }
    return m;
}

Vector multiply(const Matrix& a, const Vector& x, const Ring& ring)
{
    if (a.cols() != x.size())
        throw Error("DimensionMismatch", "matrix-vector product");
    Vector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (sgn(a(i, k)) != 0 && sgn(x[k]) != 0)
                y[i] = ring.add(y[i], ring.mul(a(i, k), x[k]));
    return y;
}

// ------------------------------------------------------------------ //
//                            AbelianGroup                            //
// ------------------------------------------------------------------ //

namespace {

/**
 * Integer matrix with optional tracking of the left/right transforms,
 * reduced in place to Smith normal form.
 */
class IntegerReducer
{
  public:
    IntegerReducer(const Matrix& m, bool track) : n_(m.rows()), m_(m.cols()), track_(track)
    {
        a_.assign(n_, std::vector<Integer>(m_));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < m_; ++j)
            {
                const Scalar& x = m(i, j);
                if (x.get_den() != 1)
                    throw Error("NotIntegral", "Smith normal form needs integer entries");
                a_[i][j] = x.get_num();
            }
        if (track_)
        {
            u_.assign(n_, std::vector<Integer>(n_));
            v_.assign(m_, std::vector<Integer>(m_));
            for (std::size_t i = 0; i < n_; ++i)
                u_[i][i] = 1;
            for (std::size_t j = 0; j < m_; ++j)
                v_[j][j] = 1;
        }
    }

    void reduce()
    {
        std::size_t t = 0;
        const std::size_t lim = std::min(n_, m_);
        while (t < lim)
        {
            // Pivot by minimal absolute value to limit coefficient swell.
            if (!bring_min_to(t, t, n_, m_))
                break;
            for (;;)
            {
                if (clear_column(t))
                {
                    bring_min_to(t, t + 1, n_, t + 1, true);
                    continue;
                }
                if (clear_row(t))
                {
                    bring_min_to(t, t, t + 1, m_, true);
                    continue;
                }
                // Enforce the divisibility chain.
                bool fixed = true;
                for (std::size_t i = t + 1; i < n_ && fixed; ++i)
                    for (std::size_t j = t + 1; j < m_; ++j)
                        if (a_[i][j] % a_[t][t] != 0)
                        {
                            add_row(t, i, Integer(1));
                            fixed = false;
                            break;
                        }
                if (fixed)
                    break;
            }
            if (a_[t][t] < 0)
                negate_row(t);
            ++t;
        }
        rank_ = t;
    }

    std::size_t rank() const { return rank_; }
    const Integer& at(std::size_t i, std::size_t j) const { return a_[i][j]; }

    Matrix to_matrix(const std::vector<std::vector<Integer>>& src, std::size_t r, std::size_t c) const
    {
        Matrix out(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                out(i, j) = Scalar(src[i][j]);
        return out;
    }

    Matrix d() const { return to_matrix(a_, n_, m_); }
    Matrix u() const { return to_matrix(u_, n_, n_); }
    Matrix v() const { return to_matrix(v_, m_, m_); }

  private:
    // Move the smallest nonzero |entry| of rows [r0, r1) x cols [c0, c1)
    // to (t, t).  With `include_pivot` the current pivot competes too.
    bool bring_min_to(std::size_t t, std::size_t r0, std::size_t r1, std::size_t c1,
                      bool include_pivot = false)
    {
        std::size_t bi = n_, bj = m_;
        Integer best;
        auto consider = [&](std::size_t i, std::size_t j) {
            if (sgn(a_[i][j]) == 0)
                return;
            Integer mag = abs(a_[i][j]);
            if (bi == n_ || mag < best)
            {
                best = mag;
                bi = i;
                bj = j;
            }
        };
        if (include_pivot)
            consider(t, t);
        for (std::size_t i = r0; i < r1; ++i)
            for (std::size_t j = t; j < c1; ++j)
                consider(i, j);
        if (bi == n_)
            return false;
        if (bi != t)
            swap_rows(t, bi);
        if (bj != t)
            swap_cols(t, bj);
        return true;
    }

    // Returns true when a nonzero remainder is left below the pivot.
    bool clear_column(std::size_t t)
    {
        bool leftover = false;
        for (std::size_t i = t + 1; i < n_; ++i)
        {
            if (sgn(a_[i][t]) == 0)
                continue;
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), a_[i][t].get_mpz_t(), a_[t][t].get_mpz_t());
            add_row(i, t, Integer(-q));
            if (sgn(a_[i][t]) != 0)
                leftover = true;
        }
        return leftover;
    }

    bool clear_row(std::size_t t)
    {
        bool leftover = false;
        for (std::size_t j = t + 1; j < m_; ++j)
        {
            if (sgn(a_[t][j]) == 0)
                continue;
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), a_[t][j].get_mpz_t(), a_[t][t].get_mpz_t());
            add_col(j, t, Integer(-q));
            if (sgn(a_[t][j]) != 0)
                leftover = true;
        }
        return leftover;
    }

    // row_dst += f * row_src
    void add_row(std::size_t dst, std::size_t src, const Integer& f)
    {
        for (std::size_t j = 0; j < m_; ++j)
            if (sgn(a_[src][j]) != 0)
                a_[dst][j] += f * a_[src][j];
        if (track_)
            for (std::size_t j = 0; j < n_; ++j)
                if (sgn(u_[src][j]) != 0)
                    u_[dst][j] += f * u_[src][j];
    }

    // col_dst += f * col_src
    void add_col(std::size_t dst, std::size_t src, const Integer& f)
    {
        for (std::size_t i = 0; i < n_; ++i)
            if (sgn(a_[i][src]) != 0)
                a_[i][dst] += f * a_[i][src];
        if (track_)
            for (std::size_t i = 0; i < m_; ++i)
                if (sgn(v_[i][src]) != 0)
                    v_[i][dst] += f * v_[i][src];
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        std::swap(a_[a], a_[b]);
        if (track_)
            std::swap(u_[a], u_[b]);
    }

    void swap_cols(std::size_t a, std::size_t b)
    {
        for (std::size_t i = 0; i < n_; ++i)
            std::swap(a_[i][a], a_[i][b]);
        if (track_)
            for (std::size_t i = 0; i < m_; ++i)
                std::swap(v_[i][a], v_[i][b]);
    }

    void negate_row(std::size_t t)
    {
        for (std::size_t j = 0; j < m_; ++j)
            a_[t][j] = -a_[t][j];
        if (track_)
            for (std::size_t j = 0; j < n_; ++j)
                u_[t][j] = -u_[t][j];
    }

    std::size_t n_, m_;
    bool track_;
    std::size_t rank_ = 0;
    std::vector<std::vector<Integer>> a_, u_, v_;
};

}  // namespace

AbelianGroup AbelianGroup::from_cyclic_orders(std::size_t free_rank, const std::vector<Integer>& orders)
{
    AbelianGroup g;
    g.free_rank = free_rank;
    std::vector<Integer> nontrivial;
    for (const Integer& d : orders)
    {
        Integer a = abs(d);
        if (a == 0)
            ++g.free_rank;
        else if (a != 1)
            nontrivial.push_back(a);
    }
    if (nontrivial.empty())
        return g;
    Matrix diag(nontrivial.size(), nontrivial.size());
    for (std::size_t i = 0; i < nontrivial.size(); ++i)
        diag(i, i) = Scalar(nontrivial[i]);
    for (const Integer& d : invariant_factors(diag))
        if (d != 1)
            g.torsion.push_back(d);
    return g;
}

AbelianGroup AbelianGroup::direct_sum(const AbelianGroup& other) const
{
    std::vector<Integer> orders = torsion;
    orders.insert(orders.end(), other.torsion.begin(), other.torsion.end());
    return from_cyclic_orders(free_rank + other.free_rank, orders);
}

std::string AbelianGroup::to_string() const
{
    std::string out;
    if (free_rank > 0)
        out = free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank);
    for (const Integer& d : torsion)
    {
        if (!out.empty())
            out += " + ";
        out += "Z/" + d.get_str();
    }
    return out.empty() ? "0" : out;
}

// ------------------------------------------------------------------ //
//                         Smith normal form                          //
// ------------------------------------------------------------------ //

SmithForm smith_normal_form(const Matrix& m)
{
    IntegerReducer red(m, true);
    red.reduce();
    SmithForm f;
    f.D = red.d();
    f.U = red.u();
    f.V = red.v();
    f.rank = red.rank();
    for (std::size_t i = 0; i < f.rank; ++i)
        f.invariant_factors.push_back(red.at(i, i));
    return f;
}

std::vector<Integer> invariant_factors(const Matrix& m)
{
    IntegerReducer red(m, false);
    red.reduce();
    std::vector<Integer> out;
    for (std::size_t i = 0; i < red.rank(); ++i)
        out.push_back(red.at(i, i));
    return out;
}

// ------------------------------------------------------------------ //
//                        Field elimination                           //
// ------------------------------------------------------------------ //

namespace {

/**
 * Reduced row echelon form of `a` over a field, optionally tracking the
 * invertible transform P with P·a = R.
 */
struct Echelon
{
    Matrix r;
    Matrix p;
    std::vector<std::size_t> pivots;
};

Echelon echelon(const Matrix& a, const Ring& ring, bool track)
{
    Echelon e;
    e.r = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            e.r(i, j) = ring.normalize(a(i, j));
    if (track)
        e.p = Matrix::identity(a.rows());
    Matrix& r = e.r;
    const std::size_t n = r.rows(), m = r.cols();
    std::size_t row = 0;
    for (std::size_t col = 0; col < m && row < n; ++col)
    {
        std::size_t piv = n;
        for (std::size_t i = row; i < n; ++i)
            if (sgn(r(i, col)) != 0)
            {
                piv = i;
                break;
            }
        if (piv == n)
            continue;
        if (piv != row)
        {
            for (std::size_t j = 0; j < m; ++j)
                std::swap(r(row, j), r(piv, j));
            if (track)
                for (std::size_t j = 0; j < n; ++j)
                    std::swap(e.p(row, j), e.p(piv, j));
        }
        Scalar inv = ring.inv(r(row, col));
        if (inv != 1)
        {
            for (std::size_t j = col; j < m; ++j)
                r(row, j) = ring.mul(r(row, j), inv);
            if (track)
                for (std::size_t j = 0; j < n; ++j)
                    e.p(row, j) = ring.mul(e.p(row, j), inv);
        }
        for (std::size_t i = 0; i < n; ++i)
        {
            if (i == row || sgn(r(i, col)) == 0)
                continue;
            Scalar f = r(i, col);
            for (std::size_t j = col; j < m; ++j)
                if (sgn(r(row, j)) != 0)
                    r(i, j) = ring.sub(r(i, j), ring.mul(f, r(row, j)));
            if (track)
                for (std::size_t j = 0; j < n; ++j)
                    if (sgn(e.p(row, j)) != 0)
                        e.p(i, j) = ring.sub(e.p(i, j), ring.mul(f, e.p(row, j)));
        }
        e.pivots.push_back(col);
        ++row;
    }
    return e;
}

}  // namespace

std::size_t rank(const Matrix& m, const Ring& ring)
{
    if (ring.kind() == Ring::Kind::Integers)
        return rank(m, Ring::rationals());
    return echelon(m, ring, false).pivots.size();
}

// ------------------------------------------------------------------ //
//                            LinearSolver                            //
// ------------------------------------------------------------------ //

LinearSolver::LinearSolver(const Matrix& a, const Ring& ring)
    : ring_(ring), rows_(a.rows()), cols_(a.cols())
{
    if (ring.is_field())
    {
        Echelon e = echelon(a, ring, true);
        transform_ = std::move(e.p);
        pivot_cols_ = e.pivots;
        rank_ = pivot_cols_.size();
        std::vector<bool> is_pivot(cols_, false);
        for (std::size_t c : pivot_cols_)
            is_pivot[c] = true;
        for (std::size_t f = 0; f < cols_; ++f)
        {
            if (is_pivot[f])
                continue;
            Vector v(cols_);
            v[f] = 1;
            for (std::size_t i = 0; i < rank_; ++i)
                v[pivot_cols_[i]] = ring.neg(e.r(i, f));
            kernel_.push_back(std::move(v));
        }
    }
    else
    {
        smith_ = smith_normal_form(a);
        rank_ = smith_.rank;
        for (std::size_t c = rank_; c < cols_; ++c)
            kernel_.push_back(smith_.V.column(c));
    }
}

std::optional<Vector> LinearSolver::solve(const Vector& b) const
{
    if (b.size() != rows_)
        throw Error("DimensionMismatch", "right-hand side length differs from row count");
    Vector nb(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        nb[i] = ring_.normalize(b[i]);
    if (ring_.is_field())
    {
        Vector c = multiply(transform_, nb, ring_);
        for (std::size_t i = rank_; i < rows_; ++i)
            if (sgn(c[i]) != 0)
                return std::nullopt;
        Vector x(cols_);
        for (std::size_t i = 0; i < rank_; ++i)
            x[pivot_cols_[i]] = c[i];
        return x;
    }
    Vector c = multiply(smith_.U, nb, ring_);
    Vector y(cols_);
    for (std::size_t i = 0; i < rows_; ++i)
    {
        if (i < rank_)
        {
            const Integer& d = smith_.invariant_factors[i];
            if (c[i].get_num() % d != 0)
                return std::nullopt;
            y[i] = Scalar(Integer(c[i].get_num() / d));
        }
        else if (sgn(c[i]) != 0)
            return std::nullopt;
    }
    return multiply(smith_.V, y, ring_);
}

AffineSolution solve_affine(const Matrix& a, const Vector& b, const Ring& ring)
{
    LinearSolver solver(a, ring);
    auto x = solver.solve(b);
    if (!x)
        throw Error("NoSolution", "right-hand side is not in the image");
    return AffineSolution{std::move(*x), solver.kernel_basis()};
}

// ------------------------------------------------------------------ //
//                          Homology groups                           //
// ------------------------------------------------------------------ //

AbelianGroup homology_group(const Matrix& incoming, const Matrix& outgoing, std::size_t dim,
                            const Ring& ring)
{
    if (ring.is_field())
    {
        std::size_t rin = incoming.cols() == 0 || incoming.rows() == 0 ? 0 : rank(incoming, ring);
        std::size_t rout = outgoing.cols() == 0 || outgoing.rows() == 0 ? 0 : rank(outgoing, ring);
        AbelianGroup g;
        g.free_rank = dim - rin - rout;
        return g;
    }
    std::vector<Integer> in_factors;
    if (incoming.rows() > 0 && incoming.cols() > 0)
        in_factors = invariant_factors(incoming);
    std::size_t rout = 0;
    if (outgoing.rows() > 0 && outgoing.cols() > 0)
        rout = invariant_factors(outgoing).size();
    AbelianGroup g;
    g.free_rank = dim - in_factors.size() - rout;
    for (const Integer& d : in_factors)
        if (d != 1)
            g.torsion.push_back(d);
    return g;
}

AbelianGroup quotient_group(const Matrix& big, const Matrix& small, const Ring& ring)
{
    if (big.rows() != small.rows())
        throw Error("DimensionMismatch", "quotient_group ambient dimensions differ");
    if (ring.is_field())
    {
        AbelianGroup g;
        g.free_rank = rank(big, ring) - rank(small, ring);
        return g;
    }
    // Coordinates of the small generators in the basis of span(big) given
    // by the first `rank` columns of U^{-1}·D.
    SmithForm f = smith_normal_form(big);
    const std::size_t r = f.rank;
    if (r == 0)
        return AbelianGroup{};
    Matrix coords(r, small.cols());
    for (std::size_t c = 0; c < small.cols(); ++c)
    {
        Vector y = multiply(f.U, small.column(c), ring);
        for (std::size_t i = 0; i < y.size(); ++i)
        {
            if (i < r)
            {
                if (y[i].get_num() % f.invariant_factors[i] != 0)
                    throw Error("NotASubmodule", "small generators are not in span(big)");
                coords(i, c) = Scalar(Integer(y[i].get_num() / f.invariant_factors[i]));
            }
            else if (sgn(y[i]) != 0)
                throw Error("NotASubmodule", "small generators are not in span(big)");
        }
    }
    std::vector<Integer> factors;
    if (small.cols() > 0)
        factors = invariant_factors(coords);
    AbelianGroup g;
    g.free_rank = r - factors.size();
    for (const Integer& d : factors)
        if (d != 1)
            g.torsion.push_back(d);
    return g;
}

}  // namespace matk
