#pragma once

#include "matk/ring.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace matk {

using Vector = std::vector<Scalar>;

/**
 * Dense row-major matrix of exact scalars.  The matrix itself is
 * ring-agnostic; algorithms take the Ring explicitly.
 */
class Matrix
{
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);
    /** Matrix whose columns are the given vectors (all of length rows). */
    static Matrix from_columns(std::size_t rows, const std::vector<Vector>& columns);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector column(std::size_t c) const;
    Matrix transpose() const;
    bool is_zero() const;

    /** Horizontal concatenation [this | other]; row counts must agree. */
    Matrix hconcat(const Matrix& other) const;

    bool operator==(const Matrix& other) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

Matrix multiply(const Matrix& a, const Matrix& b, const Ring& ring);
Vector multiply(const Matrix& a, const Vector& x, const Ring& ring);

/**
 * Finitely generated abelian group Z^free_rank ⊕ Z/d1 ⊕ ... ⊕ Z/dk with
 * d1 | d2 | ... | dk, each d > 1.  Over a field the torsion list is empty
 * and free_rank is the dimension.
 */
struct AbelianGroup
{
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;

    bool is_zero() const { return free_rank == 0 && torsion.empty(); }

    /** Build from arbitrary (not necessarily chained) cyclic orders. */
    static AbelianGroup from_cyclic_orders(std::size_t free_rank, const std::vector<Integer>& orders);
    AbelianGroup direct_sum(const AbelianGroup& other) const;
    std::string to_string() const;

    bool operator==(const AbelianGroup& other) const = default;
};

/**
 * Smith normal form U·M·V = D over the integers.
 */
struct SmithForm
{
    Matrix D;
    Matrix U;
    Matrix V;
    /** Nonzero invariant factors d1 | d2 | ... (positive). */
    std::vector<Integer> invariant_factors;
    std::size_t rank = 0;
};

/** Smith normal form of an integer matrix.  Entries must be integral. */
SmithForm smith_normal_form(const Matrix& m);

/** Invariant factors only (cheaper: no transforms are tracked). */
std::vector<Integer> invariant_factors(const Matrix& m);

/** Rank of the matrix over the ring (over Z this is the rank over Q). */
std::size_t rank(const Matrix& m, const Ring& ring);

/** Particular solution plus a basis (lattice basis over Z) of the kernel. */
struct AffineSolution
{
    Vector particular;
    std::vector<Vector> kernel_basis;
};

/**
 * Reusable solver for A·x = b.  Over a field it stores a reduced row
 * echelon form with its transformation; over Z it stores the Smith form.
 */
class LinearSolver
{
  public:
    LinearSolver(const Matrix& a, const Ring& ring);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return rank_; }
    const Ring& ring() const { return ring_; }

    /** A particular solution, or nullopt when b is not in the image. */
    std::optional<Vector> solve(const Vector& b) const;
    bool in_image(const Vector& b) const { return solve(b).has_value(); }

    /** Basis of ker A (an integral lattice basis over Z). */
    const std::vector<Vector>& kernel_basis() const { return kernel_; }

  private:
    Ring ring_;
    std::size_t rows_;
    std::size_t cols_;
    std::size_t rank_ = 0;
    // Field path: P·A = R with R in reduced row echelon form.
    Matrix transform_;
    std::vector<std::size_t> pivot_cols_;
    // Integer path.
    SmithForm smith_;
    std::vector<Vector> kernel_;
};

/** One-shot solve: throws NoSolution when b is outside the image. */
AffineSolution solve_affine(const Matrix& a, const Vector& b, const Ring& ring);

/**
 * Group ker(outgoing)/im(incoming) for composable maps with
 * outgoing·incoming = 0; `dim` is the dimension of the middle module.
 */
AbelianGroup homology_group(const Matrix& incoming, const Matrix& outgoing, std::size_t dim,
                            const Ring& ring);

/**
 * Quotient span(big)/span(small) of submodules of ring^n given by
 * generating columns; requires span(small) ⊆ span(big).
 */
AbelianGroup quotient_group(const Matrix& big, const Matrix& small, const Ring& ring);

}  // namespace matk
