#pragma once

#include "matk/exactalg.hpp"
#include "matk/ring.hpp"
#include "matk/simplicial.hpp"

#include <map>
#include <optional>
#include <vector>

namespace matk {

struct CochainTag;
struct ChainTag;

/**
 * Finitely supported linear combination of p-simplices of a full
 * subcomplex K_J, carrying its ambient complex, its J and its degree p.
 * Instantiated as Cochain (basis χ_σ) and Chain (basis Δ_σ).  Zero
 * coefficients are never stored; mixing gradings is an error.
 */
template <typename Tag>
class Graded
{
  public:
    using Terms = std::map<VertexSet, Scalar, SimplexLess>;

    Graded(ComplexPtr complex, VertexSet J, int p, Ring ring);

    /** Single basis element c·χ_σ (or c·Δ_σ) on K_J with J given. */
    static Graded basis(ComplexPtr complex, VertexSet J, VertexSet sigma, Ring ring, long c = 1);

    const ComplexPtr& complex() const { return complex_; }
    VertexSet J() const { return J_; }
    /** Simplicial degree p (dimension of the support simplices). */
    int degree() const { return p_; }
    /** Total degree p + |J| + 1 of the corresponding moment-angle class. */
    int total_degree() const { return p_ + J_.size() + 1; }
    const Ring& ring() const { return ring_; }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Scalar coeff(VertexSet sigma) const;
    std::vector<VertexSet> support() const;

    /** Add c to the coefficient of σ; σ must be a p-face of K_J. */
    void add(VertexSet sigma, const Scalar& c);
    void set(VertexSet sigma, const Scalar& c);

    Graded& operator+=(const Graded& other);
    Graded& operator-=(const Graded& other);
    Graded operator+(const Graded& other) const;
    Graded operator-(const Graded& other) const;
    Graded operator-() const;
    Graded scaled(const Scalar& c) const;

    /** Same grading and ambient, no terms. */
    Graded zero_like() const { return Graded(complex_, J_, p_, ring_); }

    bool same_grading(const Graded& other) const;
    bool operator==(const Graded& other) const;

  private:
    void check_compatible(const Graded& other) const;

    ComplexPtr complex_;
    VertexSet J_;
    int p_;
    Ring ring_;
    Terms terms_;
};

using Cochain = Graded<CochainTag>;
using Chain = Graded<ChainTag>;

/** ε(j, J) = (-1)^{r-1} for j the r-th element of J.  Throws VertexNotInSet. */
int epsilon(int j, VertexSet J);
/** ε(L, J) = Π_{j ∈ L} ε(j, J). */
int epsilon(VertexSet L, VertexSet J);

/** Coboundary on the augmented cochain complex of K_J. */
Cochain coboundary(const Cochain& a);
/** Boundary on the augmented chain complex of K_J. */
Chain boundary(const Chain& x);

/**
 * Cochain-level product C^{p}(K_I) ⊗ C^{q}(K_J) → C^{p+q+1}(K_{I∪J}) with the
 * ζ sign correction; zero when I ∩ J ≠ ∅.  Throws AmbientMismatch.
 */
Cochain cup_multiply(const Cochain& a, const Cochain& b);

/**
 * The same product when every vertex of I precedes every vertex of J:
 * ab = (-1)^{|I|(q+1)} Σ a_σ b_τ χ_{σ∪τ}.  Throws OrderViolation otherwise.
 */
Cochain cup_multiply_ordered(const Cochain& a, const Cochain& b);

/** ā = (-1)^{1 + total degree} a = (-1)^{p+|J|} a. */
Cochain bar(const Cochain& a);

/** Kronecker pairing ⟨a, x⟩.  Throws GradingMismatch. */
Scalar evaluate(const Cochain& a, const Chain& x);

/** Faces of K_J of dimension p in canonical order (the cochain basis). */
std::vector<VertexSet> cochain_basis(const SimplicialComplex& k, VertexSet J, int p);

/** Matrix of δ^p : C^p(K_J) → C^{p+1}(K_J) in the canonical bases. */
Matrix coboundary_matrix(const SimplicialComplex& k, VertexSet J, int p);

/** Coefficient vector of a cochain in the canonical basis of its degree. */
Vector to_vector(const Cochain& a);
Cochain from_vector(const ComplexPtr& k, VertexSet J, int p, const Ring& ring, const Vector& v);
Vector to_vector(const Chain& x);
Chain chain_from_vector(const ComplexPtr& k, VertexSet J, int p, const Ring& ring, const Vector& v);

/**
 * Reduced cohomology of K_J in one degree with explicit bases.  The
 * augmented convention gives H̃^{-1}(K_∅) = ring.
 */
class CohomologyBasis
{
  public:
    CohomologyBasis(ComplexPtr k, VertexSet J, int p, Ring ring);

    VertexSet J() const { return J_; }
    int degree() const { return p_; }
    const Ring& ring() const { return ring_; }

    /** Basis (lattice basis over Z) of the cocycles Z^p(K_J). */
    const std::vector<Cochain>& cocycle_basis() const { return cocycles_; }
    /** Spanning set of the coboundaries B^p(K_J) (images of basis cochains). */
    const std::vector<Cochain>& coboundary_basis() const { return coboundaries_; }
    /** Cocycles whose classes generate H̃^p (free part first, then torsion). */
    const std::vector<Cochain>& class_representatives() const { return representatives_; }
    const AbelianGroup& group() const { return group_; }

    bool is_cocycle(const Cochain& a) const;
    bool is_coboundary(const Cochain& a) const;
    /** b with δb = a, or nullopt. */
    std::optional<Cochain> primitive(const Cochain& a) const;
    bool are_cohomologous(const Cochain& a, const Cochain& b) const { return is_coboundary(a - b); }

  private:
    ComplexPtr k_;
    VertexSet J_;
    int p_;
    Ring ring_;
    std::vector<Cochain> cocycles_;
    std::vector<Cochain> coboundaries_;
    std::vector<Cochain> representatives_;
    AbelianGroup group_;
    std::optional<LinearSolver> primitive_solver_;
};

CohomologyBasis reduced_cohomology(const ComplexPtr& k, VertexSet J, int p, const Ring& ring);

/** b with δb = a on a's K_J, or nullopt when a is not a coboundary. */
std::optional<Cochain> find_primitive(const Cochain& a);
bool is_coboundary(const Cochain& a);

/** Groups H̃^p(K_J) for p = -1, ..., |J|-1 (index p + 1). */
std::vector<AbelianGroup> reduced_cohomology_groups(const SimplicialComplex& k, VertexSet J, const Ring& ring);

/** Reduced homology groups H̃_p(K) for p = -1, ..., dim K (index p + 1). */
std::vector<AbelianGroup> reduced_homology(const SimplicialComplex& k, const Ring& ring);

/** Ranks of reduced homology over a field (Betti numbers), index p + 1. */
std::vector<std::size_t> reduced_betti(const SimplicialComplex& k, const Ring& field);

// ------------------------------------------------------------------ //
//                 Graded<Tag> template implementation                //
// ------------------------------------------------------------------ //

template <typename Tag>
Graded<Tag>::Graded(ComplexPtr complex, VertexSet J, int p, Ring ring)
    : complex_(std::move(complex)), J_(J), p_(p), ring_(ring)
{
}

template <typename Tag>
Graded<Tag> Graded<Tag>::basis(ComplexPtr complex, VertexSet J, VertexSet sigma, Ring ring, long c)
{
    Graded g(std::move(complex), J, sigma.size() - 1, ring);
    g.add(sigma, Scalar(c));
    return g;
}

template <typename Tag>
Scalar Graded<Tag>::coeff(VertexSet sigma) const
{
    auto it = terms_.find(sigma);
    return it == terms_.end() ? Scalar(0) : it->second;
}

template <typename Tag>
std::vector<VertexSet> Graded<Tag>::support() const
{
    std::vector<VertexSet> out;
    for (const auto& [s, c] : terms_)
        out.push_back(s);
    return out;
}

}  // namespace matk
