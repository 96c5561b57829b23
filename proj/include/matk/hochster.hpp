#pragma once

#include "matk/cochains.hpp"

#include <map>
#include <vector>

namespace matk {

/**
 * Class in H*(Z_K) carried by a cocycle on a full subcomplex K_J; its
 * total degree is p + |J| + 1.
 */
class CohomologyClass
{
  public:
    /** Throws NotACocycle when the representative is not a cocycle. */
    explicit CohomologyClass(Cochain representative);

    const Cochain& representative() const { return rep_; }
    const Ring& ring() const { return rep_.ring(); }
    VertexSet J() const { return rep_.J(); }
    int degree() const { return rep_.degree(); }
    int total_degree() const { return rep_.total_degree(); }
    const ComplexPtr& complex() const { return rep_.complex(); }

    /** Whether the class is zero (the representative is a coboundary). */
    bool is_zero() const;

  private:
    Cochain rep_;
};

/** The unit class: χ_∅ on K_∅ in total degree 0. */
CohomologyClass unit_class(const ComplexPtr& k, const Ring& ring);

/** α·β via the cochain product of representatives. Throws AmbientMismatch. */
CohomologyClass product_in_hochster(const CohomologyClass& a, const CohomologyClass& b);

struct HochsterEntry
{
    VertexSet J;
    int p = 0;
    AbelianGroup group;
};

/**
 * Hochster decomposition H^d(Z_K) ≅ ⊕_{p+|J|+1=d} H̃^p(K_J).
 */
struct HochsterTable
{
    Ring ring = Ring::integers();
    /** Nonzero summands ordered by (|J|, J in rank order, p). */
    std::vector<HochsterEntry> by_J;
    /** Total group per total degree (zero degrees omitted). */
    std::map<int, AbelianGroup> total;
};

/** Default vertex cap for the 2^m-subset decomposition. */
inline constexpr int kHochsterVertexCap = 24;

HochsterTable hochster_decompose(const SimplicialComplex& k, const Ring& ring, int vertex_cap = kHochsterVertexCap);

/** Default vertex cap for the cellular moment-angle oracle. */
inline constexpr int kOracleVertexCap = 12;

/**
 * Cohomology of Z_K computed from its product cell structure: one cell
 * per pair (σ ∈ K, T ⊆ [m]∖σ) with a D² factor for each vertex of σ, an
 * S¹ factor for each vertex of T and the 0-cell elsewhere.  Returns the
 * cohomology group in each degree with nonzero group.
 */
std::map<int, AbelianGroup> moment_angle_cw_oracle(const SimplicialComplex& k, const Ring& ring,
                                                   int vertex_cap = kOracleVertexCap);

}  // namespace matk
