#pragma once

#include "matk/massey.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace matk {

// ------------------------------------------------------------------ //
//                 Joins followed by ordered star deletions           //
// ------------------------------------------------------------------ //

/**
 * Input of the join construction: factor complexes K¹..Kⁿ with disjoint
 * labels and one cocycle a_i per factor (on K^i_{J_i}, in the factor's
 * own ranks).  `vertex_choice[i]` maps a support simplex to its
 * distinguished vertex v_σ (default: smallest rank); `support_order[i]`
 * fixes the order of S_{a_i} (default: canonical simplex order).
 */
struct JoinMasseySpec
{
    std::vector<ComplexPtr> factors;
    std::vector<Cochain> classes;
    std::vector<std::map<VertexSet, int, SimplexLess>> vertex_choice;
    std::vector<std::vector<VertexSet>> support_order;

    int size() const { return static_cast<int>(factors.size()); }
    /** v_σ for σ ∈ S_{a_i} (0-based factor index), in factor ranks. */
    int chosen_vertex(int i, VertexSet sigma) const;
    /** S_{a_i} in the order used by the construction. */
    std::vector<VertexSet> ordered_support(int i) const;
};

struct PSets
{
    /** σ^{(1)}, ..., σ^{(l)}. */
    std::vector<VertexSet> subsequence;
    /** P_{a} = P_{σ^{(1)}} ∪ ... ∪ P_{σ^{(l)}} in canonical order. */
    std::vector<VertexSet> P;
    /** S̃_{a} = S_{a} ∖ P_{a} in support order. */
    std::vector<VertexSet> S_tilde;
};

/** P_σ = {p-simplices σ' ⊆ J with σ ∩ σ' = σ ∖ v}. */
std::vector<VertexSet> P_of_simplex(const SimplicialComplex& k, VertexSet J, VertexSet sigma, int v);

/** P-sets of factor i (0-based).  Throws ZeroClass. */
PSets compute_P_sets(const JoinMasseySpec& spec, int i);

struct Deletion
{
    /** σ_i ∪ σ_k in join ranks. */
    VertexSet simplex;
    /** 1-based provenance pair (i, k). */
    int i = 0;
    int k = 0;
    /** False when an earlier deletion already removed the simplex. */
    bool effective = true;
};

using DeletionLedger = std::vector<Deletion>;

struct JoinConstruction
{
    JoinMasseySpec spec;
    /** K¹ ∗ ... ∗ Kⁿ. */
    ComplexPtr join;
    /** The star-deleted complex. */
    ComplexPtr complex;
    DeletionLedger ledger;
    /** Rank offset of factor i inside the join. */
    std::vector<int> offsets;
    std::vector<PSets> psets;
    /** a_i transported to the constructed complex. */
    std::vector<Cochain> classes;

    /** A factor simplex (factor ranks) in join ranks. */
    VertexSet lift(int i, VertexSet s) const;
};

/**
 * Join the factors and star-delete at every σ_i ∪ σ_k, σ_i ∈ S_{a_i},
 * σ_k ∈ P_{a_k}, 1 <= i < k <= n, (i,k) != (1,n).  Throws InvalidSpec,
 * ZeroClass, LabelCollision.
 */
JoinConstruction construct_massey_complex(const JoinMasseySpec& spec);

/** Sign of the canonical entry a_{i,k} (1-based) for the chosen simplices. */
int theta_joins(const JoinConstruction& c, int i, int k, const std::vector<VertexSet>& sigmas);

/** The explicit defining system a_{i,k} on the constructed complex. */
DefiningSystem canonical_defining_system_joins(const JoinConstruction& c);

/** Δ_A ⋆ Δ_B = (-1)^{#{a∈A, b∈B : a > b}} Δ_{A∪B}, extended bilinearly. */
Chain chain_join(const Chain& x, const Chain& y);

/**
 * x = x1 ⋆ ∂Δ_{σ2∪σn} ⋆ ∂Δ_{σ3} ⋆ ... ⋆ ∂Δ_{σ_{n-1}} with x1 a cycle on
 * K_{J1} pairing nonzero with a1, σ_i ∈ S̃_{a_i} and σ_n ∈ P_{a_n}; for
 * n = 2 the product of pairing cycles of both factors.  Among the
 * admissible σ_i the first choice on which the canonical associated
 * cocycle is nonzero is returned.  Throws NoPairingCycle when a1 pairs to
 * zero with every integral cycle.
 */
Chain witness_cycle(const JoinConstruction& c);

struct JoinCertificate
{
    DefiningSystem system;
    std::vector<Violation> violations;
    Cochain omega;
    std::optional<Chain> witness;
    bool witness_closed = false;
    Scalar pairing = 0;
    MasseyVerdict verdict;
};

/**
 * End-to-end check: canonical system validity, associated cocycle,
 * witness cycle, and the verdict (cup product for n = 2, exact triple
 * decision for n = 3, enumeration over finite fields for n >= 4).
 */
JoinCertificate certify_join(const JoinConstruction& c, std::size_t budget = kDefaultBudget);

// ------------------------------------------------------------------ //
//                      Edge-contraction calculus                     //
// ------------------------------------------------------------------ //

/** a = Σ c_σ̂ Σ_{σ ∈ φ⁻¹(σ̂)} χ_σ on K_{φ⁻¹(Ĵ)}.  Throws OrderIncompatibleMap. */
Cochain pullback_class(const VertexMap& phi, const Cochain& ahat);

/** θ_{i,k} θ̂_{i,k} for blocks with sizes |J_l| downstairs and |Ĵ_l| upstairs. */
int theta_pullback(const std::vector<int>& J_sizes, const std::vector<int>& Jhat_sizes,
                   const std::vector<int>& degrees, int i, int k);

/** Entry-wise pullback with the θθ̂ signs.  Throws InvalidUpstairsSystem. */
DefiningSystem pullback_defining_system(const VertexMap& phi, const DefiningSystem& upstairs);

/**
 * c · Σ_{σ̂ ∈ φ(S_a)} c_σ̂ χ_σ̂ on K̂_{φ(J)}.  Throws
 * SupportContainsContractedEdge when φ is not injective on a support
 * simplex and InconsistentPushforward when two preimages disagree.
 */
Cochain pushforward_phi_star(const VertexMap& phi, const Cochain& a, int sign = 1);

/** c_{i,k} = (-1)^{Σ_{l=i}^{k-1} (|J_i..J_l| - |Ĵ_i..Ĵ_l|) p_{l+1}}. */
int c_pushforward(const std::vector<VertexSet>& J, const std::vector<VertexSet>& Jhat,
                  const std::vector<int>& degrees, int i, int k);

/** φ* applied entry-wise with the c_{i,k} signs. */
DefiningSystem pushforward_defining_system(const VertexMap& phi, const DefiningSystem& ds);

/**
 * Rewrite a valid system so no support simplex contains both u and w
 * (ranks), preserving validity and the class of the associated cocycle.
 * Throws DiagonalTouchesEdge, InvalidDefiningSystem.
 */
DefiningSystem disjointify_defining_system(const DefiningSystem& ds, int u, int w);

/**
 * Is φ a composite of link-condition edge contractions?  Fibres are
 * contracted one edge at a time and the result is compared with the
 * target.  Returns the contraction steps as (u, w) label pairs, or
 * nullopt when φ does not factor this way.
 */
std::optional<std::vector<std::pair<std::string, std::string>>> factor_into_contractions(const VertexMap& phi);

struct ContractionCertificate
{
    DefiningSystem system;
    std::vector<Violation> violations;
    MasseyVerdict verdict;
};

/**
 * Pull an upstairs defining system back along φ, check it downstairs,
 * and decide the downstairs product (exact for n <= 3, enumeration over
 * finite fields for n >= 4).
 */
ContractionCertificate certify_contraction(const VertexMap& phi, const DefiningSystem& upstairs,
                                           std::size_t budget = kDefaultBudget);

}  // namespace matk
