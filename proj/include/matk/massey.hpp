#pragma once

#include "matk/hochster.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace matk {

/**
 * Triangular array (a_{i,k}), 1 <= i <= k <= n, (i,k) != (1,n), of
 * cochains for an n-fold Massey product; a_{i,k} lives in
 * C^{p_i+...+p_k}(K_{J_i ∪ ... ∪ J_k}).  Indices are 1-based.
 */
class DefiningSystem
{
  public:
    /** Diagonal entries from the class representatives; the rest unset. */
    explicit DefiningSystem(const std::vector<Cochain>& representatives);
    explicit DefiningSystem(const std::vector<CohomologyClass>& classes);

    int size() const { return n_; }
    bool has(int i, int k) const;
    const Cochain& at(int i, int k) const;
    void set(int i, int k, Cochain a);

    /** J_i ∪ ... ∪ J_k. */
    VertexSet J(int i, int k) const;
    /** p_i + ... + p_k. */
    int degree(int i, int k) const;
    const ComplexPtr& complex() const;
    const Ring& ring() const;

    /** Off-diagonal positions in stage order: increasing k - i, then i. */
    std::vector<std::pair<int, int>> stages() const;

  private:
    std::size_t slot(int i, int k) const;

    int n_;
    std::vector<std::optional<Cochain>> entries_;
};

/** Σ_{r=i}^{k-1} ā_{i,r} a_{r+1,k}; all entries used must be set. */
Cochain staircase_rhs(const DefiningSystem& ds, int i, int k);

struct Violation
{
    int i = 0;
    int k = 0;
    /** d(a_{i,k}) - Σ ā_{i,r} a_{r+1,k}. */
    Cochain residual;
};

/** Violated compatibility equations; empty iff the system is valid. */
std::vector<Violation> check_defining_system(const DefiningSystem& ds);

/** ω = Σ_{r=1}^{n-1} ā_{1,r} a_{r+1,n}.  Throws InvalidDefiningSystem. */
Cochain associated_cocycle(const DefiningSystem& ds);

enum class Tristate { False, True, Unknown };

struct MasseyVerdict
{
    Tristate defined = Tristate::Unknown;
    Tristate contains_zero = Tristate::Unknown;
    /** Total degree p_1 + ... + p_n + |J| + 2 of the Massey product. */
    int total_degree = 0;
    /** A defining system whose associated class is nonzero (when non-trivial). */
    std::optional<DefiningSystem> witness_system;
    std::optional<Cochain> witness_cocycle;
    /** Cycle x with ω(x) != 0 that annihilates the indeterminacy (when found). */
    std::optional<Chain> witness_cycle;
    /** Triple products: the indeterminacy subgroup of H^*(Z_K). */
    std::optional<AbelianGroup> indeterminacy;
    std::optional<std::size_t> indeterminacy_rank;
    std::size_t parameter_count = 0;
    std::size_t systems_enumerated = 0;
    bool budget_exhausted = false;
};

/**
 * Exact decision for ⟨α1, α2, α3⟩ over Z or a field: the associated
 * classes form the coset [ω0] + α1·H̃(K_{J2∪J3}) + H̃(K_{J1∪J2})·α3, so
 * triviality is a submodule membership test.  Throws OverlappingSupports.
 */
MasseyVerdict triple_massey_decide(const CohomologyClass& a1, const CohomologyClass& a2, const CohomologyClass& a3);

/** How free parameters at each stage are spanned. */
enum class ParameterSpace {
    /** Particular solution + span of a cocycle basis (every defining system). */
    Cocycles,
    /** Particular solution + span of cohomology class representatives. */
    Classes,
};

inline constexpr std::size_t kDefaultBudget = std::size_t{1} << 20;

using SystemVisitor = std::function<void(const DefiningSystem& ds, const Cochain& omega, bool trivial)>;

/**
 * Depth-first enumeration of every defining system over a prime field,
 * stage order increasing k - i then i, parameters in lexicographic residue
 * order.  When the number of systems p^params exceeds `budget` the verdict
 * is Unknown with budget_exhausted set.  Throws RingNotFinite,
 * OverlappingSupports.
 */
MasseyVerdict enumerate_defining_systems(const std::vector<CohomologyClass>& classes,
                                         std::size_t budget = kDefaultBudget,
                                         const SystemVisitor& visitor = {},
                                         ParameterSpace space = ParameterSpace::Cocycles);

/**
 * Decide ⟨α1, ..., αn⟩ by the best available method: the cup product for
 * n = 2, the exact triple decision for n = 3, and enumeration for n >= 4
 * (Unknown over infinite rings).
 */
MasseyVerdict decide_massey(const std::vector<CohomologyClass>& classes, std::size_t budget = kDefaultBudget);

/**
 * Cycle x on ω's K_J with ω(x) != 0 and g(x) = 0 for every g in
 * `annihilate`; over Z a Q-solution is scaled to an integral cycle.
 */
std::optional<Chain> evaluating_cycle(const Cochain& omega, const std::vector<Cochain>& annihilate = {});

}  // namespace matk
