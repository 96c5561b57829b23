#pragma once

#include "matk/constructions.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace matk {

/** Subset of the ground set [n+1] as a bit mask (element e is bit e-1). */
using GroundSet = std::uint64_t;

std::vector<int> ground_elements(GroundSet s);
GroundSet ground_set(const std::vector<int>& elements);
/** "v{1,2,3}". */
std::string nested_vertex_label(GroundSet s);
/** Lexicographic order on sorted element sequences. */
bool ground_less(GroundSet a, GroundSet b);

/**
 * A family of non-empty subsets of [ground] containing every singleton
 * and closed under unions of intersecting members.
 */
struct BuildingSet
{
    int ground = 0;
    /** Members in lexicographic order. */
    std::vector<GroundSet> sets;
    /** Inclusion-maximal members in lexicographic order. */
    std::vector<GroundSet> maximal;

    bool contains(GroundSet s) const;
};

/** Throws MissingSingleton, NotUnionClosed, InvalidBuildingSet. */
BuildingSet validate_building_set(int ground, const std::vector<std::vector<int>>& sets);

/**
 * Nested set complex N(B) on the vertices v_S, S ∈ B ∖ B_max, ordered
 * lexicographically by S.
 */
SimplicialComplex nested_set_complex(const BuildingSet& b);

/** Subsets of [ground] inducing connected subgraphs. */
BuildingSet graphical_building_set(int ground, const std::vector<std::pair<int, int>>& edges);

BuildingSet permutahedron_building_set(int n);
BuildingSet stellohedron_building_set(int n);

SimplicialComplex permutahedron(int n);
SimplicialComplex stellohedron(int n);

/**
 * ∂(Iⁿ)* on 1, 1', ..., n, n' stellar-subdivided at the edges {i, k'} in
 * the given order and restricted to the original 2n vertices.  An empty
 * pair list selects all 1 <= i < k <= n with (i,k) != (1,n).  Throws
 * InvalidTruncationPair.
 */
SimplicialComplex cube_truncation(int n, std::vector<std::pair<int, int>> pairs = {});

// ------------------------------------------------------------------ //
//                 Massey configurations on nested set complexes      //
// ------------------------------------------------------------------ //

/** Vertex blocks J_1..J_k (labels) and the edges contracted inside them. */
struct MasseyRecipe
{
    std::vector<std::vector<std::string>> blocks;
    std::vector<std::pair<std::string, std::string>> contractions;
};

/** The k-Massey configuration on permutahedron(n), 2 <= k <= n. */
MasseyRecipe permutahedron_recipe(int n, int k);
/** The n-Massey configuration on stellohedron(n), n >= 2. */
MasseyRecipe stellohedron_recipe(int n);

struct RecipeResult
{
    /** K_{J_1 ∪ ... ∪ J_k} reordered into blocks with contracted pairs adjacent. */
    ComplexPtr downstairs;
    /** Composite contraction onto the constructed complex. */
    VertexMap phi;
    /** The join construction reproducing the contracted complex. */
    JoinConstruction upstairs;
    bool all_link_conditions = true;
    ContractionCertificate certificate;
};

/**
 * Reorder, contract, find class choices for which the join construction
 * reproduces the contracted complex, pull its canonical system back and
 * decide the product downstairs.  Throws RecipeMismatch when no choice
 * of classes reproduces the contracted complex.
 */
RecipeResult run_recipe(const SimplicialComplex& k, const MasseyRecipe& recipe, const Ring& ring,
                        std::size_t budget = kDefaultBudget);

}  // namespace matk
