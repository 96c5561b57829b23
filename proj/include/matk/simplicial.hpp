#pragma once

#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace matk {

/** Largest supported vertex count (vertex sets are 64-bit masks). */
inline constexpr int kMaxVertices = 64;

/**
 * A set of vertices of one complex, stored as a bit mask over vertex
 * ranks.  A simplex is a VertexSet; its vertices are read in increasing
 * rank order, which is the sign-determining order.
 */
class VertexSet
{
  public:
    constexpr VertexSet() = default;
    constexpr explicit VertexSet(std::uint64_t bits) : bits_(bits) {}

    static VertexSet single(int rank) { return VertexSet(std::uint64_t{1} << rank); }
    static VertexSet from_ranks(const std::vector<int>& ranks);
    /** The first n ranks {0, ..., n-1}. */
    static VertexSet prefix(int n)
    {
        return VertexSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }

    std::uint64_t bits() const { return bits_; }
    int size() const { return std::popcount(bits_); }
    bool empty() const { return bits_ == 0; }
    bool contains(int rank) const { return (bits_ >> rank) & 1u; }
    bool contains(VertexSet other) const { return (other.bits_ & ~bits_) == 0; }
    bool subset_of(VertexSet other) const { return other.contains(*this); }
    bool intersects(VertexSet other) const { return (bits_ & other.bits_) != 0; }

    VertexSet with(int rank) const { return VertexSet(bits_ | (std::uint64_t{1} << rank)); }
    VertexSet without(int rank) const { return VertexSet(bits_ & ~(std::uint64_t{1} << rank)); }

    /** Smallest rank; the set must be non-empty. */
    int min() const { return std::countr_zero(bits_); }
    int max() const { return 63 - std::countl_zero(bits_); }

    /** Number of members with rank strictly below `rank`. */
    int count_below(int rank) const
    {
        return std::popcount(bits_ & ((std::uint64_t{1} << rank) - 1));
    }

    std::vector<int> ranks() const;

    friend VertexSet operator|(VertexSet a, VertexSet b) { return VertexSet(a.bits_ | b.bits_); }
    friend VertexSet operator&(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & b.bits_); }
    friend VertexSet operator-(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & ~b.bits_); }
    friend bool operator==(VertexSet a, VertexSet b) = default;

    /** Calls f(rank) for each member in increasing rank order. */
    template <typename F>
    void for_each(F&& f) const
    {
        for (std::uint64_t b = bits_; b != 0; b &= b - 1)
            f(std::countr_zero(b));
    }

  private:
    std::uint64_t bits_ = 0;
};

/** Lexicographic order on rank sequences (the canonical simplex order). */
struct SimplexLess
{
    bool operator()(VertexSet a, VertexSet b) const;
};

struct VertexSetHash
{
    std::size_t operator()(VertexSet s) const { return std::hash<std::uint64_t>{}(s.bits()); }
};

/**
 * Finite abstract simplicial complex on an ordered list of labelled
 * vertices.  Immutable after construction; the full face table is built
 * eagerly so concurrent queries need no synchronisation.
 */
class SimplicialComplex
{
  public:
    /**
     * Build from labels and facets given as rank masks.  Non-maximal
     * facets are discarded and vertices not covered by any facet become
     * 0-dimensional facets.  Throws DuplicateVertex, VertexCapExceeded or
     * FacetUsesUnknownLabel.
     */
    SimplicialComplex(std::vector<std::string> labels, const std::vector<VertexSet>& facets);

    int num_vertices() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int rank) const { return labels_.at(rank); }
    std::optional<int> find(std::string_view label) const;
    /** Rank of a label; throws UnknownVertex. */
    int rank_of(std::string_view label) const;
    VertexSet vertex_set(const std::vector<std::string>& labels) const;
    std::vector<std::string> labels_of(VertexSet s) const;
    VertexSet all_vertices() const { return VertexSet::prefix(num_vertices()); }

    /** Inclusion-maximal faces in canonical order. */
    const std::vector<VertexSet>& facets() const { return facets_; }
    bool is_face(VertexSet s) const { return face_set_.count(s) != 0; }

    /** Dimension of the complex (-1 for the complex {∅}). */
    int dimension() const { return static_cast<int>(faces_.size()) - 2; }

    /** All faces of a given dimension (dim >= -1) in canonical order. */
    const std::vector<VertexSet>& faces(int dim) const;
    /** Faces of dimension `dim` contained in J, in canonical order. */
    std::vector<VertexSet> faces_in(VertexSet J, int dim) const;
    /** Number of faces of dimension 0, 1, ... */
    std::vector<std::size_t> f_vector() const;
    std::size_t num_faces() const { return face_set_.size(); }

    /** Structural equality: same ordered labels and same facets. */
    bool operator==(const SimplicialComplex& other) const
    {
        return labels_ == other.labels_ && facets_ == other.facets_;
    }

  private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, int> index_;
    std::vector<VertexSet> facets_;
    std::unordered_set<VertexSet, VertexSetHash> face_set_;
    std::vector<std::vector<VertexSet>> faces_;  // faces_[d + 1] = d-faces
};

using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

ComplexPtr make_complex(SimplicialComplex k);

/** Build a complex from labels and facets given as label lists. */
SimplicialComplex build_complex(const std::vector<std::string>& labels,
                                const std::vector<std::vector<std::string>>& facets);

/** Full subcomplex K_J, on K's induced order. */
SimplicialComplex full_subcomplex(const SimplicialComplex& k, VertexSet J);
SimplicialComplex full_subcomplex(const SimplicialComplex& k, const std::vector<std::string>& J);

/** link_K(I), st_K(I) and ∂st_K(I), on K's vertex order. */
SimplicialComplex link(const SimplicialComplex& k, VertexSet I);
SimplicialComplex star(const SimplicialComplex& k, VertexSet I);
SimplicialComplex boundary_star(const SimplicialComplex& k, VertexSet I);

/** sd_I K = {σ ∈ K : I ⊄ σ}.  Throws SimplexNotInComplex. */
SimplicialComplex star_delete(const SimplicialComplex& k, VertexSet I);

/**
 * Composite of star deletions at every listed simplex (order does not
 * matter).  Simplices already removed by an earlier deletion are skipped.
 */
SimplicialComplex star_delete_all(const SimplicialComplex& k, const std::vector<VertexSet>& sets);

/** K1 ∗ K2 with K1's vertices first.  Throws LabelCollision. */
SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b);

/** stell_I K with the cone vertex appended last.  Throws SimplexNotInComplex, LabelCollision. */
SimplicialComplex stellar_subdivide(const SimplicialComplex& k, VertexSet I, const std::string& new_label);

/** Reorder vertices: new rank r holds old vertex order[r]. */
SimplicialComplex reorder(const SimplicialComplex& k, const std::vector<int>& order);

/** Rename vertices (same order). */
SimplicialComplex relabel(const SimplicialComplex& k, const std::vector<std::string>& labels);

/**
 * Simplicial vertex map between two complexes: image[r] is the target
 * rank of source vertex r.
 */
struct VertexMap
{
    ComplexPtr source;
    ComplexPtr target;
    std::vector<int> image;

    VertexSet apply(VertexSet s) const;
    VertexSet preimage(VertexSet t) const;
    /** σ ∈ source with φ(σ) = τ and |σ| = |τ| (φ injective on σ). */
    std::vector<VertexSet> simplex_preimages(VertexSet tau) const;
    bool is_simplicial() const;
    /** If φ(u) precedes φ(w) then all of φ⁻¹φ(u) precede all of φ⁻¹φ(w). */
    bool is_order_compatible() const;
    bool is_surjective() const;
    VertexMap compose_after(const VertexMap& first) const;  // this ∘ first
    static VertexMap identity(const ComplexPtr& k);
};

struct Contraction
{
    ComplexPtr complex;
    VertexMap map;
    bool link_condition = false;
};

/** link_K({u}) ∩ link_K({w}) = link_K({u,w}). */
bool link_condition(const SimplicialComplex& k, int u, int w);

/**
 * Contract the edge {u, w}: both vertices merge into a fresh vertex at u's
 * rank, labelled `new_label` (default: u's label).  Throws EdgeNotInComplex.
 */
Contraction contract_edge(const ComplexPtr& k, int u, int w, const std::string& new_label = "");

/** Euler characteristic Σ (-1)^d f_d over non-empty faces. */
long euler_characteristic(const SimplicialComplex& k);

}  // namespace matk
