#include "matk/hochster.hpp"

#include "matk/error.hpp"
#include "matk/parallel.hpp"

#include <algorithm>
#include <unordered_map>

namespace matk {

// ------------------------------------------------------------------ //
//                          CohomologyClass                           //
// ------------------------------------------------------------------ //

CohomologyClass::CohomologyClass(Cochain representative) : rep_(std::move(representative))
{
    if (!coboundary(rep_).is_zero())
        throw Error("NotACocycle", "class representative is not a cocycle");
}

bool CohomologyClass::is_zero() const { return is_coboundary(rep_); }

CohomologyClass unit_class(const ComplexPtr& k, const Ring& ring)
{
    return CohomologyClass(Cochain::basis(k, VertexSet{}, VertexSet{}, ring));
}

CohomologyClass product_in_hochster(const CohomologyClass& a, const CohomologyClass& b)
{
    return CohomologyClass(cup_multiply(a.representative(), b.representative()));
}

// ------------------------------------------------------------------ //
//                        Hochster decomposition                      //
// ------------------------------------------------------------------ //

namespace {

void accumulate(std::map<int, AbelianGroup>& total, int degree, const AbelianGroup& g)
{
    if (g.is_zero())
        return;
    auto it = total.find(degree);
    if (it == total.end())
        total.emplace(degree, g);
    else
        it->second = it->second.direct_sum(g);
}

}  // namespace

HochsterTable hochster_decompose(const SimplicialComplex& k, const Ring& ring, int vertex_cap)
{
    const int m = k.num_vertices();
    if (m > vertex_cap)
        throw Error("VertexCapExceeded", std::to_string(m) + " vertices exceed the cap of " +
                                             std::to_string(vertex_cap));
    const std::size_t subsets = std::size_t{1} << m;
    std::vector<std::vector<AbelianGroup>> groups(subsets);
    parallel_for(subsets, [&](std::size_t mask) {
        groups[mask] = reduced_cohomology_groups(k, VertexSet(mask), ring);
    });

    std::vector<VertexSet> order;
    for (std::size_t mask = 0; mask < subsets; ++mask)
        order.emplace_back(mask);
    std::sort(order.begin(), order.end(), [](VertexSet a, VertexSet b) {
        if (a.size() != b.size())
            return a.size() < b.size();
        return SimplexLess{}(a, b);
    });

    HochsterTable table;
    table.ring = ring;
    for (VertexSet J : order)
    {
        const auto& gs = groups[J.bits()];
        for (std::size_t i = 0; i < gs.size(); ++i)
        {
            if (gs[i].is_zero())
                continue;
            const int p = static_cast<int>(i) - 1;
            table.by_J.push_back(HochsterEntry{J, p, gs[i]});
            accumulate(table.total, p + J.size() + 1, gs[i]);
        }
    }
    return table;
}

// ------------------------------------------------------------------ //
//                     Cellular moment-angle oracle                    //
// ------------------------------------------------------------------ //

namespace {

/**
 * Cohomology of the block of cells with σ ∪ T = W.  The cellular
 * boundary satisfies ∂D = S and ∂S = 0 per coordinate, so it never
 * changes W and the cellular complex splits into these blocks.  Cells in
 * the block are indexed by the faces σ ⊆ W; cell (σ, W∖σ) has dimension
 * |W| + |σ|.  The product boundary uses the Koszul sign
 * (-1)^{Σ_{l<j} dim e_l} with coordinates in vertex order, which for the
 * D² factor at j equals (-1)^{|T ∩ [<j]|}.
 */
std::vector<std::pair<int, AbelianGroup>> block_cohomology(const SimplicialComplex& k, VertexSet W,
                                                           const Ring& ring)
{
    const int w = W.size();
    // layers[s] = faces σ ⊆ W with |σ| = s (cells of dimension w + s)
    std::vector<std::vector<VertexSet>> layers;
    for (int s = 0; s <= w; ++s)
    {
        auto faces = k.faces_in(W, s - 1);
        if (faces.empty())
            break;
        layers.push_back(std::move(faces));
    }
    const int top = static_cast<int>(layers.size()) - 1;
    // bd[s] : C_{w+s} → C_{w+s-1}, rows indexed by layers[s-1]
    std::vector<Matrix> bd(top + 2);
    for (int s = 0; s <= top + 1; ++s)
    {
        const std::size_t rows = s == 0 ? 0 : layers[s - 1].size();
        const std::size_t cols = s > top ? 0 : layers[s].size();
        Matrix m(rows, cols);
        if (s > 0 && s <= top)
        {
            std::unordered_map<VertexSet, std::size_t, VertexSetHash> idx;
            for (std::size_t i = 0; i < layers[s - 1].size(); ++i)
                idx.emplace(layers[s - 1][i], i);
            for (std::size_t c = 0; c < layers[s].size(); ++c)
            {
                const VertexSet sigma = layers[s][c];
                const VertexSet T = W - sigma;
                sigma.for_each([&](int j) {
                    const int sign = T.count_below(j) % 2 == 0 ? 1 : -1;
                    m(idx.at(sigma.without(j)), c) = sign;
                });
            }
        }
        bd[s] = std::move(m);
    }
    std::vector<std::pair<int, AbelianGroup>> out;
    for (int s = 0; s <= top; ++s)
    {
        // H^{w+s} = ker(∂_{s+1}^T) / im(∂_s^T)
        AbelianGroup g = homology_group(bd[s].transpose(), bd[s + 1].transpose(), layers[s].size(), ring);
        if (!g.is_zero())
            out.emplace_back(w + s, g);
    }
    return out;
}

}  // namespace

std::map<int, AbelianGroup> moment_angle_cw_oracle(const SimplicialComplex& k, const Ring& ring, int vertex_cap)
{
    const int m = k.num_vertices();
    if (m > vertex_cap)
        throw Error("VertexCapExceeded", std::to_string(m) + " vertices exceed the cap of " +
                                             std::to_string(vertex_cap));
    const std::size_t subsets = std::size_t{1} << m;
    std::vector<std::vector<std::pair<int, AbelianGroup>>> blocks(subsets);
    parallel_for(subsets, [&](std::size_t mask) { blocks[mask] = block_cohomology(k, VertexSet(mask), ring); });
    std::map<int, AbelianGroup> total;
    for (const auto& b : blocks)
        for (const auto& [d, g] : b)
            accumulate(total, d, g);
    return total;
}

}  // namespace matk
