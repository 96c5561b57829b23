#include "matk/nestohedra.hpp"

#include "matk/error.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>

namespace matk {

// ------------------------------------------------------------------ //
//                              Subsets                               //
// ------------------------------------------------------------------ //

std::vector<int> ground_elements(GroundSet s)
{
    std::vector<int> out;
    for (GroundSet b = s; b != 0; b &= b - 1)
        out.push_back(std::countr_zero(b) + 1);
    return out;
}

GroundSet ground_set(const std::vector<int>& elements)
{
    GroundSet s = 0;
    for (int e : elements)
        s |= GroundSet{1} << (e - 1);
    return s;
}

std::string nested_vertex_label(GroundSet s)
{
    std::string out = "v{";
    bool first = true;
    for (int e : ground_elements(s))
    {
        if (!first)
            out += ",";
        out += std::to_string(e);
        first = false;
    }
    return out + "}";
}

bool ground_less(GroundSet a, GroundSet b)
{
    const auto ea = ground_elements(a), eb = ground_elements(b);
    return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

namespace {

std::string set_text(GroundSet s) { return nested_vertex_label(s).substr(1); }

}  // namespace

// ------------------------------------------------------------------ //
//                            Building sets                           //
// ------------------------------------------------------------------ //

bool BuildingSet::contains(GroundSet s) const { return std::binary_search(sets.begin(), sets.end(), s, ground_less); }

BuildingSet validate_building_set(int ground, const std::vector<std::vector<int>>& sets)
{
    if (ground < 1 || ground > 63)
        throw Error("InvalidBuildingSet", "ground set size must be between 1 and 63");
    std::set<GroundSet> members;
    for (const auto& s : sets)
    {
        if (s.empty())
            throw Error("InvalidBuildingSet", "building set members must be non-empty");
        for (int e : s)
            if (e < 1 || e > ground)
                throw Error("InvalidBuildingSet", "element " + std::to_string(e) + " is outside [" +
                                                      std::to_string(ground) + "]");
        members.insert(ground_set(s));
    }
    for (int e = 1; e <= ground; ++e)
        if (!members.count(GroundSet{1} << (e - 1)))
            throw Error("MissingSingleton", "{" + std::to_string(e) + "}");
    std::vector<GroundSet> sorted(members.begin(), members.end());
    std::sort(sorted.begin(), sorted.end(), ground_less);
    for (std::size_t a = 0; a < sorted.size(); ++a)
        for (std::size_t b = a + 1; b < sorted.size(); ++b)
            if ((sorted[a] & sorted[b]) != 0 && !members.count(sorted[a] | sorted[b]))
                throw Error("NotUnionClosed", "(" + set_text(sorted[a]) + "," + set_text(sorted[b]) + ")");
    BuildingSet out;
    out.ground = ground;
    out.sets = sorted;
    for (GroundSet s : sorted)
    {
        bool maximal = true;
        for (GroundSet t : sorted)
            if (t != s && (s & ~t) == 0)
                maximal = false;
        if (maximal)
            out.maximal.push_back(s);
    }
    return out;
}

SimplicialComplex nested_set_complex(const BuildingSet& b)
{
    std::vector<GroundSet> vertices;
    for (GroundSet s : b.sets)
        if (std::find(b.maximal.begin(), b.maximal.end(), s) == b.maximal.end())
            vertices.push_back(s);
    if (vertices.size() > static_cast<std::size_t>(kMaxVertices))
        throw Error("VertexCapExceeded", std::to_string(vertices.size()) + " vertices");
    const int m = static_cast<int>(vertices.size());
    std::vector<std::string> labels;
    for (GroundSet s : vertices)
        labels.push_back(nested_vertex_label(s));

    auto compatible = [&](int x, int y) {
        const GroundSet a = vertices[x], c = vertices[y];
        return (a & c) == 0 || (a & ~c) == 0 || (c & ~a) == 0;
    };
    // Condition 2: no union of >= 2 pairwise disjoint members lies in B.
    // Incrementally it suffices to test the families that contain the new member.
    auto disjoint_unions_ok = [&](const std::vector<int>& members, int added) {
        std::vector<GroundSet> others;
        for (int x : members)
            if ((vertices[x] & vertices[added]) == 0)
                others.push_back(vertices[x]);
        std::function<bool(std::size_t, GroundSet, int)> rec = [&](std::size_t idx, GroundSet acc, int count) {
            if (count >= 2 && b.contains(acc))
                return false;
            for (std::size_t j = idx; j < others.size(); ++j)
                if ((others[j] & acc) == 0 && !rec(j + 1, acc | others[j], count + 1))
                    return false;
            return true;
        };
        return rec(0, vertices[added], 1);
    };

    std::vector<VertexSet> facets;
    std::vector<int> current;
    std::function<void(int)> grow = [&](int start) {
        bool extended = false;
        for (int v = 0; v < m; ++v)
        {
            if (std::find(current.begin(), current.end(), v) != current.end())
                continue;
            bool ok = true;
            for (int x : current)
                ok = ok && compatible(x, v);
            if (!ok || !disjoint_unions_ok(current, v))
                continue;
            extended = true;
            if (v < start)
                continue;  // reachable from a canonical (increasing) enumeration
            current.push_back(v);
            grow(v + 1);
            current.pop_back();
        }
        if (!extended)
        {
            VertexSet f;
            for (int x : current)
                f = f.with(x);
            facets.push_back(f);
        }
    };
    grow(0);
    return SimplicialComplex(std::move(labels), facets);
}

BuildingSet graphical_building_set(int ground, const std::vector<std::pair<int, int>>& edges)
{
    if (ground < 1 || ground > 20)
        throw Error("InvalidBuildingSet", "graphical building sets support 1..20 vertices");
    std::vector<GroundSet> adj(ground + 1, 0);
    for (auto [a, c] : edges)
    {
        if (a < 1 || c < 1 || a > ground || c > ground || a == c)
            throw Error("InvalidGraph", "edge {" + std::to_string(a) + "," + std::to_string(c) + "} is invalid");
        adj[a] |= GroundSet{1} << (c - 1);
        adj[c] |= GroundSet{1} << (a - 1);
    }
    std::vector<std::vector<int>> sets;
    for (GroundSet s = 1; s < (GroundSet{1} << ground); ++s)
    {
        GroundSet seen = s & (~s + 1), frontier = seen;
        while (frontier != 0)
        {
            GroundSet next = 0;
            for (int e : ground_elements(frontier))
                next |= adj[e] & s;
            frontier = next & ~seen;
            seen |= next;
        }
        if (seen == s)
            sets.push_back(ground_elements(s));
    }
    return validate_building_set(ground, sets);
}

BuildingSet permutahedron_building_set(int n)
{
    if (n < 1)
        throw Error("InvalidDimension", "dimension must be at least 1");
    std::vector<std::pair<int, int>> edges;
    for (int a = 1; a <= n + 1; ++a)
        for (int c = a + 1; c <= n + 1; ++c)
            edges.emplace_back(a, c);
    return graphical_building_set(n + 1, edges);
}

BuildingSet stellohedron_building_set(int n)
{
    if (n < 1)
        throw Error("InvalidDimension", "dimension must be at least 1");
    std::vector<std::pair<int, int>> edges;
    for (int c = 2; c <= n + 1; ++c)
        edges.emplace_back(1, c);
    return graphical_building_set(n + 1, edges);
}

SimplicialComplex permutahedron(int n) { return nested_set_complex(permutahedron_building_set(n)); }

SimplicialComplex stellohedron(int n) { return nested_set_complex(stellohedron_building_set(n)); }

SimplicialComplex cube_truncation(int n, std::vector<std::pair<int, int>> pairs)
{
    if (n < 2)
        throw Error("InvalidDimension", "cube truncations need n >= 2");
    if (pairs.empty())
        for (int i = 1; i <= n; ++i)
            for (int k = i + 1; k <= n; ++k)
                if (!(i == 1 && k == n))
                    pairs.emplace_back(i, k);
    std::vector<std::string> labels;
    for (int i = 1; i <= n; ++i)
    {
        labels.push_back(std::to_string(i));
        labels.push_back(std::to_string(i) + "'");
    }
    // ∂(Iⁿ)* is the join of n copies of S⁰: facets choose one vertex of each pair.
    std::vector<VertexSet> facets;
    for (std::uint64_t choice = 0; choice < (std::uint64_t{1} << n); ++choice)
    {
        VertexSet f;
        for (int i = 0; i < n; ++i)
            f = f.with(2 * i + static_cast<int>((choice >> i) & 1));
        facets.push_back(f);
    }
    SimplicialComplex k(labels, facets);
    for (std::size_t t = 0; t < pairs.size(); ++t)
    {
        const auto [i, j] = pairs[t];
        if (i < 1 || j > n || i >= j)
            throw Error("InvalidTruncationPair", "(" + std::to_string(i) + "," + std::to_string(j) + "')");
        const VertexSet edge = VertexSet::single(k.rank_of(std::to_string(i))).with(k.rank_of(std::to_string(j) + "'"));
        if (!k.is_face(edge))
            throw Error("InvalidTruncationPair", "edge {" + std::to_string(i) + "," + std::to_string(j) +
                                                     "'} is no longer a face");
        k = stellar_subdivide(k, edge, "c" + std::to_string(t + 1));
    }
    return full_subcomplex(k, VertexSet::prefix(2 * n));
}

// ------------------------------------------------------------------ //
//                              Recipes                               //
// ------------------------------------------------------------------ //

namespace {

std::string v_range(int from, int to, std::vector<int> extra = {}, std::vector<int> pre = {})
{
    std::vector<int> e = std::move(pre);
    for (int x = from; x <= to; ++x)
        e.push_back(x);
    e.insert(e.end(), extra.begin(), extra.end());
    return nested_vertex_label(ground_set(e));
}

}  // namespace

MasseyRecipe permutahedron_recipe(int n, int k)
{
    if (n < 2 || k < 2 || k > n)
        throw Error("InvalidRecipe", "permutahedron recipes need 2 <= k <= n");
    MasseyRecipe r;
    if (k < n)
    {
        r.blocks.push_back({v_range(1, 1), v_range(2, 2)});
        for (int i = 2; i < k; ++i)
            r.blocks.push_back({v_range(1, i, {k + 1}), v_range(2, i + 1)});
        r.blocks.push_back({v_range(1, k + 1), v_range(1, k, {k + 2})});
        return r;
    }
    r.blocks.push_back({v_range(1, 1), v_range(2, n + 1), v_range(3, n + 1)});
    r.contractions.emplace_back(v_range(2, n + 1), v_range(3, n + 1));
    for (int i = 2; i < n; ++i)
    {
        r.blocks.push_back({v_range(1, i), v_range(2, i), v_range(3, i + 1)});
        r.contractions.emplace_back(v_range(1, i), v_range(2, i));
    }
    r.blocks.push_back({v_range(1, n), v_range(2, n), v_range(3, n + 1, {}, {1})});
    r.contractions.emplace_back(v_range(1, n), v_range(2, n));
    return r;
}

MasseyRecipe stellohedron_recipe(int n)
{
    if (n < 2)
        throw Error("InvalidRecipe", "stellohedron recipes need n >= 2");
    MasseyRecipe r;
    r.blocks.push_back({v_range(2, 2), v_range(1, 1)});
    for (int i = 2; i < n; ++i)
    {
        r.blocks.push_back({v_range(1, i), v_range(3, i + 2, {}, {1}), v_range(4, i + 2, {}, {1})});
        r.contractions.emplace_back(v_range(3, i + 2, {}, {1}), v_range(4, i + 2, {}, {1}));
    }
    r.blocks.push_back({v_range(1, 1, {3}), v_range(3, 3), v_range(4, n + 1, {}, {1, 2})});
    r.contractions.emplace_back(v_range(1, 1, {3}), v_range(3, 3));
    return r;
}

RecipeResult run_recipe(const SimplicialComplex& k, const MasseyRecipe& recipe, const Ring& ring, std::size_t budget)
{
    // 1. Block order with each contracted pair adjacent.
    std::vector<std::string> order;
    std::vector<std::size_t> block_sizes;
    for (const auto& block : recipe.blocks)
    {
        std::vector<std::string> seq = block;
        for (const auto& [a, b] : recipe.contractions)
        {
            auto ia = std::find(seq.begin(), seq.end(), a);
            auto ib = std::find(seq.begin(), seq.end(), b);
            if (ia == seq.end() && ib == seq.end())
                continue;
            if (ia == seq.end() || ib == seq.end())
                throw Error("InvalidRecipe", "contracted pair " + a + "," + b + " spans two blocks");
            seq.erase(ib);
            ia = std::find(seq.begin(), seq.end(), a);
            seq.insert(ia + 1, b);
        }
        order.insert(order.end(), seq.begin(), seq.end());
        block_sizes.push_back(seq.size());
    }
    const SimplicialComplex kj = full_subcomplex(k, k.vertex_set(order));
    std::vector<int> perm;
    for (const auto& l : order)
        perm.push_back(kj.rank_of(l));
    const ComplexPtr downstairs = make_complex(reorder(kj, perm));
    bool all_link_conditions = true;

    // 2. Contract.
    ComplexPtr current = downstairs;
    std::vector<int> image(current->num_vertices());
    for (std::size_t r = 0; r < image.size(); ++r)
        image[r] = static_cast<int>(r);
    // A contracted vertex survives under its partner's label.
    std::map<std::string, std::string> alias;
    auto resolve = [&](std::string l) {
        for (auto it = alias.find(l); it != alias.end(); it = alias.find(l))
            l = it->second;
        return l;
    };
    for (const auto& [a, b] : recipe.contractions)
    {
        const std::string ra = resolve(a), rb = resolve(b);
        Contraction c = contract_edge(current, current->rank_of(ra), current->rank_of(rb));
        alias[rb] = ra;
        all_link_conditions = all_link_conditions && c.link_condition;
        for (int& r : image)
            r = c.map.image[r];
        current = c.complex;
    }

    // 3. Blocks upstairs and the class choices.
    std::vector<ComplexPtr> factors;
    std::vector<std::vector<Cochain>> candidates;
    int offset = 0;
    for (std::size_t i = 0; i < recipe.blocks.size(); ++i)
    {
        VertexSet block;
        for (std::size_t j = 0; j < block_sizes[i]; ++j)
            block = block.with(image[offset + static_cast<int>(j)]);
        offset += static_cast<int>(block_sizes[i]);
        auto f = make_complex(full_subcomplex(*current, block));
        std::vector<Cochain> cands;
        for (int v = 0; v < f->num_vertices(); ++v)
        {
            Cochain a = Cochain::basis(f, f->all_vertices(), VertexSet::single(v), ring);
            if (coboundary(a).is_zero() && !is_coboundary(a))
                cands.push_back(std::move(a));
        }
        if (cands.empty())
            throw Error("RecipeMismatch", "block " + std::to_string(i + 1) + " carries no degree-0 class");
        factors.push_back(std::move(f));
        candidates.push_back(std::move(cands));
    }
    std::vector<std::size_t> pick(factors.size(), 0);
    std::optional<JoinConstruction> found;
    for (;;)
    {
        JoinMasseySpec spec;
        spec.factors = factors;
        for (std::size_t i = 0; i < factors.size(); ++i)
            spec.classes.push_back(candidates[i][pick[i]]);
        JoinConstruction c = construct_massey_complex(spec);
        if (*c.complex == *current)
        {
            found = std::move(c);
            break;
        }
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == candidates[i].size())
            pick[i++] = 0;
        if (i == pick.size())
            break;
    }
    if (!found)
        throw Error("RecipeMismatch", "no class choice reproduces the contracted complex by the join construction");
    VertexMap phi{downstairs, found->complex, image};

    // 4. Pull back the canonical system and decide downstairs.
    ContractionCertificate certificate = certify_contraction(phi, canonical_defining_system_joins(*found), budget);
    return RecipeResult{downstairs, std::move(phi), std::move(*found), all_link_conditions, std::move(certificate)};
}

}  // namespace matk
