#include "matk/simplicial.hpp"

#include "matk/error.hpp"

#include <algorithm>

namespace matk {

// ------------------------------------------------------------------ //
//                         VertexSet helpers                          //
// ------------------------------------------------------------------ //

VertexSet VertexSet::from_ranks(const std::vector<int>& ranks)
{
    VertexSet s;
    for (int r : ranks)
    {
        if (r < 0 || r >= kMaxVertices)
            throw Error("VertexCapExceeded", "rank " + std::to_string(r));
        s = s.with(r);
    }
    return s;
}

std::vector<int> VertexSet::ranks() const
{
    std::vector<int> out;
    out.reserve(size());
    for_each([&](int r) { out.push_back(r); });
    return out;
}

bool SimplexLess::operator()(VertexSet a, VertexSet b) const
{
    if (a == b)
        return false;
    const std::uint64_t d = a.bits() ^ b.bits();
    const std::uint64_t low = d & (~d + 1);
    const std::uint64_t above = ~(low | (low - 1));
    if (a.bits() & low)
        return (b.bits() & above) != 0;
    return (a.bits() & above) == 0;
}

namespace {

/** Keep only inclusion-maximal sets, deduplicated, in canonical order. */
std::vector<VertexSet> maximal_sets(std::vector<VertexSet> sets)
{
    std::sort(sets.begin(), sets.end(), [](VertexSet a, VertexSet b) {
        if (a.size() != b.size())
            return a.size() > b.size();
        return a.bits() < b.bits();
    });
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    std::vector<VertexSet> out;
    for (VertexSet s : sets)
    {
        bool dominated = false;
        for (VertexSet t : out)
            if (t.contains(s))
            {
                dominated = true;
                break;
            }
        if (!dominated)
            out.push_back(s);
    }
    std::sort(out.begin(), out.end(), SimplexLess{});
    return out;
}

/** Re-express `s` (a subset of `covered`) in compressed ranks. */
VertexSet compress(VertexSet s, VertexSet covered)
{
    VertexSet out;
    int idx = 0;
    covered.for_each([&](int r) {
        if (s.contains(r))
            out = out.with(idx);
        ++idx;
    });
    return out;
}

/** Complex on the vertices of `k` covered by `facets`, in k's order. */
SimplicialComplex on_covered_vertices(const SimplicialComplex& k, const std::vector<VertexSet>& facets)
{
    VertexSet covered;
    for (VertexSet f : facets)
        covered = covered | f;
    std::vector<std::string> labels;
    covered.for_each([&](int r) { labels.push_back(k.label(r)); });
    std::vector<VertexSet> mapped;
    mapped.reserve(facets.size());
    for (VertexSet f : facets)
        mapped.push_back(compress(f, covered));
    return SimplicialComplex(std::move(labels), mapped);
}

void require_face(const SimplicialComplex& k, VertexSet s)
{
    if (!k.is_face(s))
    {
        std::string text;
        for (const auto& l : k.labels_of(s))
            text += (text.empty() ? "" : ",") + l;
        throw Error("SimplexNotInComplex", "{" + text + "}");
    }
}

}  // namespace

// ------------------------------------------------------------------ //
//                         SimplicialComplex                          //
// ------------------------------------------------------------------ //

SimplicialComplex::SimplicialComplex(std::vector<std::string> labels, const std::vector<VertexSet>& facets)
    : labels_(std::move(labels))
{
    if (labels_.size() > static_cast<std::size_t>(kMaxVertices))
        throw Error("VertexCapExceeded", std::to_string(labels_.size()) + " vertices");
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (!index_.emplace(labels_[i], static_cast<int>(i)).second)
            throw Error("DuplicateVertex", labels_[i]);
    const VertexSet all = VertexSet::prefix(num_vertices());
    std::vector<VertexSet> fs = facets;
    VertexSet covered;
    for (VertexSet f : fs)
    {
        if (!all.contains(f))
            throw Error("FacetUsesUnknownLabel", "facet uses a rank outside the vertex list");
        covered = covered | f;
    }
    (all - covered).for_each([&](int r) { fs.push_back(VertexSet::single(r)); });
    if (fs.empty())
        fs.push_back(VertexSet{});
    facets_ = maximal_sets(std::move(fs));

    for (VertexSet f : facets_)
    {
        // Enumerate all subsets of the facet.
        const std::uint64_t full = f.bits();
        std::uint64_t sub = full;
        for (;;)
        {
            face_set_.insert(VertexSet(sub));
            if (sub == 0)
                break;
            sub = (sub - 1) & full;
        }
    }
    int top = -1;
    for (VertexSet f : facets_)
        top = std::max(top, f.size() - 1);
    faces_.assign(top + 2, {});
    for (VertexSet s : face_set_)
        faces_[s.size()].push_back(s);
    for (auto& layer : faces_)
        std::sort(layer.begin(), layer.end(), SimplexLess{});
}

std::optional<int> SimplicialComplex::find(std::string_view label) const
{
    auto it = index_.find(std::string(label));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

int SimplicialComplex::rank_of(std::string_view label) const
{
    auto r = find(label);
    if (!r)
        throw Error("UnknownVertex", std::string(label));
    return *r;
}

VertexSet SimplicialComplex::vertex_set(const std::vector<std::string>& labels) const
{
    VertexSet s;
    for (const auto& l : labels)
        s = s.with(rank_of(l));
    return s;
}

std::vector<std::string> SimplicialComplex::labels_of(VertexSet s) const
{
    std::vector<std::string> out;
    s.for_each([&](int r) { out.push_back(labels_.at(r)); });
    return out;
}

const std::vector<VertexSet>& SimplicialComplex::faces(int dim) const
{
    static const std::vector<VertexSet> none;
    if (dim < -1 || dim + 1 >= static_cast<int>(faces_.size()))
        return none;
    return faces_[dim + 1];
}

std::vector<VertexSet> SimplicialComplex::faces_in(VertexSet J, int dim) const
{
    std::vector<VertexSet> out;
    for (VertexSet s : faces(dim))
        if (J.contains(s))
            out.push_back(s);
    return out;
}

std::vector<std::size_t> SimplicialComplex::f_vector() const
{
    std::vector<std::size_t> f;
    for (int d = 0; d <= dimension(); ++d)
        f.push_back(faces(d).size());
    return f;
}

ComplexPtr make_complex(SimplicialComplex k) { return std::make_shared<const SimplicialComplex>(std::move(k)); }

// ------------------------------------------------------------------ //
//                             Operations                             //
// ------------------------------------------------------------------ //

SimplicialComplex build_complex(const std::vector<std::string>& labels,
                                const std::vector<std::vector<std::string>>& facets)
{
    std::unordered_map<std::string, int> index;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (!index.emplace(labels[i], static_cast<int>(i)).second)
            throw Error("DuplicateVertex", labels[i]);
    std::vector<VertexSet> masks;
    for (const auto& f : facets)
    {
        VertexSet s;
        for (const auto& l : f)
        {
            auto it = index.find(l);
            if (it == index.end())
                throw Error("FacetUsesUnknownLabel", l);
            s = s.with(it->second);
        }
        masks.push_back(s);
    }
    return SimplicialComplex(labels, masks);
}

SimplicialComplex full_subcomplex(const SimplicialComplex& k, VertexSet J)
{
    if (!k.all_vertices().contains(J))
        throw Error("UnknownVertex", "J is not a subset of the vertex set");
    std::vector<std::string> labels;
    J.for_each([&](int r) { labels.push_back(k.label(r)); });
    std::vector<VertexSet> facets;
    for (VertexSet f : k.facets())
        facets.push_back(compress(f & J, J));
    return SimplicialComplex(std::move(labels), facets);
}

SimplicialComplex full_subcomplex(const SimplicialComplex& k, const std::vector<std::string>& J)
{
    return full_subcomplex(k, k.vertex_set(J));
}

SimplicialComplex link(const SimplicialComplex& k, VertexSet I)
{
    require_face(k, I);
    std::vector<VertexSet> facets;
    for (VertexSet f : k.facets())
        if (f.contains(I))
            facets.push_back(f - I);
    return on_covered_vertices(k, maximal_sets(facets));
}

SimplicialComplex star(const SimplicialComplex& k, VertexSet I)
{
    require_face(k, I);
    std::vector<VertexSet> facets;
    for (VertexSet f : k.facets())
        if (f.contains(I))
            facets.push_back(f);
    return on_covered_vertices(k, facets);
}

SimplicialComplex boundary_star(const SimplicialComplex& k, VertexSet I)
{
    require_face(k, I);
    std::vector<VertexSet> facets;
    for (VertexSet f : k.facets())
        if (f.contains(I))
            I.for_each([&](int v) { facets.push_back(f.without(v)); });
    return on_covered_vertices(k, maximal_sets(facets));
}

namespace {

std::vector<VertexSet> delete_star_facets(const std::vector<VertexSet>& facets, VertexSet I)
{
    std::vector<VertexSet> out;
    for (VertexSet f : facets)
    {
        if (!f.contains(I))
            out.push_back(f);
        else
            I.for_each([&](int v) { out.push_back(f.without(v)); });
    }
    return maximal_sets(out);
}

}  // namespace

SimplicialComplex star_delete(const SimplicialComplex& k, VertexSet I)
{
    if (I.empty())
        throw Error("SimplexNotInComplex", "star deletion at the empty simplex removes every face");
    require_face(k, I);
    return on_covered_vertices(k, delete_star_facets(k.facets(), I));
}

SimplicialComplex star_delete_all(const SimplicialComplex& k, const std::vector<VertexSet>& sets)
{
    std::vector<VertexSet> facets = k.facets();
    for (VertexSet I : sets)
    {
        if (I.empty())
            throw Error("SimplexNotInComplex", "star deletion at the empty simplex");
        bool present = std::any_of(facets.begin(), facets.end(), [&](VertexSet f) { return f.contains(I); });
        if (present)
            facets = delete_star_facets(facets, I);
    }
    return on_covered_vertices(k, facets);
}

SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b)
{
    std::vector<std::string> labels = a.labels();
    for (const auto& l : b.labels())
    {
        if (a.find(l))
            throw Error("LabelCollision", l);
        labels.push_back(l);
    }
    const int shift = a.num_vertices();
    if (shift + b.num_vertices() > kMaxVertices)
        throw Error("VertexCapExceeded", "join has too many vertices");
    std::vector<VertexSet> facets;
    for (VertexSet f : a.facets())
        for (VertexSet g : b.facets())
            facets.push_back(f | VertexSet(g.bits() << shift));
    return SimplicialComplex(std::move(labels), facets);
}

SimplicialComplex stellar_subdivide(const SimplicialComplex& k, VertexSet I, const std::string& new_label)
{
    require_face(k, I);
    if (I.size() < 2)
        throw Error("SimplexNotInComplex", "stellar subdivision needs a simplex with at least two vertices");
    if (k.find(new_label))
        throw Error("LabelCollision", new_label);
    const int z = k.num_vertices();
    std::vector<std::string> labels = k.labels();
    labels.push_back(new_label);
    std::vector<VertexSet> facets;
    for (VertexSet f : k.facets())
    {
        if (!f.contains(I))
            facets.push_back(f);
        else
            I.for_each([&](int v) { facets.push_back(f.without(v).with(z)); });
    }
    return SimplicialComplex(std::move(labels), facets);
}

SimplicialComplex reorder(const SimplicialComplex& k, const std::vector<int>& order)
{
    if (order.size() != static_cast<std::size_t>(k.num_vertices()))
        throw Error("InvalidOrder", "order must list every vertex once");
    std::vector<int> new_rank(k.num_vertices(), -1);
    std::vector<std::string> labels;
    for (std::size_t r = 0; r < order.size(); ++r)
    {
        int old = order[r];
        if (old < 0 || old >= k.num_vertices() || new_rank[old] != -1)
            throw Error("InvalidOrder", "order must list every vertex once");
        new_rank[old] = static_cast<int>(r);
        labels.push_back(k.label(old));
    }
    std::vector<VertexSet> facets;
    for (VertexSet f : k.facets())
    {
        VertexSet g;
        f.for_each([&](int v) { g = g.with(new_rank[v]); });
        facets.push_back(g);
    }
    return SimplicialComplex(std::move(labels), facets);
}

SimplicialComplex relabel(const SimplicialComplex& k, const std::vector<std::string>& labels)
{
    if (labels.size() != static_cast<std::size_t>(k.num_vertices()))
        throw Error("InvalidOrder", "relabel needs one label per vertex");
    return SimplicialComplex(labels, k.facets());
}

// ------------------------------------------------------------------ //
//                             VertexMap                              //
// ------------------------------------------------------------------ //

VertexSet VertexMap::apply(VertexSet s) const
{
    VertexSet out;
    s.for_each([&](int r) { out = out.with(image.at(r)); });
    return out;
}

VertexSet VertexMap::preimage(VertexSet t) const
{
    VertexSet out;
    for (std::size_t r = 0; r < image.size(); ++r)
        if (t.contains(image[r]))
            out = out.with(static_cast<int>(r));
    return out;
}

std::vector<VertexSet> VertexMap::simplex_preimages(VertexSet tau) const
{
    std::vector<VertexSet> out;
    const VertexSet pre = preimage(tau);
    for (VertexSet s : source->faces(tau.size() - 1))
        if (pre.contains(s) && apply(s) == tau)
            out.push_back(s);
    return out;
}

bool VertexMap::is_simplicial() const
{
    return std::all_of(source->facets().begin(), source->facets().end(),
                       [&](VertexSet f) { return target->is_face(apply(f)); });
}

bool VertexMap::is_order_compatible() const
{
    for (std::size_t r = 1; r < image.size(); ++r)
        if (image[r] < image[r - 1])
            return false;
    return true;
}

bool VertexMap::is_surjective() const
{
    VertexSet hit;
    for (int t : image)
        hit = hit.with(t);
    return hit == target->all_vertices();
}

VertexMap VertexMap::compose_after(const VertexMap& first) const
{
    if (first.target.get() != source.get() && !(*first.target == *source))
        throw Error("AmbientMismatch", "maps are not composable");
    VertexMap m{first.source, target, {}};
    for (int t : first.image)
        m.image.push_back(image.at(t));
    return m;
}

VertexMap VertexMap::identity(const ComplexPtr& k)
{
    VertexMap m{k, k, {}};
    for (int r = 0; r < k->num_vertices(); ++r)
        m.image.push_back(r);
    return m;
}

// ------------------------------------------------------------------ //
//                          Edge contraction                          //
// ------------------------------------------------------------------ //

bool link_condition(const SimplicialComplex& k, int u, int w)
{
    // τ lies in link(u) ∩ link(w) iff τ avoids u, w and both τ∪u, τ∪w are
    // faces; it lies in link({u,w}) iff τ∪{u,w} is a face.
    for (int d = -1; d < k.dimension(); ++d)
        for (VertexSet t : k.faces(d))
        {
            if (t.contains(u) || t.contains(w))
                continue;
            if (k.is_face(t.with(u)) && k.is_face(t.with(w)) && !k.is_face(t.with(u).with(w)))
                return false;
        }
    return true;
}

Contraction contract_edge(const ComplexPtr& k, int u, int w, const std::string& new_label)
{
    if (u == w || u < 0 || w < 0 || u >= k->num_vertices() || w >= k->num_vertices() ||
        !k->is_face(VertexSet::single(u).with(w)))
        throw Error("EdgeNotInComplex", "contracted pair is not an edge");
    const std::string label = new_label.empty() ? k->label(u) : new_label;
    std::vector<int> image(k->num_vertices());
    std::vector<std::string> labels;
    for (int r = 0; r < k->num_vertices(); ++r)
    {
        if (r == w)
            continue;
        image[r] = static_cast<int>(labels.size());
        labels.push_back(r == u ? label : k->label(r));
    }
    image[w] = image[u];
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (static_cast<int>(i) != image[u] && labels[i] == label)
            throw Error("LabelCollision", label);
    std::vector<VertexSet> facets;
    VertexMap m{k, nullptr, image};
    for (VertexSet f : k->facets())
        facets.push_back(m.apply(f));
    Contraction c;
    c.complex = make_complex(SimplicialComplex(std::move(labels), facets));
    m.target = c.complex;
    c.map = std::move(m);
    c.link_condition = link_condition(*k, u, w);
    return c;
}

long euler_characteristic(const SimplicialComplex& k)
{
    long chi = 0;
    for (int d = 0; d <= k.dimension(); ++d)
        chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(k.faces(d).size());
    return chi;
}

}  // namespace matk
