#include "matk/io.hpp"

#include "matk/error.hpp"

#include <fstream>
#include <sstream>

namespace matk {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error("InvalidJson", what); }

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        invalid(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::string label_of(const Json& j)
{
    if (j.is_string())
        return j.get<std::string>();
    if (j.is_number_integer())
        return std::to_string(j.get<long long>());
    invalid("vertex labels must be strings or integers");
}

std::vector<std::string> labels_of(const Json& j)
{
    if (!j.is_array())
        invalid("expected an array of vertex labels");
    std::vector<std::string> out;
    for (const auto& x : j)
        out.push_back(label_of(x));
    return out;
}

Json integer_to_json(const Integer& z)
{
    if (z.fits_slong_p())
        return z.get_si();
    return z.get_str();
}

template <typename Tag>
Json graded_to_json(const Graded<Tag>& a)
{
    const SimplicialComplex& k = *a.complex();
    Json terms = Json::array();
    for (const auto& [s, c] : a.terms())
        terms.push_back({{"simplex", simplex_to_json(k, s)}, {"coeff", scalar_to_json(c)}});
    return {{"J", simplex_to_json(k, a.J())}, {"p", a.degree()}, {"terms", terms}};
}

template <typename Tag>
Graded<Tag> graded_from_json(const ComplexPtr& k, const Json& j, const Ring& ring)
{
    const VertexSet J = simplex_from_json(*k, field(j, "J"));
    const Json& pj = field(j, "p");
    if (!pj.is_number_integer())
        invalid("\"p\" must be an integer");
    Graded<Tag> a(k, J, pj.get<int>(), ring);
    if (j.contains("terms"))
    {
        if (!j.at("terms").is_array())
            invalid("\"terms\" must be an array");
        for (const auto& t : j.at("terms"))
            a.add(simplex_from_json(*k, field(t, "simplex")), scalar_from_json(field(t, "coeff")));
    }
    return a;
}

Json resolve(const Json& j, const std::filesystem::path& base)
{
    if (j.is_string())
    {
        std::filesystem::path p = j.get<std::string>();
        return read_json_file(p.is_absolute() ? p : base / p);
    }
    return j;
}

}  // namespace

// ------------------------------------------------------------------ //

Json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("FileNotFound", path.string());
    try
    {
        return Json::parse(in);
    }
    catch (const Json::parse_error& e)
    {
        invalid(path.string() + ": " + e.what());
    }
}

std::string dump_stable(const Json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::filesystem::path& path, const Json& j)
{
    std::ofstream out(path);
    if (!out)
        throw Error("FileNotWritable", path.string());
    out << dump_stable(j);
}

// ------------------------------------------------------------------ //

Json simplex_to_json(const SimplicialComplex& k, VertexSet s) { return k.labels_of(s); }

VertexSet simplex_from_json(const SimplicialComplex& k, const Json& j) { return k.vertex_set(labels_of(j)); }

Json complex_to_json(const SimplicialComplex& k)
{
    Json facets = Json::array();
    for (VertexSet f : k.facets())
        facets.push_back(simplex_to_json(k, f));
    return {{"vertices", k.labels()}, {"facets", facets}};
}

SimplicialComplex complex_from_json(const Json& j)
{
    const auto labels = labels_of(field(j, "vertices"));
    std::vector<std::vector<std::string>> facets;
    const Json& fj = field(j, "facets");
    if (!fj.is_array())
        invalid("\"facets\" must be an array");
    for (const auto& f : fj)
        facets.push_back(labels_of(f));
    return build_complex(labels, facets);
}

// ------------------------------------------------------------------ //

Json scalar_to_json(const Scalar& c)
{
    Scalar x = c;
    x.canonicalize();
    return x.get_str();
}

Scalar scalar_from_json(const Json& j)
{
    if (j.is_number_integer())
        return Scalar(static_cast<long>(j.get<long long>()));
    if (!j.is_string())
        invalid("coefficients must be decimal strings or integers");
    Scalar c;
    if (c.set_str(j.get<std::string>(), 10) != 0)
        invalid("malformed coefficient \"" + j.get<std::string>() + "\"");
    c.canonicalize();
    return c;
}

Json cochain_to_json(const Cochain& a) { return graded_to_json(a); }
Json chain_to_json(const Chain& x) { return graded_to_json(x); }

Cochain cochain_from_json(const ComplexPtr& k, const Json& j, const Ring& ring)
{
    return graded_from_json<CochainTag>(k, j, ring);
}

Chain chain_from_json(const ComplexPtr& k, const Json& j, const Ring& ring)
{
    return graded_from_json<ChainTag>(k, j, ring);
}

std::vector<Cochain> cochains_from_json(const ComplexPtr& k, const Json& j, const Ring& ring)
{
    const Json& list = j.is_object() ? field(j, "classes") : j;
    if (!list.is_array())
        invalid("expected an array of cochains");
    std::vector<Cochain> out;
    for (const auto& c : list)
        out.push_back(cochain_from_json(k, c, ring));
    return out;
}

// ------------------------------------------------------------------ //

Json group_to_json(const AbelianGroup& g)
{
    Json torsion = Json::array();
    for (const auto& t : g.torsion)
        torsion.push_back(integer_to_json(t));
    return {{"free_rank", g.free_rank}, {"torsion", torsion}};
}

Json hochster_to_json(const SimplicialComplex& k, const HochsterTable& t)
{
    Json by_j = Json::array();
    for (const auto& e : t.by_J)
    {
        Json row = group_to_json(e.group);
        row["J"] = simplex_to_json(k, e.J);
        row["p"] = e.p;
        row["degree"] = e.p + e.J.size() + 1;
        by_j.push_back(row);
    }
    Json out = graded_groups_to_json(t.ring, t.total);
    out["by_J"] = by_j;
    return out;
}

Json graded_groups_to_json(const Ring& ring, const std::map<int, AbelianGroup>& groups)
{
    Json total = Json::array();
    for (const auto& [d, g] : groups)
    {
        Json row = group_to_json(g);
        row["degree"] = d;
        total.push_back(row);
    }
    return {{"ring", ring.name()}, {"total", total}};
}

Json defining_system_to_json(const DefiningSystem& ds)
{
    Json entries = Json::array();
    for (int i = 1; i <= ds.size(); ++i)
        entries.push_back({{"i", i}, {"k", i}, {"cochain", cochain_to_json(ds.at(i, i))}});
    for (auto [i, k] : ds.stages())
        if (ds.has(i, k))
            entries.push_back({{"i", i}, {"k", k}, {"cochain", cochain_to_json(ds.at(i, k))}});
    return {{"n", ds.size()}, {"entries", entries}};
}

DefiningSystem defining_system_from_json(const ComplexPtr& k, const Json& j, const Ring& ring)
{
    const Json& nj = field(j, "n");
    if (!nj.is_number_integer() || nj.get<int>() < 2)
        invalid("\"n\" must be an integer >= 2");
    const int n = nj.get<int>();
    std::vector<std::optional<Cochain>> diagonal(n);
    std::vector<std::tuple<int, int, Cochain>> rest;
    for (const auto& e : field(j, "entries"))
    {
        const int i = field(e, "i").get<int>(), kk = field(e, "k").get<int>();
        if (i < 1 || kk > n || i > kk)
            invalid("entry index out of range");
        Cochain c = cochain_from_json(k, field(e, "cochain"), ring);
        if (i == kk)
            diagonal[i - 1] = std::move(c);
        else
            rest.emplace_back(i, kk, std::move(c));
    }
    std::vector<Cochain> reps;
    for (int i = 0; i < n; ++i)
    {
        if (!diagonal[i])
            invalid("diagonal entry " + std::to_string(i + 1) + " is missing");
        reps.push_back(*diagonal[i]);
    }
    DefiningSystem ds(reps);
    for (auto& [i, kk, c] : rest)
        ds.set(i, kk, std::move(c));
    return ds;
}

Json tristate_to_json(Tristate t)
{
    switch (t)
    {
    case Tristate::True:
        return true;
    case Tristate::False:
        return false;
    case Tristate::Unknown:
        break;
    }
    return "unknown";
}

Json verdict_to_json(const MasseyVerdict& v)
{
    Json out = {{"defined", tristate_to_json(v.defined)},
                {"contains_zero", tristate_to_json(v.contains_zero)},
                {"total_degree", v.total_degree},
                {"parameter_count", v.parameter_count},
                {"systems_enumerated", v.systems_enumerated},
                {"budget_exhausted", v.budget_exhausted}};
    if (v.indeterminacy)
        out["indeterminacy"] = group_to_json(*v.indeterminacy);
    if (v.indeterminacy_rank)
        out["indeterminacy_rank"] = *v.indeterminacy_rank;
    if (v.witness_system)
        out["witness_system"] = defining_system_to_json(*v.witness_system);
    if (v.witness_cocycle)
        out["witness_cocycle"] = cochain_to_json(*v.witness_cocycle);
    if (v.witness_cycle)
        out["witness_cycle"] = chain_to_json(*v.witness_cycle);
    return out;
}

// ------------------------------------------------------------------ //

JoinMasseySpec join_spec_from_json(const Json& j, const std::filesystem::path& base, const Ring& ring)
{
    JoinMasseySpec spec;
    const Json& factors = field(j, "factors");
    const Json& classes = field(j, "classes");
    if (!factors.is_array() || !classes.is_array() || factors.size() != classes.size())
        invalid("\"factors\" and \"classes\" must be arrays of equal length");
    for (std::size_t i = 0; i < factors.size(); ++i)
    {
        auto k = make_complex(complex_from_json(resolve(factors[i], base)));
        spec.classes.push_back(cochain_from_json(k, resolve(classes[i], base), ring));
        spec.factors.push_back(std::move(k));
    }
    if (j.contains("vertex_choice"))
    {
        const Json& vc = j.at("vertex_choice");
        if (!vc.is_array() || vc.size() != factors.size())
            invalid("\"vertex_choice\" needs one list per factor");
        for (std::size_t i = 0; i < vc.size(); ++i)
        {
            std::map<VertexSet, int, SimplexLess> choice;
            for (const auto& e : vc[i])
                choice[simplex_from_json(*spec.factors[i], field(e, "simplex"))] =
                    spec.factors[i]->rank_of(label_of(field(e, "vertex")));
            spec.vertex_choice.push_back(std::move(choice));
        }
    }
    if (j.contains("support_order"))
    {
        const Json& so = j.at("support_order");
        if (!so.is_array() || so.size() != factors.size())
            invalid("\"support_order\" needs one list per factor");
        for (std::size_t i = 0; i < so.size(); ++i)
        {
            std::vector<VertexSet> order;
            for (const auto& s : so[i])
                order.push_back(simplex_from_json(*spec.factors[i], s));
            spec.support_order.push_back(std::move(order));
        }
    }
    return spec;
}

Json deletion_ledger_to_json(const JoinConstruction& c)
{
    Json out = Json::array();
    for (const auto& d : c.ledger)
        out.push_back({{"simplex", simplex_to_json(*c.join, d.simplex)},
                       {"i", d.i},
                       {"k", d.k},
                       {"effective", d.effective}});
    return out;
}

Json vertex_map_to_json(const VertexMap& phi)
{
    Json image = Json::object();
    for (int r = 0; r < phi.source->num_vertices(); ++r)
        image[phi.source->label(r)] = phi.target->label(phi.image[r]);
    return {{"source", complex_to_json(*phi.source)},
            {"target", complex_to_json(*phi.target)},
            {"image", image}};
}

VertexMap vertex_map_from_json(const ComplexPtr& source, const ComplexPtr& target, const Json& image)
{
    if (!image.is_object())
        invalid("\"image\" must map source labels to target labels");
    VertexMap phi{source, target, std::vector<int>(source->num_vertices(), -1)};
    for (auto it = image.begin(); it != image.end(); ++it)
        phi.image[source->rank_of(it.key())] = target->rank_of(label_of(it.value()));
    for (int r = 0; r < source->num_vertices(); ++r)
        if (phi.image[r] < 0)
            throw Error("IncompleteMap", "no image for vertex " + source->label(r));
    return phi;
}

// ------------------------------------------------------------------ //

Json building_set_to_json(const BuildingSet& b)
{
    Json sets = Json::array();
    for (GroundSet s : b.sets)
        sets.push_back(ground_elements(s));
    return {{"ground", b.ground}, {"sets", sets}};
}

BuildingSet building_set_from_json(const Json& j)
{
    const Json& g = field(j, "ground");
    if (!g.is_number_integer())
        invalid("\"ground\" must be an integer");
    std::vector<std::vector<int>> sets;
    for (const auto& s : field(j, "sets"))
    {
        if (!s.is_array())
            invalid("building set members must be arrays of integers");
        std::vector<int> members;
        for (const auto& e : s)
        {
            if (!e.is_number_integer())
                invalid("building set members must be arrays of integers");
            members.push_back(e.get<int>());
        }
        sets.push_back(std::move(members));
    }
    return validate_building_set(g.get<int>(), sets);
}

}  // namespace matk
