#include "matk/constructions.hpp"

#include "matk/error.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace matk {

namespace {

int sign_of(long parity) { return parity % 2 == 0 ? 1 : -1; }

bool same_complex(const ComplexPtr& a, const ComplexPtr& b) { return a == b || *a == *b; }

/** Σ_{v ∈ A} ε(v, A) Δ_{A∖v}, defined whether or not A itself is a face. */
Chain simplex_boundary(const ComplexPtr& k, VertexSet J, VertexSet A, const Ring& ring)
{
    Chain out(k, J, A.size() - 2, ring);
    A.for_each([&](int v) { out.add(A.without(v), Scalar(epsilon(v, A))); });
    return out;
}

}  // namespace

// ------------------------------------------------------------------ //
//                            JoinMasseySpec                          //
// ------------------------------------------------------------------ //

int JoinMasseySpec::chosen_vertex(int i, VertexSet sigma) const
{
    if (i < static_cast<int>(vertex_choice.size()))
    {
        auto it = vertex_choice[i].find(sigma);
        if (it != vertex_choice[i].end())
        {
            if (!sigma.contains(it->second))
                throw Error("InvalidSpec", "chosen vertex does not lie in its simplex");
            return it->second;
        }
    }
    return sigma.min();
}

std::vector<VertexSet> JoinMasseySpec::ordered_support(int i) const
{
    std::vector<VertexSet> support = classes.at(i).support();
    if (i < static_cast<int>(support_order.size()) && !support_order[i].empty())
    {
        std::vector<VertexSet> given = support_order[i];
        std::vector<VertexSet> a = given, b = support;
        std::sort(a.begin(), a.end(), SimplexLess{});
        std::sort(b.begin(), b.end(), SimplexLess{});
        if (a != b)
            throw Error("InvalidSpec", "support order is not a permutation of the support of a_" +
                                           std::to_string(i + 1));
        return given;
    }
    return support;
}

VertexSet JoinConstruction::lift(int i, VertexSet s) const { return VertexSet(s.bits() << offsets.at(i)); }

// ------------------------------------------------------------------ //
//                               P-sets                               //
// ------------------------------------------------------------------ //

std::vector<VertexSet> P_of_simplex(const SimplicialComplex& k, VertexSet J, VertexSet sigma, int v)
{
    std::vector<VertexSet> out;
    const VertexSet core = sigma.without(v);
    for (VertexSet tau : k.faces_in(J, sigma.size() - 1))
        if ((tau & sigma) == core)
            out.push_back(tau);
    return out;
}

PSets compute_P_sets(const JoinMasseySpec& spec, int i)
{
    const Cochain& a = spec.classes.at(i);
    if (a.is_zero() || is_coboundary(a))
        throw Error("ZeroClass", "a_" + std::to_string(i + 1) + " represents the zero class");
    const SimplicialComplex& k = *spec.factors.at(i);
    const std::vector<VertexSet> order = spec.ordered_support(i);

    PSets out;
    std::set<VertexSet, SimplexLess> P;
    std::vector<VertexSet> current = order;
    std::size_t idx = 0;
    for (;;)
    {
        const VertexSet sigma = current[idx];
        out.subsequence.push_back(sigma);
        const auto Ps = P_of_simplex(k, a.J(), sigma, spec.chosen_vertex(i, sigma));
        P.insert(Ps.begin(), Ps.end());
        std::vector<VertexSet> next;
        for (VertexSet s : current)
            if (std::find(Ps.begin(), Ps.end(), s) == Ps.end())
                next.push_back(s);
        current = std::move(next);
        idx = static_cast<std::size_t>(std::find(current.begin(), current.end(), sigma) - current.begin()) + 1;
        if (idx >= current.size())
            break;
    }
    out.P.assign(P.begin(), P.end());
    for (VertexSet s : order)
        if (!P.count(s))
            out.S_tilde.push_back(s);
    return out;
}

// ------------------------------------------------------------------ //
//                        The constructed complex                     //
// ------------------------------------------------------------------ //

JoinConstruction construct_massey_complex(const JoinMasseySpec& spec)
{
    const int n = spec.size();
    if (n < 2)
        throw Error("InvalidSpec", "the construction needs at least two factors");
    if (static_cast<int>(spec.classes.size()) != n)
        throw Error("InvalidSpec", "one class per factor is required");
    for (int i = 0; i < n; ++i)
        if (!same_complex(spec.classes[i].complex(), spec.factors[i]))
            throw Error("InvalidSpec", "class a_" + std::to_string(i + 1) + " does not live on its factor");

    JoinConstruction c;
    c.spec = spec;
    SimplicialComplex joined = *spec.factors[0];
    c.offsets.push_back(0);
    for (int i = 1; i < n; ++i)
    {
        c.offsets.push_back(joined.num_vertices());
        joined = join(joined, *spec.factors[i]);
    }
    c.join = make_complex(joined);
    for (int i = 0; i < n; ++i)
        c.psets.push_back(compute_P_sets(spec, i));

    SimplicialComplex current = joined;
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k)
        {
            if (i == 0 && k == n - 1)
                continue;
            for (VertexSet si : spec.ordered_support(i))
                for (VertexSet sk : c.psets[k].P)
                {
                    Deletion d{c.lift(i, si) | c.lift(k, sk), i + 1, k + 1, true};
                    if (current.is_face(d.simplex))
                        current = star_delete(current, d.simplex);
                    else
                        d.effective = false;
                    c.ledger.push_back(d);
                }
        }
    c.complex = make_complex(std::move(current));
    for (int i = 0; i < n; ++i)
    {
        const Cochain& a = spec.classes[i];
        Cochain lifted(c.complex, c.lift(i, a.J()), a.degree(), a.ring());
        for (const auto& [s, v] : a.terms())
            lifted.add(c.lift(i, s), v);
        c.classes.push_back(std::move(lifted));
    }
    return c;
}

// ------------------------------------------------------------------ //
//                       Canonical defining system                    //
// ------------------------------------------------------------------ //

int theta_joins(const JoinConstruction& c, int i, int k, const std::vector<VertexSet>& sigmas)
{
    long parity = k - i;
    for (int j = i; j < k; ++j)
    {
        int tail = 0;
        for (int l = j + 1; l <= k; ++l)
            tail += c.spec.classes[l - 1].degree();
        parity += static_cast<long>(c.spec.classes[j - 1].J().size()) * tail;
    }
    int sign = sign_of(parity);
    for (int j = i + 1; j <= k; ++j)
    {
        const VertexSet s = sigmas[j - i];
        sign *= epsilon(c.spec.chosen_vertex(j - 1, s), s);
    }
    return sign;
}

DefiningSystem canonical_defining_system_joins(const JoinConstruction& c)
{
    const int n = c.spec.size();
    DefiningSystem ds(c.classes);
    const Ring& ring = ds.ring();
    for (auto [i, k] : ds.stages())
    {
        Cochain a(c.complex, ds.J(i, k), ds.degree(i, k), ring);
        std::vector<VertexSet> sigmas(k - i + 1);
        std::function<void(int, Scalar)> rec = [&](int j, Scalar coeff) {
            if (j > k)
            {
                VertexSet simplex;
                for (int l = i; l <= k; ++l)
                {
                    VertexSet s = sigmas[l - i];
                    if (l > i)
                        s = s.without(c.spec.chosen_vertex(l - 1, s));
                    simplex = simplex | c.lift(l - 1, s);
                }
                a.add(simplex, coeff * theta_joins(c, i, k, sigmas));
                return;
            }
            const Cochain& aj = c.spec.classes[j - 1];
            const std::vector<VertexSet>& choices =
                j == i ? c.spec.ordered_support(j - 1) : c.psets[j - 1].S_tilde;
            for (VertexSet s : choices)
            {
                sigmas[j - i] = s;
                rec(j + 1, coeff * aj.coeff(s));
            }
        };
        rec(i, Scalar(1));
        ds.set(i, k, std::move(a));
    }
    (void)n;
    return ds;
}

// ------------------------------------------------------------------ //
//                            Witness cycle                           //
// ------------------------------------------------------------------ //

Chain chain_join(const Chain& x, const Chain& y)
{
    if (!same_complex(x.complex(), y.complex()) || !(x.ring() == y.ring()))
        throw Error("AmbientMismatch", "chains belong to different complexes or rings");
    if (x.J().intersects(y.J()))
        throw Error("OverlappingSupports", "joined chains must have disjoint vertex sets");
    Chain out(x.complex(), x.J() | y.J(), x.degree() + y.degree() + 1, x.ring());
    for (const auto& [A, ca] : x.terms())
        for (const auto& [B, cb] : y.terms())
        {
            long inversions = 0;
            B.for_each([&](int b) { inversions += (A - VertexSet::prefix(b + 1)).size(); });
            out.add(A | B, sign_of(inversions) * ca * cb);
        }
    return out;
}

Chain witness_cycle(const JoinConstruction& c)
{
    const int n = c.spec.size();
    const auto& cls = c.classes;
    auto pairing_cycle = [&](int i) {
        auto x = evaluating_cycle(cls[i]);
        if (!x)
            throw Error("NoPairingCycle", "no integral cycle pairs nonzero with a_" + std::to_string(i + 1));
        return *x;
    };
    const Ring& ring = cls[0].ring();
    Chain x = pairing_cycle(0);
    if (n == 2)
        return chain_join(x, pairing_cycle(1));
    if (c.psets[n - 1].P.empty())
        throw Error("InvalidSpec", "P-set of the last factor is empty");
    for (int i = 1; i < n - 1; ++i)
        if (c.psets[i].S_tilde.empty())
            throw Error("InvalidSpec", "S̃ of factor " + std::to_string(i + 1) + " is empty");

    // Candidate simplices per factor 2..n.  For the last factor, members of
    // P outside the support of a_n come first: they keep a_n from pairing
    // with the ∂Δ_{σ2∪σn} piece directly.
    std::vector<std::vector<VertexSet>> choices(n);
    for (int i = 1; i < n - 1; ++i)
        choices[i] = c.psets[i].S_tilde;
    {
        const auto support = c.spec.ordered_support(n - 1);
        auto& last = choices[n - 1];
        for (bool outside : {true, false})
            for (VertexSet s : c.psets[n - 1].P)
                if ((std::find(support.begin(), support.end(), s) == support.end()) == outside)
                    last.push_back(s);
    }
    const auto build = [&](const std::vector<std::size_t>& pick) {
        const VertexSet s2 = c.lift(1, choices[1][pick[1]]);
        const VertexSet sn = c.lift(n - 1, choices[n - 1][pick[n - 1]]);
        Chain y = chain_join(x, simplex_boundary(c.complex, cls[1].J() | cls[n - 1].J(), s2 | sn, ring));
        for (int i = 2; i < n - 1; ++i)
            y = chain_join(y, simplex_boundary(c.complex, cls[i].J(), c.lift(i, choices[i][pick[i]]), ring));
        return y;
    };
    // Every admissible choice yields a cycle; return the first one on which
    // the canonical associated cocycle is nonzero (bounded search).
    const Cochain omega = associated_cocycle(canonical_defining_system_joins(c));
    std::vector<std::size_t> pick(n, 0);
    std::optional<Chain> first;
    for (int tried = 0; tried < 256; ++tried)
    {
        Chain y = build(pick);
        if (sgn(evaluate(omega, y)) != 0)
            return y;
        if (!first)
            first = std::move(y);
        int i = n - 1;
        for (; i >= 1; --i)
        {
            if (++pick[i] < choices[i].size())
                break;
            pick[i] = 0;
        }
        if (i < 1)
            break;
    }
    return *first;
}

JoinCertificate certify_join(const JoinConstruction& c, std::size_t budget)
{
    DefiningSystem ds = canonical_defining_system_joins(c);
    JoinCertificate cert{ds, check_defining_system(ds), staircase_rhs(ds, 1, ds.size()), std::nullopt, false,
                         Scalar(0), MasseyVerdict{}};
    try
    {
        cert.witness = witness_cycle(c);
        cert.witness_closed = boundary(*cert.witness).is_zero();
        cert.pairing = evaluate(cert.omega, *cert.witness);
    }
    catch (const Error& e)
    {
        if (e.code() != "NoPairingCycle")
            throw;
    }
    std::vector<CohomologyClass> classes;
    for (const Cochain& a : c.classes)
        classes.emplace_back(a);
    cert.verdict = decide_massey(classes, budget);
    return cert;
}

// ------------------------------------------------------------------ //
//                       Pullback along contractions                  //
// ------------------------------------------------------------------ //

Cochain pullback_class(const VertexMap& phi, const Cochain& ahat)
{
    if (!phi.is_order_compatible())
        throw Error("OrderIncompatibleMap", "the vertex map does not respect the vertex orders");
    if (!same_complex(ahat.complex(), phi.target))
        throw Error("AmbientMismatch", "cochain does not live on the target of the map");
    Cochain a(phi.source, phi.preimage(ahat.J()), ahat.degree(), ahat.ring());
    for (const auto& [t, c] : ahat.terms())
        for (VertexSet s : phi.simplex_preimages(t))
            a.add(s, c);
    return a;
}

int theta_pullback(const std::vector<int>& J_sizes, const std::vector<int>& Jhat_sizes,
                   const std::vector<int>& degrees, int i, int k)
{
    long parity = 0;
    for (int j = i; j < k; ++j)
    {
        int tail = 0;
        for (int l = j + 1; l <= k; ++l)
            tail += degrees[l - 1];
        parity += static_cast<long>(J_sizes[j - 1] - Jhat_sizes[j - 1]) * tail;
    }
    return sign_of(parity);
}

DefiningSystem pullback_defining_system(const VertexMap& phi, const DefiningSystem& upstairs)
{
    if (!check_defining_system(upstairs).empty())
        throw Error("InvalidUpstairsSystem", "the upstairs defining system is not valid");
    const int n = upstairs.size();
    std::vector<Cochain> reps;
    std::vector<int> J_sizes, Jhat_sizes, degrees;
    for (int i = 1; i <= n; ++i)
    {
        const Cochain& ah = upstairs.at(i, i);
        reps.push_back(pullback_class(phi, ah));
        J_sizes.push_back(reps.back().J().size());
        Jhat_sizes.push_back(ah.J().size());
        degrees.push_back(ah.degree());
    }
    DefiningSystem ds(reps);
    for (auto [i, k] : ds.stages())
        ds.set(i, k, pullback_class(phi, upstairs.at(i, k)).scaled(theta_pullback(J_sizes, Jhat_sizes, degrees, i, k)));
    return ds;
}

// ------------------------------------------------------------------ //
//                             Pushforward                            //
// ------------------------------------------------------------------ //

Cochain pushforward_phi_star(const VertexMap& phi, const Cochain& a, int sign)
{
    if (!same_complex(a.complex(), phi.source))
        throw Error("AmbientMismatch", "cochain does not live on the source of the map");
    Cochain out(phi.target, phi.apply(a.J()), a.degree(), a.ring());
    for (const auto& [s, c] : a.terms())
    {
        const VertexSet t = phi.apply(s);
        if (t.size() != s.size())
            throw Error("SupportContainsContractedEdge", "a support simplex contains a contracted edge");
        const Scalar value = c * sign;
        const Scalar existing = out.coeff(t);
        if (existing != 0 && existing != value)
            throw Error("InconsistentPushforward", "preimages of one simplex carry different coefficients");
        out.set(t, value);
    }
    return out;
}

int c_pushforward(const std::vector<VertexSet>& J, const std::vector<VertexSet>& Jhat, const std::vector<int>& degrees,
                  int i, int k)
{
    long parity = 0;
    VertexSet acc, acc_hat;
    for (int l = i; l < k; ++l)
    {
        acc = acc | J[l - 1];
        acc_hat = acc_hat | Jhat[l - 1];
        parity += static_cast<long>(acc.size() - acc_hat.size()) * degrees[l];
    }
    return sign_of(parity);
}

DefiningSystem pushforward_defining_system(const VertexMap& phi, const DefiningSystem& ds)
{
    const int n = ds.size();
    std::vector<VertexSet> J, Jhat;
    std::vector<int> degrees;
    std::vector<Cochain> reps;
    for (int i = 1; i <= n; ++i)
    {
        const Cochain& a = ds.at(i, i);
        J.push_back(a.J());
        Jhat.push_back(phi.apply(a.J()));
        degrees.push_back(a.degree());
        reps.push_back(pushforward_phi_star(phi, a));
    }
    DefiningSystem out(reps);
    for (auto [i, k] : out.stages())
        out.set(i, k, pushforward_phi_star(phi, ds.at(i, k), c_pushforward(J, Jhat, degrees, i, k)));
    return out;
}

// ------------------------------------------------------------------ //
//                           Disjointification                        //
// ------------------------------------------------------------------ //

DefiningSystem disjointify_defining_system(const DefiningSystem& input, int u, int w)
{
    const VertexSet edge = VertexSet::single(u).with(w);
    const int n = input.size();
    for (int i = 1; i <= n; ++i)
        for (VertexSet s : input.at(i, i).support())
            if (s.contains(edge))
                throw Error("DiagonalTouchesEdge", "a class representative contains the contracted edge");
    if (!check_defining_system(input).empty())
        throw Error("InvalidDefiningSystem", "disjointification needs a valid defining system");

    DefiningSystem ds = input;
    const int removed = std::max(u, w);
    const auto stages = ds.stages();
    auto offending = [&](int i, int k) -> std::optional<VertexSet> {
        for (const auto& [s, c] : ds.at(i, k).terms())
            if (s.contains(edge))
                return s;
        return std::nullopt;
    };
    for (;;)
    {
        // Innermost offending entry: stages are sorted by increasing k - i.
        std::optional<std::pair<int, int>> pos;
        std::optional<VertexSet> sigma;
        for (auto [i, k] : stages)
            if ((sigma = offending(i, k)))
            {
                pos = std::make_pair(i, k);
                break;
            }
        if (!pos)
            break;
        const auto [i, k] = *pos;
        const Cochain& aik = ds.at(i, k);
        const Scalar s = aik.coeff(*sigma) * epsilon(removed, *sigma);
        const Cochain b = Cochain::basis(ds.complex(), aik.J(), sigma->without(removed), ds.ring());
        const int total = aik.total_degree();
        std::vector<std::pair<std::pair<int, int>, Cochain>> updates;
        updates.push_back({{i, k}, aik - coboundary(b).scaled(s)});
        for (int j = 1; j < i; ++j)
            if (!(j == 1 && k == n))
                updates.push_back({{j, k}, ds.at(j, k) + cup_multiply(ds.at(j, i - 1), b).scaled(s)});
        for (int l = k + 1; l <= n; ++l)
            if (!(i == 1 && l == n))
                updates.push_back(
                    {{i, l}, ds.at(i, l) + cup_multiply(b, ds.at(k + 1, l)).scaled(s * sign_of(total))});
        for (auto& [ik, a] : updates)
            ds.set(ik.first, ik.second, std::move(a));
    }
    return ds;
}

// ------------------------------------------------------------------ //
//                   Factoring maps into contractions                 //
// ------------------------------------------------------------------ //

std::optional<std::vector<std::pair<std::string, std::string>>> factor_into_contractions(const VertexMap& phi)
{
    if (!phi.is_simplicial() || !phi.is_surjective())
        return std::nullopt;
    std::vector<std::pair<std::string, std::string>> steps;
    ComplexPtr current = phi.source;
    // where[r] = rank in `current` of source vertex r
    std::vector<int> where(phi.source->num_vertices());
    for (std::size_t r = 0; r < where.size(); ++r)
        where[r] = static_cast<int>(r);
    for (int t = 0; t < phi.target->num_vertices(); ++t)
    {
        for (;;)
        {
            std::set<int> fibre;
            for (std::size_t r = 0; r < where.size(); ++r)
                if (phi.image[r] == t)
                    fibre.insert(where[r]);
            if (fibre.size() <= 1)
                break;
            std::optional<std::pair<int, int>> edge;
            for (int a : fibre)
            {
                for (int b : fibre)
                    if (a < b && current->is_face(VertexSet::single(a).with(b)))
                    {
                        edge = std::make_pair(a, b);
                        break;
                    }
                if (edge)
                    break;
            }
            if (!edge || !link_condition(*current, edge->first, edge->second))
                return std::nullopt;
            steps.emplace_back(current->label(edge->first), current->label(edge->second));
            Contraction c = contract_edge(current, edge->first, edge->second);
            for (int& r : where)
                r = c.map.image[r];
            current = c.complex;
        }
    }
    // Compare the contracted complex with the target through the induced bijection.
    std::vector<int> to_target(current->num_vertices(), -1);
    for (std::size_t r = 0; r < where.size(); ++r)
        to_target[where[r]] = phi.image[r];
    VertexMap induced{current, phi.target, to_target};
    std::set<VertexSet, SimplexLess> mapped, target;
    for (VertexSet f : current->facets())
        mapped.insert(induced.apply(f));
    target.insert(phi.target->facets().begin(), phi.target->facets().end());
    if (mapped != target)
        return std::nullopt;
    return steps;
}

ContractionCertificate certify_contraction(const VertexMap& phi, const DefiningSystem& upstairs, std::size_t budget)
{
    DefiningSystem ds = pullback_defining_system(phi, upstairs);
    ContractionCertificate cert{ds, check_defining_system(ds), MasseyVerdict{}};
    std::vector<CohomologyClass> classes;
    for (int i = 1; i <= ds.size(); ++i)
        classes.emplace_back(ds.at(i, i));
    cert.verdict = decide_massey(classes, budget);
    return cert;
}

}  // namespace matk
