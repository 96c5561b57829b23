#include "support.hpp"

#include <doctest.h>

using namespace matk;
using namespace matk::testing;

namespace {

Cochain chi(const ComplexPtr& k, const std::vector<std::string>& J, const std::vector<std::string>& sigma, const Ring& r)
{
    return Cochain::basis(k, k->vertex_set(J), k->vertex_set(sigma), r);
}

const std::vector<std::string> kAll{"1", "2", "3", "4", "5", "6"};

}  // namespace

TEST_CASE("six-vertex graph: triple product over every ring")
{
    const auto k = fixture_complex("fig1.json");
    for (const Ring& ring : {Ring::integers(), Ring::rationals(), Ring::prime_field(2), Ring::prime_field(3)})
    {
        CAPTURE(ring.name());
        const auto cls = fixture_classes(k, "fig1-classes.json", ring);
        const MasseyVerdict v = triple_massey_decide(cls[0], cls[1], cls[2]);
        CHECK(v.defined == Tristate::True);
        CHECK(v.contains_zero == Tristate::False);
        CHECK(v.total_degree == 8);
        REQUIRE(v.indeterminacy.has_value());
        CHECK(v.indeterminacy->free_rank == 1);
        CHECK(v.indeterminacy->torsion.empty());
        REQUIRE(v.witness_system.has_value());
        CHECK(check_defining_system(*v.witness_system).empty());
        REQUIRE(v.witness_cycle.has_value());
        CHECK(boundary(*v.witness_cycle).is_zero());
        CHECK(evaluate(*v.witness_cocycle, *v.witness_cycle) != 0);
    }
}

TEST_CASE("six-vertex graph: every defining system gives [χ15 + (c1 - c2) χ35]")
{
    const auto k = fixture_complex("fig1.json");
    for (unsigned long p : {2UL, 3UL})
    {
        CAPTURE(p);
        const Ring ring = Ring::prime_field(p);
        const auto cls = fixture_classes(k, "fig1-classes.json", ring);
        struct Seen
        {
            Scalar c1, c2;
            Cochain omega;
        };
        std::vector<Seen> seen;
        const MasseyVerdict v = enumerate_defining_systems(cls, kDefaultBudget, [&](const DefiningSystem& ds, const Cochain& omega, bool) {
            const Cochain& a12 = ds.at(1, 2);
            seen.push_back({a12.coeff(k->vertex_set({"3"})), a12.coeff(k->vertex_set({"1"})), omega});
        });
        CHECK(v.defined == Tristate::True);
        CHECK(v.contains_zero == Tristate::False);
        CHECK(!v.budget_exhausted);
        CHECK(seen.size() == (p == 2 ? 8u : 27u));
        // One choice of signs must fit every system.
        bool some_sign_fits = false;
        for (int s1 : {1, -1})
            for (int s2 : {1, -1})
            {
                bool all = true;
                for (const auto& s : seen)
                {
                    const Cochain expected = chi(k, kAll, {"1", "5"}, ring).scaled(s1) +
                                             chi(k, kAll, {"3", "5"}, ring).scaled(Scalar(s2) * (s.c1 - s.c2));
                    all = all && is_coboundary(s.omega - expected);
                }
                some_sign_fits = some_sign_fits || all;
            }
        CHECK(some_sign_fits);
        // The indeterminacy is visible: the enumerated classes take p distinct values.
        std::vector<Cochain> classes;
        for (const auto& s : seen)
            if (std::none_of(classes.begin(), classes.end(), [&](const Cochain& c) { return is_coboundary(c - s.omega); }))
                classes.push_back(s.omega);
        CHECK(classes.size() == p);
    }
}

TEST_CASE("defining systems: validation and errors")
{
    const auto k = fixture_complex("fig1.json");
    const Ring z = Ring::integers();
    const auto cls = fixture_classes(k, "fig1-classes.json", z);
    DefiningSystem ds(cls);
    CHECK(ds.size() == 3);
    CHECK(ds.J(1, 2) == k->vertex_set({"1", "2", "3", "4"}));
    CHECK(ds.degree(1, 3) == 0);
    CHECK(error_code([&] { associated_cocycle(ds); }) == "InvalidDefiningSystem");
    CHECK(error_code([&] { ds.set(1, 3, Cochain(k, k->all_vertices(), 1, z)); }) == "InvalidIndex");
    CHECK(error_code([&] { ds.set(1, 2, Cochain(k, ds.J(1, 2), 1, z)); }) == "GradingMismatch");
    ds.set(1, 2, Cochain(k, ds.J(1, 2), 0, z));
    ds.set(2, 3, Cochain(k, ds.J(2, 3), 0, z));
    // χ1·χ3 vanishes on the nose ({1,3} is not an edge) but χ3·χ5 does not.
    const auto violations = check_defining_system(ds);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].i == 2);
    CHECK(violations[0].k == 3);

    const MasseyVerdict v = triple_massey_decide(cls[0], cls[1], cls[2]);
    const DefiningSystem& w = *v.witness_system;
    const Cochain omega = associated_cocycle(w);
    CHECK(coboundary(omega).is_zero());
    CHECK(omega.total_degree() == 8);
    CHECK(staircase_rhs(w, 1, 2) == coboundary(w.at(1, 2)));

    CHECK(error_code([&] { triple_massey_decide(cls[0], cls[0], cls[2]); }) == "OverlappingSupports");
    CHECK(error_code([&] { enumerate_defining_systems(cls); }) == "RingNotFinite");
    CHECK(decide_massey(cls).contains_zero == Tristate::False);
}

TEST_CASE("budget exhaustion yields an unknown verdict")
{
    const auto k = fixture_complex("fig1.json");
    const auto cls = fixture_classes(k, "fig1-classes.json", Ring::prime_field(3));
    const MasseyVerdict v = enumerate_defining_systems(cls, 5);
    CHECK(v.budget_exhausted);
    CHECK(v.contains_zero == Tristate::Unknown);
    const MasseyVerdict c = enumerate_defining_systems(cls, kDefaultBudget, {}, ParameterSpace::Classes);
    CHECK(c.contains_zero == Tristate::False);
    CHECK(c.systems_enumerated <= 27);
}

TEST_CASE("two-fold products reduce to the cup product")
{
    const auto octa = make_complex(*fixture_complex("octahedron.json"));
    const Ring z = Ring::integers();
    const std::vector<CohomologyClass> cls{CohomologyClass(chi(octa, {"1", "2"}, {"1"}, z)),
                                           CohomologyClass(chi(octa, {"3", "4"}, {"3"}, z))};
    const MasseyVerdict v = decide_massey(cls);
    CHECK(v.defined == Tristate::True);
    CHECK(v.contains_zero == Tristate::False);
    CHECK(v.total_degree == 6);
    const auto k = fixture_complex("fig1.json");
    const auto f = fixture_classes(k, "fig1-classes.json", z);
    CHECK(decide_massey({f[0], f[1]}).contains_zero == Tristate::True);
}

TEST_CASE("undefined triple products are reported as such")
{
    const auto octa = make_complex(*fixture_complex("octahedron.json"));
    const Ring z = Ring::integers();
    // α1·α2 ≠ 0 in the octahedron, so no defining system exists.
    const MasseyVerdict v = triple_massey_decide(CohomologyClass(chi(octa, {"1", "2"}, {"1"}, z)),
                                                 CohomologyClass(chi(octa, {"3", "4"}, {"3"}, z)),
                                                 CohomologyClass(chi(octa, {"5", "6"}, {"5"}, z)));
    CHECK(v.defined == Tristate::False);
}

TEST_CASE("property: enumeration over F2 agrees with the exact triple decision")
{
    std::mt19937 rng(41);
    const Ring f2 = Ring::prime_field(2);
    int compared = 0, disagreements = 0, nontrivial = 0;
    for (int trial = 0; trial < 4000 && compared < 50; ++trial)
    {
        const int m = 6 + static_cast<int>(rng() % 2);
        const auto k = make_complex(random_complex(rng, m, 9, 2));
        // Split the vertices into three disjoint non-empty blocks.
        std::vector<VertexSet> blocks(3);
        for (int v = 0; v < m; ++v)
        {
            const std::size_t b = rng() % 3;
            blocks[b] = blocks[b].with(v);
        }
        if (std::any_of(blocks.begin(), blocks.end(), [](VertexSet b) { return b.size() < 2; }))
            continue;
        std::vector<CohomologyClass> cls;
        for (VertexSet J : blocks)
        {
            const CohomologyBasis h = reduced_cohomology(k, J, 0, f2);
            if (h.class_representatives().empty())
                break;
            cls.emplace_back(h.class_representatives()[rng() % h.class_representatives().size()]);
        }
        if (cls.size() != 3)
            continue;
        const MasseyVerdict exact = triple_massey_decide(cls[0], cls[1], cls[2]);
        if (exact.defined != Tristate::True)
            continue;
        const MasseyVerdict enumerated = enumerate_defining_systems(cls, 1 << 16);
        if (enumerated.budget_exhausted)
            continue;
        ++compared;
        nontrivial += exact.contains_zero == Tristate::False ? 1 : 0;
        disagreements += enumerated.contains_zero == exact.contains_zero ? 0 : 1;
    }
    CHECK(compared == 50);
    CHECK(disagreements == 0);
    MESSAGE("non-trivial products among the compared cases: " << nontrivial);
}

TEST_CASE("evaluating cycles")
{
    const auto k = fixture_complex("c5.json");
    const Ring z = Ring::integers();
    const Cochain e = Cochain::basis(k, k->all_vertices(), k->vertex_set({"1", "2"}), z);
    const auto x = evaluating_cycle(e);
    REQUIRE(x.has_value());
    CHECK(boundary(*x).is_zero());
    CHECK(evaluate(e, *x) != 0);
    CHECK(!evaluating_cycle(e, {e}).has_value());
}
