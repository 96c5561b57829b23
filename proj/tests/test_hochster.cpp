#include "support.hpp"

#include <doctest.h>

using namespace matk;
using namespace matk::testing;

namespace {

std::map<int, std::size_t> ranks_of(const std::map<int, AbelianGroup>& groups)
{
    std::map<int, std::size_t> out;
    for (const auto& [d, g] : groups)
        if (g.free_rank != 0)
            out[d] = g.free_rank;
    return out;
}

}  // namespace

TEST_CASE("Hochster decomposition agrees with the cellular oracle on the fixtures")
{
    for (const char* name : {"s0.json", "c4.json", "c5.json", "octahedron.json", "fig1.json", "example-a.json"})
    {
        CAPTURE(name);
        const auto k = fixture_complex(name);
        for (const Ring& ring : {Ring::integers(), Ring::rationals(), Ring::prime_field(2), Ring::prime_field(3)})
        {
            CAPTURE(ring.name());
            const HochsterTable t = hochster_decompose(*k, ring);
            CHECK(t.total == moment_angle_cw_oracle(*k, ring));
            // Independent oracle: Betti numbers summed over full subcomplexes.
            if (ring.is_field())
                CHECK(ranks_of(t.total) == oracle::moment_angle_betti(*k, ring.is_finite() ? ring.characteristic() : 0));
        }
    }
}

TEST_CASE("moment-angle complexes of small spheres")
{
    // Z_{S^0} = S^3, Z_{∂Δ^1 * ∂Δ^1} = S^3 x S^3.
    const auto s0 = fixture_complex("s0.json");
    const auto t0 = hochster_decompose(*s0, Ring::integers());
    CHECK(ranks_of(t0.total) == std::map<int, std::size_t>{{0, 1}, {3, 1}});
    const auto c4 = fixture_complex("c4.json");
    CHECK(ranks_of(hochster_decompose(*c4, Ring::integers()).total) ==
          std::map<int, std::size_t>{{0, 1}, {3, 2}, {6, 1}});
    // Z of the pentagon: the connected sum of five products of spheres, 5 classes in degrees 3 and 4.
    const auto c5 = fixture_complex("c5.json");
    CHECK(ranks_of(hochster_decompose(*c5, Ring::integers()).total) ==
          std::map<int, std::size_t>{{0, 1}, {3, 5}, {4, 5}, {7, 1}});
}

TEST_CASE("the six-vertex graph has three classes in degree three")
{
    const auto k = fixture_complex("fig1.json");
    const HochsterTable t = hochster_decompose(*k, Ring::integers());
    REQUIRE(t.total.count(3));
    CHECK(t.total.at(3).free_rank == oracle::moment_angle_betti(*k, 0).at(3));
    CHECK(t.total.at(3).free_rank >= 3);
    // The three classes of the triple product live in J = {1,2}, {3,4}, {5,6}.
    std::size_t seen = 0;
    for (const auto& e : t.by_J)
        for (const auto& J : {std::vector<std::string>{"1", "2"}, {"3", "4"}, {"5", "6"}})
            if (e.J == k->vertex_set(J) && e.p == 0 && e.group.free_rank == 1)
                ++seen;
    CHECK(seen == 3);
}

TEST_CASE("property: Hochster groups equal the cellular oracle on random complexes")
{
    std::mt19937 rng(31);
    int failures = 0;
    for (int trial = 0; trial < 100; ++trial)
    {
        const SimplicialComplex k = random_complex(rng, 3 + static_cast<int>(rng() % 5));
        for (const Ring& ring : {Ring::integers(), Ring::prime_field(2)})
            failures += hochster_decompose(k, ring).total == moment_angle_cw_oracle(k, ring) ? 0 : 1;
    }
    CHECK(failures == 0);
}

TEST_CASE("torsion appears in the moment-angle complex of the projective plane")
{
    const auto k = fixture_complex("rp2/k1.json");
    const HochsterTable t = hochster_decompose(*k, Ring::integers());
    // H̃^2(K) = Z/2 contributes to degree 2 + 6 + 1 = 9.
    REQUIRE(t.total.count(9));
    CHECK(t.total.at(9).torsion == std::vector<Integer>{2});
    CHECK(t.total == moment_angle_cw_oracle(*k, Ring::integers()));
}

TEST_CASE("products of classes")
{
    const auto octa = make_complex(*fixture_complex("octahedron.json"));
    const Ring z = Ring::integers();
    const CohomologyClass a(Cochain::basis(octa, octa->vertex_set({"1", "2"}), octa->vertex_set({"1"}), z));
    const CohomologyClass b(Cochain::basis(octa, octa->vertex_set({"3", "4"}), octa->vertex_set({"3"}), z));
    const CohomologyClass ab = product_in_hochster(a, b);
    CHECK(ab.total_degree() == 6);
    CHECK(!ab.is_zero());
    const CohomologyClass one = unit_class(octa, z);
    CHECK(product_in_hochster(one, a).representative() == a.representative());
    CHECK(error_code([&] { CohomologyClass(Cochain::basis(octa, octa->vertex_set({"1", "3"}), octa->vertex_set({"1"}), z)); }) ==
          "NotACocycle");
    // Overlapping full subcomplexes multiply to zero.
    CHECK(product_in_hochster(a, a).is_zero());

    // In the six-vertex graph α1·α2 vanishes: that is what makes the triple product defined.
    const auto k = fixture_complex("fig1.json");
    const auto cls = fixture_classes(k, "fig1-classes.json", z);
    CHECK(product_in_hochster(cls[0], cls[1]).is_zero());
    CHECK(product_in_hochster(cls[1], cls[2]).is_zero());
}
