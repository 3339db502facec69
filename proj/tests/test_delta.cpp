#include <doctest.h>

#include "spinelab/delta.hpp"

using namespace spinelab;

TEST_SUITE_BEGIN("delta");

TEST_CASE("tuple complex of a point") {
    SimplicialComplex z;
    z.vertices = 1;
    z.maximal_faces = {{0}};
    auto c = delta_construction(z, 4);
    for (int d = 0; d <= 4; ++d) CHECK(c.cell_count(d) == 1);
    REQUIRE(verify_dd_zero(c));
    // truncation at an even top dimension computes point homology on the nose
    auto betti = betti_q(c);
    CHECK(betti == std::vector<long long>{1, 0, 0, 0, 0});
}

TEST_CASE("tuple counts over a single edge") {
    SimplicialComplex z;
    z.vertices = 2;
    z.maximal_faces = {{0, 1}};
    auto c = delta_construction(z, 2);
    CHECK(c.cell_count(0) == 2);
    CHECK(c.cell_count(1) == 4);  // (0,0),(0,1),(1,0),(1,1)
    CHECK(c.cell_count(2) == 8);
}

TEST_CASE("triangle boundary keeps its circle homology") {
    auto z = boundary_of_simplex(2);
    auto c = delta_construction(z, 3);
    REQUIRE(verify_dd_zero(c));
    auto betti = betti_q(c);
    CHECK(betti[0] == 1);
    CHECK(betti[1] == 1);
    CHECK(betti[2] == 0);
}

TEST_CASE("delta check on spheres and the projective plane") {
    CHECK(delta_homology_check(boundary_of_simplex(2), 2).equal);
    CHECK(delta_homology_check(boundary_of_simplex(3), 2).equal);
    auto res = delta_homology_check(projective_plane(), 2);
    CHECK(res.equal);
    CHECK(res.dims[1].torsion_delta == std::vector<Int>{Int(2)});
}

TEST_CASE("delta check on two disjoint points") {
    SimplicialComplex z;
    z.vertices = 2;
    z.maximal_faces = {{0}, {1}};
    auto res = delta_homology_check(z, 1);
    CHECK(res.equal);
    CHECK(res.dims[0].betti_z == 2);
    CHECK(res.dims[0].betti_delta == 2);
}

TEST_CASE("delta check on seeded random complexes") {
    for (std::uint64_t seed = 100; seed < 112; ++seed) {
        auto z = random_complex(seed);
        auto res = delta_homology_check(z, 2);
        INFO("seed ", seed);
        CHECK(res.equal);
    }
}

TEST_CASE("random complexes are valid and reproducible") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto a = random_complex(seed);
        auto b = random_complex(seed);
        CHECK(a.maximal_faces == b.maximal_faces);
        CHECK_NOTHROW(validate(a));
    }
}

TEST_SUITE_END();
