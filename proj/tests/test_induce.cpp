#include <doctest.h>

#include "support.hpp"

using namespace bdrep;
using namespace bdrep::testing;

namespace {

const Alphabet kA = Alphabet::standard(2);

std::shared_ptr<const SchreierData> schreier_of(const std::string& file) {
    return std::make_shared<const SchreierData>(
        schreier(kA, coset_table_from_quotient(kA, quotient_from_json(read_json_file(data_path(file)), kA))));
}

SystemRef sub_system(const std::string& file, const SchreierData& S) {
    const LoadedSystem L = relabel(system_from_json(read_json_file(data_path(file))), S.sub_alphabet);
    return std::make_shared<const InnerSystem>(InnerSystem{L.system, *L.forms});
}

IndVector unit(IndVector F) {
    const double n = std::sqrt(ind_inner(F, F).real());
    for (auto& b : F.blocks) b = scale(1.0 / n, b);
    return F;
}

double dist(const MultVector& x, const MultVector& y) { return norm(combine(1.0, x, -1.0, y)); }

// J is an isometric intertwiner that carries boundary operators to cylinder operators.
void check_intertwiner(const std::shared_ptr<const SchreierData>& S, const SystemRef& sub, int trials, std::uint64_t seed) {
    const InducedSystem ind = induce_system(*sub, *S);
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        const IndVector F = unit(ind_random(S, sub, 1 + t % 2, rng));
        const IndVector G = unit(ind_random(S, sub, 1, rng));
        const MultVector JF = intertwiner_J_auto(F, ind), JG = intertwiner_J_auto(G, ind);
        CHECK(std::abs(inner(JF, JG) - ind_inner(F, G)) <= 1e-10);
        const Word x = random_word(kA, 1 + static_cast<int>(rng() % 3), rng);
        CHECK(dist(intertwiner_J_auto(ind_act(x, F), ind), act(x, JF)) <= 1e-10);
        CHECK(std::abs(ind_coefficient(x, F, G) - coefficient_fast(x, JF, JG)) <= 1e-9);
        CHECK(std::abs(ind_coefficient(x, F, G, Backend::Brute) - ind_coefficient(x, F, G)) <= 1e-10);
        const Word y = random_word(kA, 1 + static_cast<int>(rng() % 2), rng);
        CHECK(dist(intertwiner_J_auto(ind_boundary_op(y, F), ind), cylinder_op(y, JF)) <= 1e-10);
    }
}

}  // namespace

TEST_SUITE("induce") {
    TEST_CASE("index-2 induction of the rank-3 spherical system") {
        const auto S = schreier_of("index2.json");
        const SystemRef sub = sub_system("rank3-spherical.json", *S);
        const InducedSystem ind = induce_system(*sub, *S);
        const MatrixSystem& IS = ind.system->system;
        CHECK(IS.dims() == std::vector<int>{4, 4, 2, 2});
        CHECK(IS.total_dim() == 12);
        CHECK(validate(IS).empty());
        CHECK(compatibility_residual(IS, ind.system->forms) <= 1e-9);
        for (Letter a = 0; a < 4; ++a) {
            const auto& offs = ind.layout.offsets[static_cast<std::size_t>(a)];
            CHECK(offs.size() == ind.layout.pairs[static_cast<std::size_t>(a)].size());
            CHECK(offs.front() == 0);
        }
    }

    TEST_CASE("index 1 returns the original system") {
        const auto S = schreier_of("index1.json");
        const SystemRef sub = sub_system("spherical.json", *S);
        const InducedSystem ind = induce_system(*sub, *S);
        const LoadedSystem base = system_from_json(read_json_file(data_path("spherical.json")));
        for (Letter b = 0; b < 4; ++b)
            for (Letter a = 0; a < 4; ++a) CHECK(max_abs(ind.system->system.map(b, a) - base.system.map(b, a)) <= 1e-15);
    }

    TEST_CASE("the intertwiner for index 2") {
        const auto S = schreier_of("index2.json");
        check_intertwiner(S, sub_system("rank3-spherical.json", *S), 6, 30);
        std::mt19937_64 rng(31);
        check_intertwiner(S, normalized_inner(random_system(S->sub_alphabet, 2, rng)), 4, 32);
    }

    TEST_CASE("the intertwiner for index 3") {
        const auto S = schreier_of("index3.json");
        std::mt19937_64 rng(33);
        const SystemRef sub = normalized_inner(random_system(S->sub_alphabet, 1, rng));
        const InducedSystem ind = induce_system(*sub, *S);
        CHECK(ind.system->system.total_dim() == 3 * sub->system.total_dim());
        CHECK(compatibility_residual(ind.system->system, ind.system->forms) <= 1e-9);
        check_intertwiner(S, sub, 3, 34);
    }

    TEST_CASE("induced vectors supported on one coset") {
        const auto S = schreier_of("index2.json");
        const SystemRef sub = sub_system("rank3-spherical.json", *S);
        std::mt19937_64 rng(35);
        const MultVector block = random_vector(sub, 1, rng);
        const IndVector F = ind_vector(S, sub, 1, block);
        CHECK(std::abs(ind_inner(F, F) - inner(block, block)) <= 1e-12);
        CHECK(F.blocks[0].is_zero());
        // moving by a letter that changes the coset lands on the other block
        const IndVector G = ind_act(kA.parse("a"), F);
        CHECK(G.blocks[1].is_zero(1e-14));
        CHECK(std::abs(ind_inner(G, G) - ind_inner(F, F)) <= 1e-12);
    }

    TEST_CASE("induced layout JSON lists every block") {
        const auto S = schreier_of("index2.json");
        const json j = schreier_to_json(*S);
        CHECK(j["index"] == 2);
        CHECK(j["generators"].size() == 6);
        CHECK(j["transversal"][0] == "e");
    }

    TEST_CASE("virtually free groups: normal forms") {
        const VFDatum D = psl2z_datum();
        const VFGroup& G = D.group;
        const VFWord s = vf_generator(G, 0), r = vf_generator(G, 1);
        CHECK(vf_multiply(G, s, s).empty());
        CHECK(vf_multiply(G, r, vf_multiply(G, r, r)).empty());
        CHECK(vf_format(G, vf_parse(G, "sr^-1")) == vf_format(G, vf_parse(G, "sr^2")));
        CHECK(vf_length(G, vf_parse(G, "sr^2")) == 2);
        const VFWord x = vf_parse(G, "srsr^2s");
        CHECK(vf_multiply(G, x, vf_inverse(G, x)).empty());
        CHECK(vf_ball(G, 1).size() == 4);  // e, s, r, r^2
        CHECK_THROWS_AS(vf_parse(G, "q"), VFError);
    }

    TEST_CASE("virtually free groups: data validation") {
        const VFDatum D = psl2z_datum();
        CHECK(D.index() == 6);
        CHECK(D.rank() == 2);
        CHECK(vf_validate(D).empty());

        const VFDatum T = vf_from_json(read_json_file(data_path("psl2z-table.json")));
        CHECK(vf_validate(T).empty());
        CHECK(T.next == D.next);
        CHECK(T.cocycle == D.cocycle);

        VFDatum bad = D;
        bad.cocycle[3] = multiply(bad.free_alphabet, bad.cocycle[3], bad.free_alphabet.parse("a"));
        CHECK(!vf_validate(bad).empty());

        const VFDatum dihedral = vf_from_json(read_json_file(data_path("infinite-dihedral.json")));
        const auto issues = vf_validate(dihedral);
        REQUIRE(!issues.empty());
        CHECK(issues.front().find("rank") != std::string::npos);

        const VFDatum round = vf_from_json(vf_to_json(D));
        CHECK(round.next == D.next);
        CHECK(round.cocycle == D.cocycle);
    }

    TEST_CASE("virtually free groups: induced coefficients") {
        const VFDatum D = psl2z_datum();
        const SystemRef s0 = spherical_inner(D.free_alphabet);
        std::mt19937_64 rng(36);
        std::vector<MultVector> F;
        for (int t = 0; t < D.index(); ++t) F.push_back(random_vector(s0, 1, rng));
        cplx total = 0.0;
        for (const auto& b : F) total += inner(b, b);
        CHECK(std::abs(vf_coefficient(D, {}, F, F) - total) <= 1e-12);

        // a positive-definite function on Λ
        const auto ballL = vf_ball(D.group, 3);
        const auto n = static_cast<Eigen::Index>(ballL.size());
        Mat G(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index k = 0; k < n; ++k)
                G(i, k) = vf_coefficient(
                    D, vf_multiply(D.group, vf_inverse(D.group, ballL[static_cast<std::size_t>(i)]), ballL[static_cast<std::size_t>(k)]),
                    F, F);
        CHECK(max_abs(G - G.adjoint()) <= 1e-10);
        CHECK(min_eigenvalue(hermitian_part(G)) >= -1e-9);

        // a vector on the identity coset only: free-subgroup elements act through the system itself
        std::vector<MultVector> E(static_cast<std::size_t>(D.index()), MultVector(s0, 1));
        E[0] = random_vector(s0, 1, rng);
        for (int t = 0; t < 30; ++t) {
            const Word w = random_word(D.free_alphabet, 1 + static_cast<int>(rng() % 4), rng);
            CHECK(std::abs(vf_coefficient(D, vf_expand(D, w), E, E) - coefficient_fast(w, E[0], E[0])) <= 1e-12);
        }
        for (int i = 0; i < D.group.factors(); ++i) {
            REQUIRE(D.next[static_cast<std::size_t>(i)] != 0);
            CHECK(std::abs(vf_coefficient(D, vf_generator(D.group, i), E, E)) <= 1e-14);
        }
        CHECK_THROWS_AS(vf_coefficient(D, {}, {E[0]}, E), VFError);
    }

    TEST_CASE("routing respects products") {
        const VFDatum D = psl2z_datum();
        std::mt19937_64 rng(37);
        const auto ballL = vf_ball(D.group, 4);
        for (int k = 0; k < 100; ++k) {
            const VFWord& x = ballL[rng() % ballL.size()];
            const VFWord& y = ballL[rng() % ballL.size()];
            const int t = static_cast<int>(rng() % 6);
            const auto [t1, w1] = vf_route(D, t, x);
            const auto [t2, w2] = vf_route(D, t1, y);
            const auto [t3, w3] = vf_route(D, t, vf_multiply(D.group, x, y));
            CHECK(t3 == t2);
            CHECK(w3 == multiply(D.free_alphabet, w1, w2));
        }
    }
}
