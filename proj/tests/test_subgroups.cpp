#include <doctest.h>

#include "support.hpp"

#include <set>

using namespace bdrep;
using namespace bdrep::testing;

namespace {

const Alphabet kA = Alphabet::standard(2);

SchreierData schreier_of(const std::string& file) {
    return schreier(kA, coset_table_from_quotient(kA, quotient_from_json(read_json_file(data_path(file)), kA)));
}

std::vector<std::string> formatted(const std::vector<Word>& ws) {
    std::vector<std::string> out;
    for (const Word& w : ws) out.push_back(kA.format(w));
    return out;
}

void check_against_oracle(const SchreierData& S, const json& ref) {
    CHECK(formatted(S.transversal) == ref["transversal"].get<std::vector<std::string>>());
    const auto gens = formatted(S.generators);
    CHECK(std::set<std::string>(gens.begin(), gens.end()) ==
          ref["generators"].get<std::set<std::string>>());
    for (Letter a = 0; a < 4; ++a) {
        CHECK(formatted(S.P[static_cast<std::size_t>(a)]) == ref["P"][kA.name(a)].get<std::vector<std::string>>());
        CHECK(static_cast<int>(S.pairs[static_cast<std::size_t>(a)].size()) == ref["pair_counts"][kA.name(a)].get<int>());
    }
}

}  // namespace

TEST_SUITE("subgroups") {
    TEST_CASE("finite groups") {
        const FiniteGroup Z6 = FiniteGroup::cyclic_product({2, 3});
        CHECK(Z6.order() == 6);
        const int x = FiniteGroup::cyclic_element({2, 3}, {1, 2});
        CHECK(x == 5);
        CHECK(Z6.mul(x, Z6.inv(x)) == 0);
        CHECK_THROWS_AS(FiniteGroup(2, {0, 1, 1, 1}), SubgroupError);
        CHECK_THROWS_AS(FiniteGroup::cyclic_element({2, 3}, {1}), SubgroupError);
        // S3 as a table: not commutative but valid
        const std::vector<int> s3{0, 1, 2, 3, 4, 5, 1, 0, 3, 2, 5, 4, 2, 4, 0, 5, 1, 3,
                                  3, 5, 1, 4, 0, 2, 4, 2, 5, 0, 3, 1, 5, 3, 4, 1, 2, 0};
        const FiniteGroup S3(6, s3);
        CHECK(S3.mul(1, 2) != S3.mul(2, 1));
    }

    TEST_CASE("coset tables") {
        const CosetTable T = coset_table_from_quotient(kA, QuotientSpec{FiniteGroup::cyclic_product({3}), {1, 2, 0, 0}, {}});
        CHECK(T.index == 3);
        CHECK(T.walk(kA.parse("aaa")) == 0);
        CHECK(T.walk(kA.parse("ab")) == T.walk(kA.parse("a")));
        CHECK(T.walk(kA.parse("A")) == T.walk(kA.parse("aa")));
        // a subgroup K of the quotient: preimage has index |Q|/|K|
        const CosetTable U =
            coset_table_from_quotient(kA, QuotientSpec{FiniteGroup::cyclic_product({2, 2}), {1, 1, 2, 2}, {0, 3}});
        CHECK(U.index == 2);
        CHECK_THROWS_AS(coset_table_from_quotient(kA, QuotientSpec{FiniteGroup::cyclic_product({3}), {1, 1, 0, 0}, {}}),
                        SubgroupError);
        CHECK_THROWS_AS(coset_table_from_quotient(kA, QuotientSpec{FiniteGroup::cyclic_product({3}), {1, 2, 0, 0}, {1}}),
                        SubgroupError);
    }

    TEST_CASE("index-2 Schreier data against the enumeration oracle") {
        check_against_oracle(schreier_of("index2.json"), oracle()["index2_a"]);
        check_against_oracle(schreier_of("index2-b.json"), oracle()["index2_b"]);
    }

    TEST_CASE("index 1 reproduces the base group") {
        const SchreierData S = schreier_of("index1.json");
        CHECK(S.index() == 1);
        CHECK(S.generators.size() == 4);
        CHECK(check_schreier(S).empty());
        for (Letter a = 0; a < 4; ++a) CHECK(S.P[static_cast<std::size_t>(a)] == std::vector<Word>{Word{a}});
    }

    TEST_CASE("rank formula and consistency for several quotients") {
        for (const char* file : {"index1.json", "index2.json", "index2-b.json", "index3.json"}) {
            const SchreierData S = schreier_of(file);
            INFO(file);
            CHECK(check_schreier(S).empty());
            CHECK(S.sub_alphabet.rank() == 1 + S.index() * (kA.rank() - 1));
            CHECK(static_cast<int>(S.transversal.size()) == S.index());
            // prefix closed and every representative lands in its own coset
            for (int c = 0; c < S.index(); ++c) {
                const Word& u = S.rep(c);
                CHECK(S.table.walk(u) == c);
                if (!u.empty()) CHECK(coset_of(S, Word(u.begin(), u.end() - 1)) >= 0);
            }
            // every generator lies in the subgroup
            for (const Word& g : S.generators) CHECK(coset_of(S, g) == 0);
        }
    }

    TEST_CASE("rewriting round trip") {
        std::mt19937_64 rng(20);
        for (const char* file : {"index2.json", "index3.json"}) {
            const SchreierData S = schreier_of(file);
            int in_subgroup = 0;
            for (int t = 0; t < 200; ++t) {
                Word w = random_word(kA, static_cast<int>(rng() % 9), rng);
                // move w into the subgroup by appending the inverse representative
                w = multiply(kA, w, inverse(kA, S.rep(coset_of(S, w))));
                REQUIRE(coset_of(S, w) == 0);
                ++in_subgroup;
                const Word v = rewrite_to_subgroup(S, w);
                CHECK(is_reduced(S.sub_alphabet, v));
                CHECK(expand(S, v) == w);
            }
            CHECK(in_subgroup == 200);
            CHECK_THROWS_AS(rewrite_to_subgroup(S, kA.parse("a")), SubgroupError);
        }
    }

    TEST_CASE("pairs determine the words that start with their letter") {
        const SchreierData S = schreier_of("index3.json");
        for (Letter a = 0; a < 4; ++a)
            for (const LayoutPair& p : S.pairs[static_cast<std::size_t>(a)]) {
                REQUIRE(!p.word.empty());
                CHECK(p.word.front() == a);
                const Word expect = reduce(kA, multiply(kA, inverse(kA, S.rep(p.coset)),
                                                        S.generators[static_cast<std::size_t>(p.gen)]));
                CHECK(p.word == expect);
            }
    }

    TEST_CASE("malformed quotient files") {
        json j = read_json_file(data_path("index2.json"));
        j["quotient"]["images"]["a"] = 5;  // integers are read modulo a single cyclic order
        CHECK(quotient_from_json(j, kA).images[0] == 1);
        j["quotient"]["order-data"] = {2, 2};
        j["quotient"]["images"]["a"] = 7;
        CHECK_THROWS_AS(quotient_from_json(j, kA), ParseError);
        j["quotient"]["images"]["a"] = {1, 1, 1};
        CHECK_THROWS_AS(quotient_from_json(j, kA), ParseError);
        json k = read_json_file(data_path("index2.json"));
        k["quotient"]["order-data"] = "two";
        CHECK_THROWS_AS(quotient_from_json(k, kA), ParseError);
        json m = read_json_file(data_path("index2.json"));
        m["quotient"]["images"].erase("a");
        m["quotient"]["images"].erase("A");
        CHECK_THROWS_AS(quotient_from_json(m, kA), ParseError);
    }
}
