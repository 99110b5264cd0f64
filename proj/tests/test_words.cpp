#include <doctest.h>

#include "support.hpp"

#include <set>

using namespace bdrep;
using namespace bdrep::testing;

namespace {

std::set<Word> stems_at(const Alphabet& A, const CylinderUnion& U, int depth) {
    std::set<Word> s;
    for (const auto& c : refine_union(A, U, depth)) s.insert(c.stem);
    return s;
}

}  // namespace

TEST_SUITE("words") {
    TEST_CASE("alphabet parsing and formatting") {
        const Alphabet A = Alphabet::standard(2);
        CHECK(A.size() == 4);
        CHECK(A.format(A.parse("abAB")) == "abAB");
        CHECK(A.parse("e").empty());
        CHECK(A.parse("").empty());
        CHECK(A.parse("aA").empty());
        CHECK_THROWS_AS(A.parse("ax"), WordError);
        CHECK_THROWS_AS(Alphabet({"a", "b"}, {0, 1}), WordError);  // fixed points
    }

    TEST_CASE("free reduction examples") {
        const Alphabet A = Alphabet::standard(2);
        CHECK(multiply(A, A.parse("a"), A.parse("A")).empty());
        CHECK(multiply(A, A.parse("ab"), A.parse("BA")).empty());
        CHECK(A.format(multiply(A, A.parse("ab"), A.parse("Ba"))) == "aa");
    }

    TEST_CASE("multiplication is associative with inverses, exhaustively to length 3") {
        const Alphabet A = Alphabet::standard(2);
        const auto B = ball(A, 3);
        for (const auto& x : B) {
            CHECK(multiply(A, x, inverse(A, x)).empty());
            for (const auto& y : B) {
                const Word xy = multiply(A, x, y);
                CHECK(is_reduced(A, xy));
                CHECK(xy.size() + 0 >= (x.size() > y.size() ? x.size() - y.size() : y.size() - x.size()));
                for (const auto& z : ball(A, 1)) CHECK(multiply(A, xy, z) == multiply(A, x, multiply(A, y, z)));
            }
        }
    }

    TEST_CASE("multiplication is associative on random words up to length 8") {
        const Alphabet A = Alphabet::standard(3);
        std::mt19937_64 rng(1);
        for (int t = 0; t < 500; ++t) {
            const Word x = random_word(A, static_cast<int>(rng() % 9), rng);
            const Word y = random_word(A, static_cast<int>(rng() % 9), rng);
            const Word z = random_word(A, static_cast<int>(rng() % 9), rng);
            CHECK(multiply(A, multiply(A, x, y), z) == multiply(A, x, multiply(A, y, z)));
            CHECK(multiply(A, x, inverse(A, x)).empty());
        }
    }

    TEST_CASE("sphere sizes") {
        const Alphabet A = Alphabet::standard(2);
        CHECK(sphere(A, 0).size() == 1);
        CHECK(sphere(A, 0).front().empty());
        CHECK(sphere(A, 1).size() == 4);
        CHECK(sphere(A, 2).size() == 12);
        for (int rank : {2, 3})
            for (int r = 1; r <= 6; ++r) {
                const Alphabet X = Alphabet::standard(rank);
                const auto n = static_cast<std::uint64_t>(X.size() * std::pow(X.size() - 1, r - 1));
                CHECK(sphere_size(X, r) == n);
                const auto S = sphere(X, r);
                CHECK(S.size() == n);
                CHECK(std::set<Word>(S.begin(), S.end()).size() == n);
            }
    }

    TEST_CASE("sphere index round trip and streaming order") {
        const Alphabet A = Alphabet::standard(2);
        std::uint64_t i = 0;
        for_each_in_sphere(A, 4, [&](const Word& w) {
            CHECK(sphere_index(A, w) == i);
            CHECK(sphere_word(A, 4, i) == w);
            ++i;
        });
        CHECK(i == sphere_size(A, 4));
    }

    TEST_CASE("sphere cap is enforced") {
        const Alphabet A = Alphabet::standard(2);
        CHECK_THROWS_AS(sphere(A, 12, 1000), CapExceeded);
    }

    TEST_CASE("cylinder images") {
        const Alphabet A = Alphabet::standard(2);
        auto stems = [&](const CylinderUnion& U) {
            std::vector<std::string> s;
            for (const auto& c : U) s.push_back(A.format(c.stem));
            return s;
        };
        CHECK(stems(cylinder_image(A, A.parse("a"), {A.parse("b")})) == std::vector<std::string>{"ab"});
        CHECK(stems(cylinder_image(A, A.parse("a"), {A.parse("Ab")})) == std::vector<std::string>{"b"});
        CHECK(stems(cylinder_image(A, A.parse("a"), {A.parse("A")})) == std::vector<std::string>{"A", "b", "B"});
        // long stems map to a single part
        const auto U = cylinder_image(A, A.parse("ab"), {A.parse("BAb")});
        REQUIRE(U.size() == 1);
        CHECK(A.format(U[0].stem) == "b");
    }

    TEST_CASE("cylinder images compose") {
        const Alphabet A = Alphabet::standard(2);
        std::mt19937_64 rng(2);
        for (int t = 0; t < 200; ++t) {
            const Word x = random_word(A, static_cast<int>(rng() % 4), rng);
            const Word y = random_word(A, static_cast<int>(rng() % 4), rng);
            const Cylinder C{random_word(A, 1 + static_cast<int>(rng() % 3), rng)};
            CylinderUnion lhs;
            for (const auto& part : cylinder_image(A, y, C)) {
                const auto img = cylinder_image(A, x, part);
                lhs.insert(lhs.end(), img.begin(), img.end());
            }
            const auto rhs = cylinder_image(A, multiply(A, x, y), C);
            CHECK(is_disjoint(lhs));
            CHECK(is_disjoint(rhs));
            CHECK(stems_at(A, lhs, 9) == stems_at(A, rhs, 9));
        }
    }

    TEST_CASE("refinement") {
        const Alphabet A = Alphabet::standard(2);
        const auto R = refine(A, {A.parse("a")}, 2);
        std::vector<std::string> s;
        for (const auto& c : R) s.push_back(A.format(c.stem));
        CHECK(s == std::vector<std::string>{"aa", "ab", "aB"});
        CHECK(refine(A, {A.parse("a")}, 1).size() == 1);
        CHECK(refine(A, {A.parse("ab")}, 3).size() == 3);
        for (int d = 2; d <= 6; ++d) CHECK(refine(A, {A.parse("ab")}, d).size() == static_cast<std::size_t>(std::pow(3, d - 2)));
    }
}
