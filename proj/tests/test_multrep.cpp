#include <doctest.h>

#include "support.hpp"

#include <Eigen/Eigenvalues>

using namespace bdrep;
using namespace bdrep::testing;

namespace {

const Alphabet kA = Alphabet::standard(2);

MultVector load_vec(const SystemRef& sys, const std::string& name) { return vector_from_json(read_json_file(data_path(name)), sys); }

}  // namespace

TEST_SUITE("multrep") {
    TEST_CASE("deepening does not change the vector") {
        std::mt19937_64 rng(10);
        const SystemRef sys = load_inner("random-rank2.json");
        const MultVector f = random_vector(sys, 1, rng), g = random_vector(sys, 2, rng);
        const MultVector f3 = deepen(f, 3);
        CHECK(f3.depth() == 3);
        for (const Word& w : sphere(kA, 4)) CHECK((f3.eval(w) - f.eval(w)).norm() <= 1e-14);
        CHECK(std::abs(inner(f, g) - inner(f3, g)) <= 1e-12);
        CHECK(std::abs(inner(f, g) - inner_at(f, g, 5)) <= 1e-12);
        CHECK(std::abs(inner(f, g) - std::conj(inner(g, f))) <= 1e-12);
        CHECK_THROWS(deepen(f3, 2));
    }

    TEST_CASE("letter vectors and evaluation along cones") {
        const SystemRef sph = spherical_inner(kA);
        const MultVector f = seed_at(sph, 0);
        const double h = 1 / std::sqrt(3.0);
        CHECK(std::abs(f.eval(kA.parse("a"))(0) - 1.0) <= 1e-15);
        CHECK(std::abs(f.eval(kA.parse("ab"))(0) - h) <= 1e-15);
        CHECK(std::abs(f.eval(kA.parse("abA"))(0) - h * h) <= 1e-15);
        CHECK(std::abs(f.eval(kA.parse("b"))(0)) == 0.0);
        CHECK(std::abs(norm(f) - 1.0) <= 1e-14);
    }

    TEST_CASE("spherical coefficients against the oracle") {
        const SystemRef sph = load_inner("spherical.json");
        const MultVector f = load_vec(sph, "spherical-vector.json");
        for (const auto& [w, v] : oracle()["spherical_coefficients"].items()) {
            const Word x = kA.parse(w);
            CHECK(std::abs(coefficient_fast(x, f, f) - oracle_cplx(v)) <= 1e-12);
            CHECK(std::abs(coefficient_brute(x, f, f) - oracle_cplx(v)) <= 1e-12);
        }
    }

    TEST_CASE("random-system coefficients against the oracle") {
        const SystemRef sys = load_inner("random-rank2.json");
        const MultVector f = load_vec(sys, "random-vector.json");
        for (const auto& [w, v] : oracle()["random_coefficients"].items()) {
            const Word x = kA.parse(w);
            CHECK(std::abs(coefficient_fast(x, f, f) - oracle_cplx(v)) <= 1e-10);
            CHECK(std::abs(coefficient_brute(x, f, f) - oracle_cplx(v)) <= 1e-10);
        }
    }

    TEST_CASE("fast and brute backends agree") {
        std::mt19937_64 rng(11);
        for (int t = 0; t < 40; ++t) {
            const SystemRef sys = normalized_inner(random_system(kA, 3, rng));
            const MultVector f = random_vector(sys, 1 + static_cast<int>(rng() % 2), rng);
            const MultVector g = random_vector(sys, 1 + static_cast<int>(rng() % 2), rng);
            const Word x = random_word(kA, static_cast<int>(rng() % 5), rng);
            const cplx fast = coefficient_fast(x, f, g), brute = coefficient_brute(x, f, g);
            CHECK(std::abs(fast - brute) <= 1e-10 * std::max(1.0, std::abs(brute)));
            // deeper brute radius gives the same sum
            const int r = admissible_radius(x, f, g);
            CHECK(std::abs(coefficient_brute(x, f, g, {}, r + 1) - brute) <= 1e-10 * std::max(1.0, std::abs(brute)));
            CHECK(std::abs(coefficient_fast(x, deepen(f, 3), g) - fast) <= 1e-10 * std::max(1.0, std::abs(fast)));
        }
    }

    TEST_CASE("the action is unitary and multiplicative") {
        std::mt19937_64 rng(12);
        const SystemRef sys = load_inner("random-rank2.json");
        for (int t = 0; t < 20; ++t) {
            const MultVector f = random_vector(sys, 1, rng), g = random_vector(sys, 2, rng);
            const Word x = random_word(kA, 1 + static_cast<int>(rng() % 3), rng);
            const Word y = random_word(kA, 1 + static_cast<int>(rng() % 3), rng);
            CHECK(std::abs(inner(act(x, f), act(x, g)) - inner(f, g)) <= 1e-10);
            CHECK(std::abs(inner(act(x, act(y, f)), g) - inner(act(multiply(kA, x, y), f), g)) <= 1e-10);
            CHECK(std::abs(inner(act(x, f), g) - coefficient_fast(x, f, g)) <= 1e-10);
            const MultVector back = act(inverse(kA, x), act(x, f));
            CHECK(norm(combine(1.0, back, -1.0, f)) <= 1e-10);
        }
    }

    TEST_CASE("coefficient functions are positive definite") {
        std::mt19937_64 rng(13);
        const auto words = ball(kA, 2);
        for (int t = 0; t < 10; ++t) {
            const SystemRef sys = normalized_inner(random_system(kA, 3, rng));
            const MultVector f = random_vector(sys, 1, rng);
            const auto n = static_cast<Eigen::Index>(words.size());
            Mat G(n, n);
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j < n; ++j) {
                    const Word x = multiply(kA, inverse(kA, words[static_cast<std::size_t>(j)]), words[static_cast<std::size_t>(i)]);
                    G(j, i) = coefficient_fast(x, f, f);
                }
            CHECK(max_abs(G - G.adjoint()) <= 1e-10);
            CHECK(min_eigenvalue(hermitian_part(G)) >= -1e-9 * G.norm());
        }
    }

    TEST_CASE("cylinder operators are orthogonal projections summing to one") {
        std::mt19937_64 rng(14);
        const SystemRef sys = load_inner("random-rank2.json");
        const MultVector f = random_vector(sys, 2, rng), g = random_vector(sys, 1, rng);
        MultVector sum(sys, 1);
        for (Letter a = 0; a < 4; ++a) {
            const Word z{a};
            const MultVector p = cylinder_op(z, f);
            CHECK(norm(combine(1.0, cylinder_op(z, p), -1.0, p)) <= 1e-13);
            CHECK(std::abs(inner(p, g) - inner(f, cylinder_op(z, g))) <= 1e-12);
            sum = combine(1.0, sum, 1.0, p);
        }
        CHECK(norm(combine(1.0, sum, -1.0, f)) <= 1e-13);
        // refinement: the two-letter cylinders under a partition ∂Γ(a)
        MultVector part(sys, 2);
        for (const Cylinder& C : refine(kA, Cylinder{{0}}, 2)) part = combine(1.0, part, 1.0, cylinder_op(C.stem, f));
        CHECK(norm(combine(1.0, part, -1.0, cylinder_op({0}, f))) <= 1e-13);
        CHECK_THROWS_AS(cylinder_op({}, f), WordError);
    }

    TEST_CASE("boundary covariance") {
        std::mt19937_64 rng(15);
        const SystemRef sys = load_inner("random-rank2.json");
        int multi = 0;
        for (int t = 0; t < 40; ++t) {
            const MultVector f = random_vector(sys, 1, rng);
            const Word x = random_word(kA, 1 + static_cast<int>(rng() % 3), rng);
            const Word z = random_word(kA, 1 + static_cast<int>(rng() % 2), rng);
            if (cylinder_image(kA, x, Cylinder{z}).size() > 1) ++multi;
            CHECK(covariance_check(x, z, f) <= 1e-10);
        }
        CHECK(multi > 0);
    }

    TEST_CASE("crossed-product elements") {
        std::mt19937_64 rng(16);
        const SystemRef sys = load_inner("random-rank2.json");
        const MultVector f = random_vector(sys, 1, rng);
        const Word x = kA.parse("ab"), z = kA.parse("a");
        CrossedElement E{{{cplx(2.0, 1.0), std::nullopt, x}, {cplx(-1.0, 0.0), z, {}}}};
        const MultVector lhs = apply_crossed(E, f);
        const MultVector rhs = combine(cplx(2.0, 1.0), act(x, f), -1.0, cylinder_op(z, f));
        CHECK(norm(combine(1.0, lhs, -1.0, rhs)) <= 1e-12);
        CHECK(norm(apply_crossed(CrossedElement{}, f)) == 0.0);
    }

    TEST_CASE("substitution and precomposition") {
        const std::vector<Word> swap{kA.parse("b"), kA.parse("B"), kA.parse("a"), kA.parse("A")};
        CHECK(substitute(kA, swap, kA.parse("aBA")) == kA.parse("bAB"));
        const std::vector<Word> shear{kA.parse("ab"), kA.parse("BA"), kA.parse("b"), kA.parse("B")};
        CHECK(substitute(kA, shear, kA.parse("aB")) == kA.parse("a"));
        CHECK(substitute(kA, shear, kA.parse("A")) == kA.parse("BA"));
        CHECK_THROWS_AS(substitute(kA, {kA.parse("a")}, kA.parse("a")), ValidationError);

        // the spherical system is invariant under letter permutations
        const SystemRef sph = spherical_inner(kA);
        MultVector f = letter_vector(sph, {{0, Vec::Ones(1)}, {2, Vec::Ones(1)}});
        const CoefficientFn phi = [&](const Word& w) { return coefficient_fast(w, f, f); };
        const CoefficientFn psi = precompose(phi, kA, swap);
        std::mt19937_64 rng(17);
        for (int t = 0; t < 20; ++t) {
            const Word w = random_word(kA, static_cast<int>(rng() % 6), rng);
            CHECK(std::abs(psi(w) - phi(substitute(kA, swap, w))) == 0.0);
            CHECK(std::abs(psi(w) - phi(w)) <= 1e-12);
        }
    }

    TEST_CASE("exact spherical coefficient") {
        const LoadedSystem L = system_from_json(read_json_file(data_path("spherical.json")));
        REQUIRE(L.exact.has_value());
        CHECK(exactly_compatible(*L.exact));
        const ExactVector f = exact_vector_from_json(read_json_file(data_path("spherical-vector.json")), *L.exact);
        const Quad c = exact_coefficient(*L.exact, kA.parse("a"), f, f);
        CHECK(c.str() == "1/3*sqrt(3)");
        CHECK((c * c) == Quad::rational(mpq_class(1, 3), 3));
        CHECK(std::abs(c.to_double() - 1 / std::sqrt(3.0)) <= 1e-15);
        CHECK(exact_coefficient(*L.exact, kA.parse("aa"), f, f) == Quad::rational(mpq_class(1, 3), 3));
        CHECK(exact_coefficient(*L.exact, kA.parse("b"), f, f).is_zero());
        CHECK(exact_coefficient(*L.exact, {}, f, f) == Quad::rational(1, 3));
    }

    TEST_CASE("quadratic field arithmetic") {
        const Quad x = Quad::parse("1/2+3*sqrt(5)", 5), y = Quad::parse("-1/2", 5);
        CHECK((x + y).str() == "3*sqrt(5)");
        CHECK((x * x).rational_part() == mpq_class(181, 4));
        CHECK((x * x).radical_part() == 3);
        CHECK(Quad::parse("sqrt(5)", 5) * Quad::parse("sqrt(5)", 5) == Quad::rational(5, 5));
        CHECK_THROWS_AS(Quad::parse("sqrt(7)", 5), ExactError);
    }

    TEST_CASE("brute sums do not depend on the thread count") {
        std::mt19937_64 rng(18);
        const SystemRef sys = load_inner("random-rank2.json");
        const MultVector f = random_vector(sys, 2, rng);
        const Word x = kA.parse("abAAb");
        const cplx one = coefficient_brute(x, f, f, EvalOptions{kDefaultSphereCap, 1});
        for (int threads : {2, 3, 8}) CHECK(coefficient_brute(x, f, f, EvalOptions{kDefaultSphereCap, threads}) == one);
    }

    TEST_CASE("the sphere cap is enforced with a useful message") {
        const SystemRef sph = spherical_inner(kA);
        const MultVector f = seed_at(sph, 0);
        try {
            (void)coefficient_brute(kA.parse("abababab"), f, f, EvalOptions{1000, 1});
            FAIL("expected CapExceeded");
        } catch (const CapExceeded& e) {
            CHECK(std::string(e.what()).find("abababab") != std::string::npos);
        }
        CHECK(std::abs(coefficient_fast(kA.parse("abababab"), f, f)) >= 0.0);
    }
}
