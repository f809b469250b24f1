#include <doctest.h>

#include <cmath>

#include "fbl/embedding.hpp"
#include "fbl/errors.hpp"
#include "fbl/norm.hpp"
#include "fbl/random.hpp"
#include "fbl/sampling.hpp"

using namespace fbl;

namespace {

SparseFunctional e(std::uint32_t k, double v = 1.0) {
    return SparseFunctional::coordinate(Ambient::dual(), GeneratorId(k), v);
}

SearchOptions small_budget(std::uint64_t seed = 0) {
    SearchOptions o;
    o.budget = {8, 200, 4};
    o.seed = seed;
    return o;
}

}  // namespace

TEST_CASE("certified lower bounds from witnesses") {
    const ParamConfig cfg;
    CHECK(norm_lower_bound(to_evaluator(gen(1), Space::dual), make_witness({e(1)})) == 1.0);
    CHECK(norm_lower_bound(f_evaluator(1, cfg) + f_evaluator(2, cfg), make_witness({e(1, 0.5), e(2, 0.5)})) == 1.0);

    const SubsetGenerator a{1, 4};
    const auto delta = to_evaluator(gen(a), Space::cube);
    const auto w = make_witness({SparseFunctional::coordinate(Ambient::cube(KeyKind::subset), GeneratorId(a))});
    CHECK(norm_lower_bound(delta, w) == 1.0);
    CHECK(norm_lower_bound(delta, WitnessTuple{}) == 0.0);
}

TEST_CASE("inadmissible witnesses are rejected with their supremum") {
    const auto f = to_evaluator(gen(1) + gen(2), Space::dual);
    try {
        norm_lower_bound(f, make_witness({e(1), e(2)}));
        FAIL("expected inadmissible_witness");
    } catch (const inadmissible_witness& err) {
        CHECK(err.dual_ball_sup() == 2.0);
    }
    auto w = make_witness({e(1, 0.5)});
    w.mode = AdmissibilityMode::stochastic_lower;
    CHECK_THROWS_AS(norm_lower_bound(f, w), inadmissible_witness);
    // within tolerance is accepted
    CHECK(norm_lower_bound(f, make_witness({e(1, 0.5 + 1e-12), e(2, 0.5)})) == doctest::Approx(1.0));
}

TEST_CASE("search on trivial and single-generator evaluators") {
    CHECK(norm_search(zero_evaluator(Ambient::dual())).lower_bound == 0.0);
    CHECK(norm_search(to_evaluator(scale(0.0, gen(1)), Space::dual), small_budget()).lower_bound == 0.0);

    const auto est = norm_search(to_evaluator(gen(1), Space::dual));
    CHECK(est.lower_bound >= 1.0 - 1e-12);
    CHECK(est.lower_bound <= 1.0 + 1e-9);
    CHECK(est.evaluations_used > 0);
}

TEST_CASE("search on a sum of four members reaches one and stays there") {
    const ParamConfig cfg;
    Evaluator total = f_evaluator(1, cfg);
    for (std::uint32_t i = 2; i <= 4; ++i) total = total + f_evaluator(i, cfg);
    const auto est = norm_search(total);
    CHECK(est.lower_bound >= 1.0 - 1e-9);
    CHECK(est.lower_bound <= 1.0 + 1e-9);
}

TEST_CASE("search results are reproducible from the witness and independent of threads") {
    Rng rng = make_stream(31, {1});
    const auto ids = index_range(1, 3);
    for (int t = 0; t < 10; ++t) {
        const auto f = to_evaluator(random_expr(ids, 5, rng), Space::dual);
        auto one = small_budget(t);
        one.threads = 1;
        auto many = one;
        many.threads = 3;
        const auto a = norm_search(f, one);
        const auto b = norm_search(f, many);
        CHECK(a.lower_bound == b.lower_bound);
        CHECK(fingerprint(a.best_witness) == fingerprint(b.best_witness));
        CHECK(a.evaluations_used == b.evaluations_used);
        CHECK(norm_lower_bound(f, a.best_witness) == a.lower_bound);
    }
}

TEST_CASE("search is at least every coordinate seed") {
    Rng rng = make_stream(31, {2});
    const auto ids = index_range(1, 3);
    for (int t = 0; t < 10; ++t) {
        const auto f = to_evaluator(random_expr(ids, 5, rng), Space::dual);
        const auto est = norm_search(f, small_budget(t));
        for (std::uint32_t k = 1; k <= 3; ++k)
            for (double s : {1.0, -1.0}) CHECK(est.lower_bound >= std::fabs(f(e(k, s))) * (1 - 1e-12));
    }
}

TEST_CASE("search refuses supports above the enumeration limit") {
    auto options = small_budget();
    options.enumeration_limit = 3;
    CHECK_THROWS_AS(norm_search(to_evaluator(gen(1) + gen(2) + gen(3) + gen(4), Space::dual), options),
                    enumeration_limit_exceeded);
    options = small_budget();
    options.extra_coordinates = {GeneratorId(SubsetGenerator{1})};
    CHECK_THROWS_AS(norm_search(to_evaluator(gen(1), Space::dual), options), domain_error);
}

TEST_CASE("fingerprints ignore row order and round to twelve decimals") {
    const auto a = make_witness({e(1, 0.5), e(2, 0.25)});
    const auto b = make_witness({e(2, 0.25), e(1, 0.5)});
    const auto c = make_witness({e(2, 0.25 + 1e-15), e(1, 0.5)});
    CHECK(fingerprint(a) == fingerprint(b));
    CHECK(fingerprint(a) == fingerprint(c));
    CHECK(fingerprint(a) != fingerprint(make_witness({e(1, 0.5), e(2, 0.2)})));
}

TEST_CASE("dominance sampling") {
    const ParamConfig cfg;
    for (std::uint32_t n = 1; n <= 4; ++n) {
        const auto rep =
            dominance_upper_bound(f_evaluator(n, cfg), abs(to_evaluator(gen(n), Space::dual)), 1.0, 20000, n);
        CHECK_FALSE(rep.violated);
        CHECK(rep.samples_checked == 20000);
        CHECK(rep.label == "sampled, not proven");
        REQUIRE(rep.certificate());
        CHECK(rep.certificate()->kind == CertificateKind::dominance);
        CHECK(rep.asserted_bound == 1.0);
    }

    // The norm bound of h_k - f_n does not come from a pointwise one.
    const std::uint32_t n = 1, k = 1;
    const double c = 1.0 / (cfg.n_seq(n + k) - 1.0);
    const auto fake = c * abs(to_evaluator(gen(n), Space::dual));
    const auto rep = dominance_upper_bound(h_evaluator(n, k, cfg) - f_evaluator(n, cfg), fake, c, 100000, 5);
    CHECK(rep.violated);
    REQUIRE(rep.violation);
    CHECK(rep.violation->f_value > rep.violation->g_value);
    CHECK_FALSE(rep.certificate());

    const auto meet = inf(f_evaluator(1, cfg), f_evaluator(2, cfg));
    const auto meet_swapped = inf(f_evaluator(2, cfg), f_evaluator(1, cfg));
    const auto zero = zero_evaluator(Ambient::dual());
    CHECK_FALSE(dominance_upper_bound(meet, zero, 0.0, 20000, 1).violated);
    CHECK_FALSE(dominance_upper_bound(meet_swapped, zero, 0.0, 20000, 2).violated);

    CHECK_THROWS_AS(dominance_upper_bound(meet, zero, 0.0, 0, 1), precondition_error);
    CHECK_THROWS_AS(dominance_upper_bound(meet, zero_evaluator(Ambient::cube()), 0.0, 10, 1), domain_error);
}

TEST_CASE("witness bounds are homogeneous, subadditive, monotone and blind to signs") {
    Rng rng = make_stream(31, {3});
    const ParamConfig cfg;
    const auto ids = index_range(1, 4);
    for (int t = 0; t < 200; ++t) {
        const auto f = to_evaluator(random_expr(ids, 5, rng), Space::dual);
        const auto g = to_evaluator(random_expr(ids, 5, rng), Space::dual);
        std::vector<SparseFunctional> rows;
        for (int i = 0; i < 3; ++i) rows.push_back(random_functional(Ambient::dual(), ids, rng, 4));
        const auto w = scale_to_admissible(rows);

        const double bf = norm_lower_bound(f, w);
        const double lambda = std::uniform_real_distribution<double>(0.1, 10.0)(rng);
        CHECK(norm_lower_bound(lambda * f, w) == doctest::Approx(lambda * bf).epsilon(1e-12));
        CHECK(norm_lower_bound(f + g, w) <= bf + norm_lower_bound(g, w) + 1e-12);
        CHECK(norm_lower_bound(abs(f), w) == bf);

        const std::uint32_t n = 1 + static_cast<std::uint32_t>(t % 4);
        CHECK(norm_lower_bound(f_evaluator(n, cfg), w) <=
              norm_lower_bound(abs(to_evaluator(gen(n), Space::dual)), w) + 1e-15);
    }
}
