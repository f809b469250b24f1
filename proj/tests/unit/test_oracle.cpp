#include <doctest.h>

#include <cmath>

#include "fbl/admissibility.hpp"
#include "fbl/norm.hpp"
#include "fbl/random.hpp"
#include "fbl/sampling.hpp"
#include "oracle/pwl_oracle.hpp"

using namespace fbl;

TEST_CASE("oracle values worked by hand") {
    const auto g1 = gen(1), g2 = gen(2);
    CHECK(oracle::two_point_norm(g1) == 1.0);
    CHECK(oracle::two_point_norm(scale(3.0, g1)) == 3.0);
    CHECK(oracle::two_point_norm(g1 + g2) == 2.0);
    CHECK(oracle::two_point_norm(g1 - g2) == 2.0);
    CHECK(oracle::two_point_norm(sup(g1, g2)) == 2.0);
    CHECK(oracle::two_point_norm(inf(g1, g2)) == 2.0);
    CHECK(oracle::two_point_norm(inf(abs(g1), abs(g2))) == 1.0);
    CHECK(oracle::two_point_norm(g1 + scale(0.5, g2)) == 1.5);
    CHECK(oracle::two_point_norm(sup(g1, scale(0.5, g2))) == 1.5);
    CHECK(oracle::two_point_norm(scale(0.0, g1)) == 0.0);
}

TEST_CASE("restriction to the segment matches pointwise evaluation") {
    Rng rng = make_stream(61, {1});
    const auto ids = index_range(1, 2);
    for (int t = 0; t < 300; ++t) {
        const auto e = random_expr(ids, 5, rng);
        for (double s1 : {1.0, -1.0})
            for (double s2 : {1.0, -1.0}) {
                const auto line = oracle::restrict_to_line(e, s1, s2);
                for (int i = 0; i <= 64; ++i) {
                    const double w = i / 64.0;
                    const double a = s1 * w, b = s2 * (1.0 - w);
                    const double direct = eval(e, [&](const GeneratorId& id) { return id.index() == 1 ? a : b; });
                    CHECK(line.at(w) == doctest::Approx(direct).epsilon(1e-12).scale(1.0));
                }
            }
    }
}

TEST_CASE("no admissible witness beats the oracle") {
    Rng rng = make_stream(61, {2});
    const auto ids = index_range(1, 2);
    for (int t = 0; t < 200; ++t) {
        const auto e = random_expr(ids, 4, rng);
        const double exact = oracle::two_point_norm(e);
        const auto f = to_evaluator(e, Space::cube);
        for (int r = 0; r < 20; ++r) {
            const auto rows = std::uniform_int_distribution<int>(1, 4)(rng);
            std::vector<SparseFunctional> tuple;
            for (int i = 0; i < rows; ++i) tuple.push_back(random_functional(Ambient::cube(), ids, rng, 2));
            double mass = coordinate_admissibility(tuple);
            if (mass == 0.0) continue;
            double total = 0.0;
            for (const auto& x : tuple) total += std::fabs(f(x.scaled(1.0 / mass)));
            CHECK(total <= exact * (1 + 1e-12) + 1e-12);
        }
    }
}
