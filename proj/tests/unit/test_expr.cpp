#include <doctest.h>

#include <cmath>
#include <map>

#include "fbl/errors.hpp"
#include "fbl/expr.hpp"
#include "fbl/expr_io.hpp"
#include "fbl/random.hpp"
#include "fbl/sampling.hpp"

using namespace fbl;

namespace {

/// Point backed by a map; unknown ids read as 0.
struct MapPoint {
    std::map<GeneratorId, double> values;
    double operator()(const GeneratorId& id) const {
        auto it = values.find(id);
        return it == values.end() ? 0.0 : it->second;
    }
};

MapPoint random_point(const std::vector<GeneratorId>& ids, Rng& rng) {
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    MapPoint p;
    for (const auto& id : ids) p.values[id] = d(rng);
    return p;
}

}  // namespace

TEST_CASE("generators read coordinates and nodes act pointwise") {
    const auto e1 = SparseFunctional::coordinate(Ambient::dual(), GeneratorId(1));
    CHECK(eval(gen(1), e1) == 1.0);

    const GeneratorId a(1), b(2);
    MapPoint p{{{a, 1.0}, {b, 1.0}}};
    CHECK(eval(abs(gen(a) + scale(-1.0, gen(b))), p) == 0.0);

    MapPoint q{{{a, 1.0}, {b, 0.25}}};
    CHECK(eval(sup(scale(0.5, gen(a)), gen(b)), q) == 0.5);
    CHECK(eval(inf(scale(0.5, gen(a)), gen(b)), q) == 0.25);
    CHECK(eval(pos(-gen(a)), q) == 0.0);
    CHECK(eval(pos(gen(a)), q) == 1.0);
}

TEST_CASE("a generator outside the ambient is a domain error naming it") {
    const auto x = SparseFunctional::coordinate(Ambient::dual(), GeneratorId(1));
    try {
        eval(gen(SubsetGenerator{1, 3}), x);
        FAIL("expected domain_error");
    } catch (const domain_error& err) {
        CHECK(std::string(err.what()).find("{1,3}") != std::string::npos);
    }
}

TEST_CASE("dependency support collects exactly the generators") {
    const GeneratorId a(1), b(2);
    CHECK(dependency_support(gen(a)) == DependencySet{a});
    CHECK(dependency_support(sup(gen(a), abs(gen(b)))) == DependencySet{a, b});
    CHECK(dependency_support(scale(2.0, gen(a)) + gen(a)) == DependencySet{a});
    CHECK(dependency_support(gen(SubsetGenerator{2, 1})) == DependencySet{GeneratorId(SubsetGenerator{1, 2})});
}

TEST_CASE("positive homogeneity residuals") {
    const GeneratorId a(1), b(2);
    MapPoint p{{{a, -0.3}}};
    CHECK(check_positive_homogeneity(gen(a), p, 2.0) == 0.0);
    CHECK(check_positive_homogeneity(abs(gen(a)), p, 10.0) == 0.0);
    MapPoint q{{{a, 0.2}, {b, 0.7}}};
    CHECK(check_positive_homogeneity(sup(gen(a), gen(b)), q, 0.5) == 0.0);
    CHECK_THROWS_AS(check_positive_homogeneity(gen(a), p, 0.0), precondition_error);
    CHECK_THROWS_AS(check_positive_homogeneity(gen(a), p, -1.0), precondition_error);
}

TEST_CASE("lattice identities, locality and homogeneity on random trees") {
    Rng rng = make_stream(11, {1});
    const auto ids = index_range(1, 4);
    std::uniform_real_distribution<double> lambda(0.01, 50.0);
    for (int t = 0; t < 2000; ++t) {
        const auto e = random_expr(ids, 8, rng);
        const auto f = random_expr(ids, 8, rng);
        auto p = random_point(ids, rng);
        CHECK(eval(abs(e), p) == eval(sup(e, scale(-1.0, e)), p));
        CHECK(eval(inf(e, f), p) == eval(scale(-1.0, sup(scale(-1.0, e), scale(-1.0, f))), p));

        // coordinates outside the support do not matter
        const auto support = dependency_support(e);
        auto moved = p;
        for (auto& [id, v] : moved.values)
            if (!support.count(id)) v += 7.0;
        CHECK(eval(e, moved) == eval(e, p));

        const double value = eval(e, p);
        const double l = lambda(rng);
        CHECK(check_positive_homogeneity(e, p, l) <= 1e-12 * l * std::max(1.0, std::fabs(value)));
    }
}

TEST_CASE("homogeneity stays within 1e-12 relative for trees of depth 20") {
    Rng rng = make_stream(11, {2});
    const auto ids = index_range(1, 3);
    for (int t = 0; t < 300; ++t) {
        // chains of scale/add keep the value's magnitude comparable to its terms
        auto e = gen(1);
        for (int d = 0; depth(e) < 19; ++d) {
            const auto leaf = gen(ids[static_cast<std::size_t>(t + d) % 3]);
            switch (d % 4) {
                case 0: e = sup(e, leaf); break;
                case 1: e = scale(0.75, e) + leaf; break;
                case 2: e = inf(e, scale(1.5, leaf)); break;
                default: e = abs(e);
            }
        }
        REQUIRE(depth(e) >= 19);
        REQUIRE(depth(e) <= 20);
        auto p = random_point(ids, rng);
        for (double lambda : {1e-3, 0.5, 3.0, 1e3}) {
            const double base = std::fabs(eval(e, p)) + 1e-300;
            CHECK(check_positive_homogeneity(e, p, lambda) <= 1e-12 * lambda * std::max(base, 1.0));
        }
    }
}

TEST_CASE("printer and parser round-trip") {
    Rng rng = make_stream(11, {3});
    std::vector<GeneratorId> ids = index_range(1, 3);
    ids.emplace_back(SubsetGenerator{1, 3});
    for (int t = 0; t < 500; ++t) {
        const auto e = random_expr(ids, 6, rng);
        const auto text = to_string(e);
        const auto back = parse_expr(text);
        CHECK(to_string(back) == text);
        auto p = [](const GeneratorId& id) { return id.is_index() ? 0.1 * id.index() - 0.15 : 0.4; };
        CHECK(eval(back, p) == eval(e, p));
    }
    CHECK(to_string(pos(gen(2))) == "(pos (gen 2))");
    CHECK(to_string(scale(0.1, gen(SubsetGenerator{4, 1}))) == "(scale 0.1 (gen {1,4}))");
    CHECK(to_string(parse_expr("(add (gen 1) (gen 2) (gen 3))")) == "(add (add (gen 1) (gen 2)) (gen 3))");
}

TEST_CASE("parse errors carry positions") {
    auto position_of = [](const char* text) -> std::size_t {
        try {
            parse_expr(text);
        } catch (const parse_error& err) {
            return err.position();
        }
        return static_cast<std::size_t>(-1);
    };
    CHECK(position_of("(add (gen 1)") == 0);
    CHECK(position_of("(gen 1) x") == 8);
    CHECK(position_of("(mul (gen 1) (gen 2))") == 1);
    CHECK(position_of("(scale abc (gen 1))") == 7);
    CHECK(position_of("(gen 0)") == 5);
}
