#include <doctest.h>

#include "fbl/admissibility.hpp"
#include "fbl/errors.hpp"
#include "fbl/quotient.hpp"
#include "fbl/random.hpp"
#include "fbl/sampling.hpp"

using namespace fbl;

namespace {

GeneratorId sub(std::initializer_list<std::uint32_t> s) { return GeneratorId(SubsetGenerator(s)); }

std::vector<FamilyMember> coordinate_family(std::uint32_t length) {
    std::vector<FamilyMember> out;
    for (std::uint32_t n = 1; n <= length; ++n)
        out.push_back({pos(gen(n)), SparseFunctional::coordinate(Ambient::cube(), GeneratorId(n))});
    return out;
}

std::vector<FamilyMember> quotient_family(std::uint32_t truncation) {
    std::vector<FamilyMember> out;
    for (std::uint32_t n = 1; n <= truncation; ++n)
        out.push_back({pos(gen(SubsetGenerator{n})), phi_point(n, truncation)});
    return out;
}

using Terms = std::vector<std::pair<double, SubsetGenerator>>;

}  // namespace

TEST_CASE("chi is containment") {
    CHECK(chi({1, 2}, {2}) == 1);
    CHECK(chi({1, 2}, {2, 3}) == 0);
    CHECK(chi({4, 7}, {4, 7}) == 1);
}

TEST_CASE("quotient points") {
    const auto p3 = phi_point(3, 8);
    CHECK(p3(sub({1, 3})) == 1.0);
    CHECK(p3(sub({1, 2})) == 0.0);
    CHECK(phi_point(1, 8)(sub({1})) == 1.0);
    CHECK_THROWS_AS(phi_point(0, 8), precondition_error);
    CHECK_THROWS_AS(phi_point(9, 8), precondition_error);
    CHECK_THROWS_AS(p3(GeneratorId(3)), domain_error);
    CHECK_THROWS_AS(p3(sub({1, 9})), domain_error);

    const std::vector<SubsetGenerator> family = {{1, 3}, {2}};
    const auto n = vanishing_index(family);
    for (const auto& s : family) CHECK(phi_point(n, 8)(GeneratorId(s)) == 0.0);
}

TEST_CASE("vanishing index") {
    CHECK(vanishing_index({{1, 3}, {2}}) == 4);
    CHECK(vanishing_index({}) == 1);
    CHECK(vanishing_index({{7}}) == 8);
    CHECK(phi_point(8, 8)(sub({7})) == 0.0);
}

TEST_CASE("quotient of expressions") {
    const auto ind = phi_apply(gen(SubsetGenerator{1, 3}), 5, 8);
    CHECK(ind == (Eigen::VectorXd(5) << 1, 0, 1, 0, 0).finished());
    const auto top = phi_apply(sup(gen(SubsetGenerator{1}), gen(SubsetGenerator{2})), 4, 8);
    CHECK(top == (Eigen::VectorXd(4) << 1, 1, 0, 0).finished());
    CHECK(phi_apply(scale(0.0, gen(SubsetGenerator{1, 2})), 6, 8).isZero(0));
    CHECK_THROWS_AS(phi_apply(gen(1), 4, 8), domain_error);
    CHECK_THROWS_AS(phi_apply(gen(SubsetGenerator{2, 9}), 4, 8), domain_error);
    CHECK_THROWS_AS(phi_apply(gen(SubsetGenerator{2}), 9, 8), precondition_error);
}

TEST_CASE("quotient of random expressions commutes with every node") {
    Rng rng = make_stream(41, {1});
    std::vector<GeneratorId> gens = {sub({1}), sub({2, 3}), sub({1, 4, 6}), sub({5}), sub({2, 6})};
    for (int t = 0; t < 300; ++t) {
        const auto a = random_expr(gens, 4, rng);
        const auto b = random_expr(gens, 4, rng);
        const auto pa = phi_apply(a, 6, 6);
        const auto pb = phi_apply(b, 6, 6);
        CHECK(phi_apply(a + b, 6, 6) == pa + pb);
        CHECK(phi_apply(sup(a, b), 6, 6) == pa.cwiseMax(pb));
        CHECK(phi_apply(inf(a, b), 6, 6) == pa.cwiseMin(pb));
        CHECK(phi_apply(abs(a), 6, 6) == pa.cwiseAbs());
        CHECK(phi_apply(scale(-1.5, a), 6, 6) == -1.5 * pa);
    }
}

TEST_CASE("greedy decomposition examples") {
    const auto d = greedy_decompose((Eigen::VectorXd(3) << 0.5, 1.0, 0.25).finished());
    CHECK(d.terms == Terms{{0.5, {2}}, {0.25, {1, 2}}, {0.25, {1, 2, 3}}});
    CHECK(d.reconstruct() == d.source);

    Eigen::VectorXd e5 = Eigen::VectorXd::Zero(5);
    e5(4) = 1.0;
    CHECK(greedy_decompose(e5).terms == Terms{{1.0, {5}}});

    const auto ties = greedy_decompose((Eigen::VectorXd(2) << 1.0, 1.0).finished());
    CHECK(ties.terms == Terms{{0.0, {1}}, {1.0, {1, 2}}});
    CHECK(ties.reconstruct() == ties.source);

    CHECK(greedy_decompose(Eigen::VectorXd::Zero(3)).terms.empty());
    CHECK_THROWS_AS(greedy_decompose((Eigen::VectorXd(2) << 0.5, -0.1).finished()), precondition_error);
}

TEST_CASE("greedy decompositions are increasing chains that rebuild the vector") {
    Rng rng = make_stream(41, {2});
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int t = 0; t < 500; ++t) {
        Eigen::VectorXd x(10);
        for (int i = 0; i < 10; ++i) x(i) = unit(rng) < 0.3 ? 0.0 : std::pow(10.0, -4.0 * unit(rng));
        const auto d = greedy_decompose(x);
        CHECK((d.reconstruct() - x).cwiseAbs().maxCoeff() <= 1e-12);
        double total = 0.0;
        for (std::size_t j = 0; j < d.terms.size(); ++j) {
            CHECK(d.terms[j].first >= 0.0);
            total += d.terms[j].first;
            if (j) {
                CHECK(d.terms[j - 1].second.is_subset_of(d.terms[j].second));
                CHECK(d.terms[j - 1].second.size() + 1 == d.terms[j].second.size());
            }
        }
        CHECK(total == doctest::Approx(x.maxCoeff()).epsilon(1e-12));
    }
}

TEST_CASE("subsequence selection on the coordinate family") {
    const auto sel = select_subsequence(coordinate_family(10), 0.5, 4);
    CHECK(sel.indices == std::vector<std::size_t>{1, 2, 3, 4});
    for (std::uint32_t k = 1; k <= 4; ++k) {
        CHECK(sel.witnesses[k - 1] == SparseFunctional::coordinate(Ambient::cube(), GeneratorId(k)));
        CHECK(sel.supports[k - 1] == DependencySet{GeneratorId(k)});
    }
    CHECK(sel.partial_sum(4) == 4.0);
    CHECK(sel.partial_sum(4) >= 4 - 0.5);
    CHECK(coordinate_admissibility(sel.witnesses) == 1.0);
}

TEST_CASE("subsequence selection on the quotient family") {
    const auto sel = select_subsequence(quotient_family(8), 0.1, 3);
    CHECK(sel.indices == std::vector<std::size_t>{1, 2, 3});
    CHECK(sel.partial_sum(3) == 3.0);
    CHECK(sel.witnesses[1] == SparseFunctional(Ambient::cube(KeyKind::subset), {{sub({2}), 1.0}}));
    CHECK(coordinate_admissibility(sel.witnesses) == 1.0);
}

TEST_CASE("a large eps still yields a disjoint selection") {
    const auto sel = select_subsequence(coordinate_family(3), 2.0, 1);
    CHECK(sel.indices.size() == 1);
    CHECK(sel.partial_sum(1) >= -1.0);
}

TEST_CASE("selection skips members that do not vanish on earlier supports") {
    // members whose generator reaches into the previous support are passed over
    std::vector<FamilyMember> family = {
        {pos(gen(SubsetGenerator{1, 2})), phi_point(1, 6)},
        {pos(gen(SubsetGenerator{2})), phi_point(2, 6)},
        {pos(gen(SubsetGenerator{3})), phi_point(3, 6)},
        {pos(gen(SubsetGenerator{4})), phi_point(4, 6)},
    };
    const auto sel = select_subsequence(family, 0.1, 2);
    CHECK(sel.indices == std::vector<std::size_t>{1, 3});
    CHECK(find_vanishing_member(family, {sub({1, 2}), sub({3})}, 1) == std::optional<std::size_t>(4));
}

TEST_CASE("selection errors") {
    CHECK_THROWS_AS(select_subsequence(coordinate_family(3), 0.1, 4), truncation_exhausted);
    CHECK_THROWS_AS(select_subsequence(coordinate_family(3), 0.0, 1), precondition_error);
    std::vector<FamilyMember> off = {{scale(0.5, pos(gen(1))), SparseFunctional::coordinate(Ambient::cube(), GeneratorId(1))}};
    CHECK_THROWS_AS(select_subsequence(off, 0.1, 1), precondition_error);
}

TEST_CASE("the first m beyond an assumed bound") {
    const auto sel = select_subsequence(coordinate_family(10), 0.1, 5);
    CHECK(first_contradiction(sel, 1.0) == std::optional<std::size_t>(2));
    CHECK(first_contradiction(sel, 3.5) == std::optional<std::size_t>(4));
    CHECK_FALSE(first_contradiction(sel, 10.0));
}
