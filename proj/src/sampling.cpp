#include "fbl/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "fbl/errors.hpp"

namespace fbl {

SparseFunctional random_functional(Ambient ambient, const std::vector<GeneratorId>& universe, Rng& rng,
                                   std::size_t max_support) {
    if (universe.empty()) return SparseFunctional(ambient);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t cap = std::max<std::size_t>(1, std::min(max_support, universe.size()));
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, cap)(rng);

    std::vector<std::size_t> order(universe.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = 0; i < k; ++i) {
        const auto j = std::uniform_int_distribution<std::size_t>(i, order.size() - 1)(rng);
        std::swap(order[i], order[j]);
    }
    std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));

    const int pattern = std::uniform_int_distribution<int>(0, 4)(rng);
    std::vector<double> magnitudes(k);
    double chain = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
        switch (pattern) {
            case 0: magnitudes[i] = 1e-3 + unit(rng); break;
            case 1: magnitudes[i] = std::pow(10.0, -6.0 + 12.0 * unit(rng)); break;
            case 2: magnitudes[i] = i == 0 ? 1.0 : 0.0; break;
            case 3: magnitudes[i] = 1.0; break;
            default:
                magnitudes[i] = chain;
                chain *= 0.5 + 11.5 * unit(rng);
        }
    }
    if (pattern == 2) std::shuffle(magnitudes.begin(), magnitudes.end(), rng);

    double norm = 0.0;
    for (double m : magnitudes) norm = ambient.space == Space::dual ? norm + m : std::max(norm, m);
    const double target = 0.05 + 0.95 * unit(rng);

    std::vector<SparseFunctional::Entry> entries;
    entries.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double sign = (rng() & 1ULL) ? -1.0 : 1.0;
        double value = sign * magnitudes[i] / norm * target;
        if (ambient.space == Space::cube) value = std::clamp(value, -1.0, 1.0);
        entries.emplace_back(universe[order[i]], value);
    }
    return SparseFunctional(ambient, std::move(entries));
}

LatticeExpr random_expr(const std::vector<GeneratorId>& generators, std::size_t max_depth, Rng& rng) {
    if (generators.empty()) throw precondition_error("random_expr needs at least one generator");
    auto leaf = [&] { return gen(generators[std::uniform_int_distribution<std::size_t>(0, generators.size() - 1)(rng)]); };
    if (max_depth <= 1 || std::uniform_int_distribution<int>(0, 3)(rng) == 0) return leaf();
    const std::size_t below = max_depth - 1;
    switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
        case 0: {
            const double c = std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
            return scale(c, random_expr(generators, below, rng));
        }
        case 1: {
            auto l = random_expr(generators, below, rng);
            return add(std::move(l), random_expr(generators, below, rng));
        }
        case 2: {
            auto l = random_expr(generators, below, rng);
            return sup(std::move(l), random_expr(generators, below, rng));
        }
        case 3: {
            auto l = random_expr(generators, below, rng);
            return inf(std::move(l), random_expr(generators, below, rng));
        }
        case 4: return abs(random_expr(generators, below, rng));
        default:
            // pos(e) adds two levels: sup(e, scale(0, e)).
            if (below < 2) return abs(random_expr(generators, below, rng));
            return pos(random_expr(generators, below - 1, rng));
    }
}

std::vector<GeneratorId> index_range(std::uint32_t first, std::uint32_t last) {
    std::vector<GeneratorId> out;
    for (std::uint32_t i = first; i <= last; ++i) out.emplace_back(i);
    return out;
}

}  // namespace fbl
