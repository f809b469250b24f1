#pragma once

#include <cstddef>
#include <vector>

#include "fbl/expr.hpp"
#include "fbl/functional.hpp"
#include "fbl/random.hpp"

namespace fbl {

/// Random finitely supported functional on a subset of `universe`.
///
/// Mixes magnitude patterns so that ratio thresholds get exercised: uniform
/// magnitudes, log-uniform magnitudes over twelve decades, single basis
/// vectors, equal magnitudes, and geometric chains whose successive ratios
/// straddle small integers. Dual functionals land in the l1 ball, cube
/// functionals in [-1,1]^A.
SparseFunctional random_functional(Ambient ambient, const std::vector<GeneratorId>& universe, Rng& rng,
                                   std::size_t max_support);

/// Random expression of depth at most `max_depth` over the given generators.
/// Leaves are generators; inner nodes are drawn uniformly from scale, add,
/// sup, inf, abs and pos, with scale coefficients uniform in [-2, 2].
LatticeExpr random_expr(const std::vector<GeneratorId>& generators, std::size_t max_depth, Rng& rng);

/// Coordinates 1..n as index generator ids.
std::vector<GeneratorId> index_range(std::uint32_t first, std::uint32_t last);

}  // namespace fbl
