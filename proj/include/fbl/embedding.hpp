#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "fbl/evaluator.hpp"
#include "fbl/functional.hpp"
#include "fbl/norm.hpp"

namespace fbl {

/// The strictly increasing sequence N_1 < N_2 < ... A given prefix is
/// continued with step 1 past its end; the empty prefix gives N_n = n + 1.
class GrowthSequence {
public:
    GrowthSequence() = default;
    explicit GrowthSequence(std::vector<std::uint64_t> prefix) : prefix_(std::move(prefix)) {}

    /// n >= 1.
    double operator()(std::uint32_t n) const;

    const std::vector<std::uint64_t>& prefix() const noexcept { return prefix_; }
    bool strictly_increasing() const;

private:
    std::vector<std::uint64_t> prefix_;
};

struct ParamConfig {
    GrowthSequence n_seq;
    std::uint32_t truncation = 32;
    double eps = 0.1;
    double tol = 1e-9;
    SearchBudget budget;
    std::uint64_t seed = 0;
    std::size_t enumeration_limit = kExactEnumerationLimit;
    unsigned threads = 0;

    SearchOptions search_options() const;
};

/// Throws config_error for a sequence that is not strictly increasing and
/// positive, truncation 0, eps <= 0, negative tol or an empty budget.
void validate(const ParamConfig& cfg);

/// Continuous factor in [0,1], homogeneous of degree 0: 0 once
/// |x_m| >= N_m |x_n|, 1 while |x_m| <= (N_m - 1)|x_n|, linear in |x_m|/|x_n|
/// in between. At x_n = 0 it is 1 if x_m = 0 and 0 otherwise. Needs n < m.
double g(std::uint32_t n, std::uint32_t m, const SparseFunctional& x, const ParamConfig& cfg);

/// (|x_n| - N_n max_{m<n} |x_m|)^+ times the product of g(n, m) over the
/// support above n.
double f(std::uint32_t n, const SparseFunctional& x, const ParamConfig& cfg);

/// As f, with the product cut at m <= n + k (k >= 1). The partial products are
/// taken in increasing m, so f <= h(k+1) <= h(k) holds in floating point too.
double h(std::uint32_t n, std::uint32_t k, const SparseFunctional& x, const ParamConfig& cfg);

/// sum_i x_i f(i, x*) over the support of x (coordinate i at x(i-1)).
double u_apply(const Eigen::VectorXd& x, const SparseFunctional& xstar, const ParamConfig& cfg);

/// Component n-1 is fn(e_n*) for n = 1..n_max.
Eigen::VectorXd t_apply(const Evaluator& fn, std::uint32_t n_max);

/// min(f(n, x*), f(l, x*)); needs n != l.
double disjointness_residual(std::uint32_t n, std::uint32_t l, const SparseFunctional& x, const ParamConfig& cfg);

/// Dual-space evaluators named `f:n`, `h:n:k` and `u:[...]`. Their hints run
/// two coordinates past the last one that matters, capped at the truncation.
Evaluator f_evaluator(std::uint32_t n, const ParamConfig& cfg);
Evaluator h_evaluator(std::uint32_t n, std::uint32_t k, const ParamConfig& cfg);
Evaluator u_evaluator(const Eigen::VectorXd& x, const ParamConfig& cfg);

}  // namespace fbl
