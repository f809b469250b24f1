#include "fbl/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fbl/errors.hpp"
#include "fbl/sampling.hpp"
#include "fbl/sexpr.hpp"

namespace fbl {

double GrowthSequence::operator()(std::uint32_t n) const {
    if (n < 1) throw precondition_error("N_n is indexed from 1");
    if (prefix_.empty()) return static_cast<double>(n) + 1.0;
    if (n <= prefix_.size()) return static_cast<double>(prefix_[n - 1]);
    return static_cast<double>(prefix_.back()) + static_cast<double>(n - prefix_.size());
}

bool GrowthSequence::strictly_increasing() const {
    if (!prefix_.empty() && prefix_.front() < 1) return false;
    return std::adjacent_find(prefix_.begin(), prefix_.end(), [](auto a, auto b) { return b <= a; }) ==
           prefix_.end();
}

SearchOptions ParamConfig::search_options() const {
    SearchOptions out;
    out.budget = budget;
    out.seed = seed;
    out.enumeration_limit = enumeration_limit;
    out.threads = threads;
    return out;
}

void validate(const ParamConfig& cfg) {
    if (!cfg.n_seq.strictly_increasing())
        throw config_error("the N sequence must consist of strictly increasing positive integers");
    if (cfg.truncation == 0) throw config_error("truncation must be at least 1");
    if (!(cfg.eps > 0.0)) throw config_error("eps must be positive");
    if (!(cfg.tol >= 0.0)) throw config_error("tol must be nonnegative");
    if (cfg.budget.restarts == 0 || cfg.budget.steps == 0 || cfg.budget.max_tuple == 0)
        throw config_error("search budget must be at least one restart, one step and one tuple row");
    if (cfg.enumeration_limit == 0 || cfg.enumeration_limit > 62)
        throw config_error("enumeration limit must lie in 1..62");
}

namespace {

/// g on magnitudes a = |x_n|, b = |x_m|. The zero test compares b with the
/// same rounded product N a that bounds the prefactor of later members, which
/// makes pointwise disjointness exact in floating point.
double g_value(double a, double b, double big_n) {
    if (a == 0.0) return b == 0.0 ? 1.0 : 0.0;
    if (b >= big_n * a) return 0.0;
    if (b <= (big_n - 1.0) * a) return 1.0;
    return std::clamp(big_n - b / a, 0.0, 1.0);
}

void require_dual(const SparseFunctional& x) {
    if (x.ambient().space != Space::dual)
        throw domain_error("the c0 family is evaluated on l1 functionals, not on " + x.ambient().to_string());
}

double truncated_member(std::uint32_t n, std::uint32_t last, const SparseFunctional& x, const ParamConfig& cfg) {
    if (n < 1) throw precondition_error("the family is indexed from 1");
    require_dual(x);
    const double a = std::fabs(x.at(n));
    if (a == 0.0) return 0.0;
    double below = 0.0;
    double product = 1.0;
    for (const auto& [id, value] : x.entries()) {
        const auto m = id.index();
        if (m < n) below = std::max(below, std::fabs(value));
        else if (m > n && m <= last) product *= g_value(a, std::fabs(value), cfg.n_seq(m));
    }
    const double prefactor = a - cfg.n_seq(n) * below;
    if (!(prefactor > 0.0)) return 0.0;
    return prefactor * product;
}

std::vector<GeneratorId> hint_up_to(std::uint32_t last, const ParamConfig& cfg) {
    return index_range(1, std::min(last, cfg.truncation));
}

void require_within(std::uint32_t n, const ParamConfig& cfg) {
    if (n < 1 || n > cfg.truncation)
        throw precondition_error("index " + std::to_string(n) + " lies outside 1.." + std::to_string(cfg.truncation));
}

}  // namespace

double g(std::uint32_t n, std::uint32_t m, const SparseFunctional& x, const ParamConfig& cfg) {
    if (n < 1 || n >= m) throw precondition_error("g needs 1 <= n < m");
    require_dual(x);
    return g_value(std::fabs(x.at(n)), std::fabs(x.at(m)), cfg.n_seq(m));
}

double f(std::uint32_t n, const SparseFunctional& x, const ParamConfig& cfg) {
    return truncated_member(n, std::numeric_limits<std::uint32_t>::max(), x, cfg);
}

double h(std::uint32_t n, std::uint32_t k, const SparseFunctional& x, const ParamConfig& cfg) {
    if (k < 1) throw precondition_error("truncation depth k must be at least 1");
    const std::uint64_t last = std::uint64_t{n} + k;
    return truncated_member(n, static_cast<std::uint32_t>(std::min<std::uint64_t>(last, UINT32_MAX)), x, cfg);
}

double u_apply(const Eigen::VectorXd& x, const SparseFunctional& xstar, const ParamConfig& cfg) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (x(i) != 0.0) total += x(i) * f(static_cast<std::uint32_t>(i + 1), xstar, cfg);
    return total;
}

Eigen::VectorXd t_apply(const Evaluator& fn, std::uint32_t n_max) {
    Eigen::VectorXd out(n_max);
    for (std::uint32_t n = 1; n <= n_max; ++n)
        out(n - 1) = fn(SparseFunctional::coordinate(fn.ambient(), GeneratorId(n)));
    return out;
}

double disjointness_residual(std::uint32_t n, std::uint32_t l, const SparseFunctional& x, const ParamConfig& cfg) {
    if (n == l) throw precondition_error("disjointness needs two distinct indices");
    return std::min(f(n, x, cfg), f(l, x, cfg));
}

Evaluator f_evaluator(std::uint32_t n, const ParamConfig& cfg) {
    require_within(n, cfg);
    return Evaluator("f:" + std::to_string(n), Ambient::dual(), hint_up_to(n + 2, cfg),
                     [n, cfg](const SparseFunctional& x) { return f(n, x, cfg); });
}

Evaluator h_evaluator(std::uint32_t n, std::uint32_t k, const ParamConfig& cfg) {
    require_within(n, cfg);
    if (k < 1) throw precondition_error("truncation depth k must be at least 1");
    return Evaluator("h:" + std::to_string(n) + ":" + std::to_string(k), Ambient::dual(), hint_up_to(n + k + 2, cfg),
                     [n, k, cfg](const SparseFunctional& x) { return h(n, k, x, cfg); });
}

Evaluator u_evaluator(const Eigen::VectorXd& x, const ParamConfig& cfg) {
    std::string name = "u:[";
    std::uint32_t last = 0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (x(i) == 0.0) continue;
        if (!std::isfinite(x(i))) throw precondition_error("u needs a finite vector");
        last = static_cast<std::uint32_t>(i + 1);
        require_within(last, cfg);
        if (name.size() > 3) name += ",";
        name += std::to_string(last) + ":" + format_real(x(i));
    }
    name += "]";
    return Evaluator(name, Ambient::dual(), last ? hint_up_to(last + 2, cfg) : std::vector<GeneratorId>{},
                     [x, cfg](const SparseFunctional& xstar) { return u_apply(x, xstar, cfg); });
}

}  // namespace fbl
