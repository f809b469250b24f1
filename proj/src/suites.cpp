#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>

#include "fbl/errors.hpp"
#include "fbl/expr_io.hpp"
#include "fbl/random.hpp"
#include "fbl/report.hpp"
#include "fbl/sampling.hpp"
#include "fbl/vector_literal.hpp"

namespace fbl {

using json = nlohmann::ordered_json;

namespace {

constexpr std::size_t kSamples = 100000;

std::uint64_t hash_id(const std::string& id) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : id) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Collects records for one suite; every check gets a seed derived from the
/// config seed and its own id, so checks can be reordered or run alone.
class Suite {
public:
    Suite(std::string name, const ParamConfig& cfg, std::vector<CheckRecord>& out)
        : name_(std::move(name)), cfg_(cfg), out_(out) {}

    const ParamConfig& cfg() const { return cfg_; }

    void check(const std::string& id, const std::string& description, const std::function<void(CheckRecord&)>& body) {
        CheckRecord r;
        r.id = name_ + "/" + id;
        r.suite = name_;
        r.description = description;
        r.seed = stream_seed(cfg_.seed, {hash_id(r.id)});
        r.tolerance = cfg_.tol;
        const auto start = std::chrono::steady_clock::now();
        try {
            body(r);
        } catch (const std::exception& err) {
            r.pass = false;
            r.computed["error"] = err.what();
        }
        r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out_.push_back(std::move(r));
    }

private:
    std::string name_;
    const ParamConfig& cfg_;
    std::vector<CheckRecord>& out_;
};

SearchOptions options_for(const ParamConfig& cfg, std::uint64_t seed) {
    auto options = cfg.search_options();
    options.seed = seed;
    return options;
}

Evaluator sum_of_members(std::uint32_t n, const ParamConfig& cfg) {
    Evaluator total = f_evaluator(1, cfg);
    for (std::uint32_t i = 2; i <= n; ++i) total = total + f_evaluator(i, cfg);
    return total;
}

json vector_json(const Eigen::VectorXd& x) { return std::vector<double>(x.data(), x.data() + x.size()); }

// ---------------------------------------------------------------- quotient

void suite_lemma22(Suite& s) {
    const auto trunc = s.cfg().truncation;
    s.check("indicator", "the quotient of a subset generator is the indicator of the subset (100 random subsets)",
            [&](CheckRecord& r) {
                Rng rng(r.seed);
                std::size_t mismatches = 0;
                json first_bad = nullptr;
                for (int t = 0; t < 100; ++t) {
                    const auto size = std::uniform_int_distribution<std::uint32_t>(1, std::min(trunc, 8u))(rng);
                    std::vector<std::uint32_t> elements;
                    for (std::uint32_t i = 0; i < size; ++i)
                        elements.push_back(std::uniform_int_distribution<std::uint32_t>(1, trunc)(rng));
                    const SubsetGenerator a(elements);
                    const auto image = phi_apply(gen(a), trunc, trunc);
                    Eigen::VectorXd expected = Eigen::VectorXd::Zero(trunc);
                    for (auto n : a.elements()) expected(n - 1) = 1.0;
                    if (image != expected) {
                        ++mismatches;
                        if (first_bad.is_null()) first_bad = {{"subset", a.to_string()}, {"image", vector_json(image)}};
                    }
                }
                r.inputs = {{"cases", 100}, {"truncation", trunc}};
                r.computed = {{"value", mismatches}, {"first_mismatch", first_bad}};
                r.bound = 0.0;
                r.tolerance = 0.0;
                r.pass = mismatches == 0;
            });

    s.check("homomorphism", "the quotient commutes with scale, add, sup, inf and abs (1000 random expressions)",
            [&](CheckRecord& r) {
                Rng rng(r.seed);
                const auto span = std::min(trunc, 12u);
                std::vector<GeneratorId> gens;
                for (int i = 0; i < 10; ++i) {
                    const auto size = std::uniform_int_distribution<std::uint32_t>(1, 4)(rng);
                    std::vector<std::uint32_t> elements;
                    for (std::uint32_t k = 0; k < size; ++k)
                        elements.push_back(std::uniform_int_distribution<std::uint32_t>(1, span)(rng));
                    gens.emplace_back(SubsetGenerator(elements));
                }
                std::size_t mismatches = 0;
                json first_bad = nullptr;
                for (int t = 0; t < 1000; ++t) {
                    const auto e = random_expr(gens, 6, rng);
                    const auto image = phi_apply(e, span, trunc);
                    Eigen::VectorXd composed;
                    switch (e.kind()) {
                        case NodeKind::generator: {
                            composed = Eigen::VectorXd::Zero(span);
                            for (auto n : e.generator().subset().elements())
                                if (n <= span) composed(n - 1) = 1.0;
                            break;
                        }
                        case NodeKind::scale: composed = e.coefficient() * phi_apply(e.child(), span, trunc); break;
                        case NodeKind::add:
                            composed = phi_apply(e.left(), span, trunc) + phi_apply(e.right(), span, trunc);
                            break;
                        case NodeKind::sup:
                            composed = phi_apply(e.left(), span, trunc).cwiseMax(phi_apply(e.right(), span, trunc));
                            break;
                        case NodeKind::inf:
                            composed = phi_apply(e.left(), span, trunc).cwiseMin(phi_apply(e.right(), span, trunc));
                            break;
                        case NodeKind::abs: composed = phi_apply(e.child(), span, trunc).cwiseAbs(); break;
                    }
                    if (image != composed) {
                        ++mismatches;
                        if (first_bad.is_null()) first_bad = {{"expr", to_string(e)}};
                    }
                }
                r.inputs = {{"cases", 1000}, {"max_depth", 6}, {"coordinates", span}};
                r.computed = {{"value", mismatches}, {"first_mismatch", first_bad}};
                r.bound = 0.0;
                r.tolerance = 0.0;
                r.pass = mismatches == 0;
            });

    s.check("greedy", "greedy chain decompositions rebuild 1000 random nonnegative vectors", [&](CheckRecord& r) {
        Rng rng(r.seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        double worst = 0.0;
        bool structure_ok = true;
        json first_bad = nullptr;
        for (int t = 0; t < 1000; ++t) {
            const auto len = std::uniform_int_distribution<int>(1, 12)(rng);
            Eigen::VectorXd x(len);
            const bool coarse = unit(rng) < 0.3;  // coarse values force ties
            for (int i = 0; i < len; ++i) {
                const double v = unit(rng) < 0.25 ? 0.0 : unit(rng);
                x(i) = coarse ? std::round(4.0 * v) / 4.0 : v;
            }
            const auto d = greedy_decompose(x);
            worst = std::max(worst, (d.reconstruct() - x).cwiseAbs().maxCoeff());
            double lambda_sum = 0.0;
            bool ok = true;
            for (std::size_t j = 0; j < d.terms.size(); ++j) {
                lambda_sum += d.terms[j].first;
                ok = ok && d.terms[j].first >= 0.0;
                if (j > 0) {
                    const auto& prev = d.terms[j - 1].second;
                    const auto& cur = d.terms[j].second;
                    ok = ok && prev.is_subset_of(cur) && prev.size() < cur.size();
                }
            }
            ok = ok && std::fabs(lambda_sum - x.maxCoeff()) <= 1e-12;
            if (!ok && first_bad.is_null()) first_bad = {{"vector", format_vector_literal(x)}, {"decomposition", to_json(d)}};
            structure_ok = structure_ok && ok;
        }
        r.inputs = {{"cases", 1000}, {"max_length", 12}};
        r.computed = {{"value", worst}, {"structure_ok", structure_ok}, {"first_bad", first_bad}};
        r.bound = 0.0;
        r.tolerance = 1e-12;
        r.pass = structure_ok && worst <= 1e-12;
    });
}

std::vector<FamilyMember> coordinate_family(std::uint32_t length) {
    std::vector<FamilyMember> out;
    for (std::uint32_t n = 1; n <= length; ++n)
        out.push_back({pos(gen(n)), SparseFunctional::coordinate(Ambient::cube(), GeneratorId(n))});
    return out;
}

std::vector<FamilyMember> quotient_family(std::uint32_t truncation) {
    std::vector<FamilyMember> out;
    for (std::uint32_t n = 1; n <= truncation; ++n) out.push_back({pos(gen(SubsetGenerator{n})), phi_point(n, truncation)});
    return out;
}

void suite_lemma23(Suite& s) {
    const std::uint32_t length = 16;
    for (const char* family : {"coordinate", "quotient"}) {
        for (double eps : {0.1, 0.5}) {
            const std::string id = std::string(family) + "/eps=" + format_real(eps);
            s.check(id, "subsequence witnesses are disjoint, admissible and give sums >= m - eps for m <= 16",
                    [&](CheckRecord& r) {
                        r.inputs = {{"family", family}, {"eps", eps}, {"length", length},
                                    {"truncation", s.cfg().truncation}};
                        r.bound = 0.0;
                        r.tolerance = 0.0;
                        const auto members = std::string(family) == "coordinate"
                                                 ? coordinate_family(s.cfg().truncation)
                                                 : quotient_family(s.cfg().truncation);
                        const auto sel = select_subsequence(members, eps, length);

                        bool disjoint = true;
                        for (std::size_t a = 0; a < sel.witnesses.size(); ++a)
                            for (std::size_t b = a + 1; b < sel.witnesses.size(); ++b)
                                for (const auto& [id_a, va] : sel.witnesses[a].entries())
                                    if (sel.witnesses[b](id_a) != 0.0) disjoint = false;
                        const double adm = coordinate_admissibility(sel.witnesses);

                        bool sums_ok = true;
                        double worst_margin = 1e300;
                        json certified = json::array();
                        const Space space = Space::cube;
                        for (std::size_t m = 1; m <= sel.indices.size(); ++m) {
                            const double sum = sel.partial_sum(m);
                            worst_margin = std::min(worst_margin, sum - (static_cast<double>(m) - eps));
                            sums_ok = sums_ok && sum >= static_cast<double>(m) - eps;
                            LatticeExpr total = members[sel.indices[0] - 1].f;
                            for (std::size_t k = 1; k < m; ++k) total = total + members[sel.indices[k] - 1].f;
                            WitnessTuple w = make_witness(
                                std::vector<SparseFunctional>(sel.witnesses.begin(), sel.witnesses.begin() + m));
                            certified.push_back(norm_lower_bound(to_evaluator(total, space), w));
                        }
                        r.computed = {{"value", worst_margin},
                                      {"disjoint", disjoint},
                                      {"coordinate_admissibility", adm},
                                      {"certified_lower_bounds", certified},
                                      {"selection", to_json(sel)}};
                        r.pass = disjoint && adm <= 1.0 && sums_ok;
                    });
        }
    }
    s.check("contradiction", "a norm bound C = 1 on the partial sums fails at the first m with m - eps > C",
            [&](CheckRecord& r) {
                const double bound = 1.0;
                const auto sel = select_subsequence(coordinate_family(s.cfg().truncation), s.cfg().eps, 4);
                const auto m = first_contradiction(sel, bound);
                const auto expected = static_cast<std::size_t>(std::floor(bound + s.cfg().eps)) + 1;
                r.inputs = {{"family", "coordinate"}, {"eps", s.cfg().eps}, {"assumed_bound", bound}};
                r.computed = {{"value", m ? json(*m) : json(nullptr)}, {"expected", expected}};
                r.bound = bound;
                r.tolerance = 0.0;
                r.pass = m && *m == expected;
            });
}

// ---------------------------------------------------------------- functionals

void suite_claim(Suite& s) {
    for (bool admissible : {true, false}) {
        const std::string id = admissible ? "admissible" : "raw";
        s.check(id,
                admissible ? "picked coordinates of 100000 admissible tuples sum to at most 1"
                           : "picked coordinates of 100000 unscaled tuples sum to at most the ball supremum",
                [&](CheckRecord& r) {
                    Rng rng(r.seed);
                    const auto universe = index_range(1, 12);
                    std::size_t violations = 0;
                    double worst = -1e300;
                    json first_bad = nullptr;
                    for (std::size_t t = 0; t < kSamples; ++t) {
                        const auto rows = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
                        const auto cap = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
                        std::vector<SparseFunctional> tuple;
                        for (std::size_t i = 0; i < rows; ++i)
                            tuple.push_back(random_functional(Ambient::dual(), universe, rng, cap));
                        if (admissible) tuple = scale_to_admissible(std::move(tuple)).functionals;
                        std::vector<std::uint32_t> picks;
                        for (std::size_t i = 0; i < rows; ++i)
                            picks.push_back(std::uniform_int_distribution<std::uint32_t>(1, 12)(rng));
                        const auto c = claim_check(tuple, picks, s.cfg().tol);
                        const bool ok = c.holds && (!admissible || c.lhs <= 1.0 + s.cfg().tol);
                        worst = std::max(worst, c.lhs - c.rhs);
                        if (!ok) {
                            ++violations;
                            if (first_bad.is_null()) {
                                json tj = json::array();
                                for (const auto& x : tuple) tj.push_back(to_json(x));
                                first_bad = {{"tuple", tj}, {"picks", picks}, {"lhs", c.lhs}, {"rhs", c.rhs}};
                            }
                        }
                    }
                    r.inputs = {{"cases", kSamples}, {"max_rows", 6}, {"coordinates", 12}, {"scaled", admissible}};
                    r.computed = {{"value", violations}, {"max_lhs_minus_rhs", worst}, {"first_violation", first_bad}};
                    r.bound = 0.0;
                    r.pass = violations == 0;
                });
    }
}

// ---------------------------------------------------------------- embedding

std::vector<GeneratorId> dual_universe(std::uint32_t last) { return index_range(1, last); }

void suite_lemma32(Suite& s) {
    s.check("pairs", "min(f_n, f_l) is exactly 0 for all n < l <= 8 on 100000 random functionals", [&](CheckRecord& r) {
        Rng rng(r.seed);
        const auto universe = dual_universe(10);
        std::size_t residual_hits = 0;
        std::size_t crowded = 0;
        std::size_t active_points = 0;
        json first_bad = nullptr;
        for (std::size_t t = 0; t < kSamples; ++t) {
            const auto x = random_functional(Ambient::dual(), universe, rng, 10);
            double values[9] = {};
            int nonzero = 0;
            for (std::uint32_t n = 1; n <= 8; ++n) {
                values[n] = f(n, x, s.cfg());
                nonzero += values[n] != 0.0;
            }
            active_points += nonzero > 0;
            if (nonzero > 1) ++crowded;
            for (std::uint32_t n = 1; n <= 8; ++n) {
                for (std::uint32_t l = n + 1; l <= 8; ++l) {
                    if (disjointness_residual(n, l, x, s.cfg()) != 0.0) {
                        ++residual_hits;
                        if (first_bad.is_null()) first_bad = {{"point", to_json(x)}, {"n", n}, {"l", l}};
                    }
                }
            }
        }
        r.inputs = {{"cases", kSamples}, {"coordinates", 10}, {"max_index", 8}};
        r.computed = {{"value", residual_hits},
                      {"points_with_two_active_members", crowded},
                      {"points_with_an_active_member", active_points},
                      {"first_violation", first_bad}};
        r.bound = 0.0;
        r.tolerance = 0.0;
        r.pass = residual_hits == 0 && crowded == 0;
    });
}

void suite_lemma33(Suite& s) {
    const auto& cfg = s.cfg();
    for (std::uint32_t n = 1; n <= 4; ++n) {
        for (std::uint32_t k = 1; k <= 4; ++k) {
            const std::string tag = "n=" + std::to_string(n) + "/k=" + std::to_string(k);
            const double bound = 1.0 / (cfg.n_seq(n + k) - 1.0);
            s.check(tag + "/search", "searched norm of h_k - f_n stays below 1/(N_{n+k} - 1)", [&](CheckRecord& r) {
                const auto diff = h_evaluator(n, k, cfg) - f_evaluator(n, cfg);
                auto est = norm_search(diff, options_for(cfg, r.seed));
                r.inputs = {{"evaluator", diff.name()}, {"n", n}, {"k", k}};
                r.computed = {{"value", est.lower_bound}, {"estimate", to_json(est)}};
                r.bound = bound;
                r.pass = est.lower_bound <= bound + cfg.tol;
            });
            s.check(tag + "/sandwich", "0 <= f_n <= h_k pointwise on 10000 random functionals", [&](CheckRecord& r) {
                const auto rep = dominance_upper_bound(f_evaluator(n, cfg), h_evaluator(n, k, cfg), 1.0, 10000, r.seed);
                r.inputs = {{"f", "f:" + std::to_string(n)}, {"g", "h:" + std::to_string(n) + ":" + std::to_string(k)}};
                r.computed = {{"value", rep.violated ? 1 : 0}, {"samples", rep.samples_checked}, {"label", rep.label}};
                if (rep.violation) r.computed["violation"] = to_json(rep.violation->point);
                r.bound = 0.0;
                r.tolerance = 0.0;
                r.pass = !rep.violated;
            });
        }
    }
}

void suite_lemma34(Suite& s) {
    const auto& cfg = s.cfg();
    for (std::uint32_t n = 1; n <= 8; ++n) {
        s.check("n=" + std::to_string(n), "searched norm of f_1 + ... + f_n lies in [1 - tol, 1 + tol]",
                [&](CheckRecord& r) {
                    const auto total = sum_of_members(n, cfg);
                    const double witness =
                        norm_lower_bound(total, make_witness({SparseFunctional::coordinate(Ambient::dual(), GeneratorId(1))}));
                    auto est = norm_search(total, options_for(cfg, r.seed));
                    r.inputs = {{"evaluator", total.name()}, {"n", n}};
                    r.computed = {{"value", est.lower_bound}, {"first_coordinate_witness", witness}, {"estimate", to_json(est)}};
                    r.bound = 1.0;
                    r.pass = witness >= 1.0 - cfg.tol && est.lower_bound >= 1.0 - cfg.tol && est.lower_bound <= 1.0 + cfg.tol;
                });
    }
}

void suite_lemma35(Suite& s) {
    const auto& cfg = s.cfg();
    for (std::uint32_t n = 1; n <= 8; ++n) {
        const std::string tag = "n=" + std::to_string(n);
        s.check(tag + "/witness", "the coordinate functional e_n* certifies a lower bound of exactly 1",
                [&](CheckRecord& r) {
                    const auto w = make_witness({SparseFunctional::coordinate(Ambient::dual(), GeneratorId(n))});
                    const double lb = norm_lower_bound(f_evaluator(n, cfg), w);
                    r.inputs = {{"evaluator", "f:" + std::to_string(n)}, {"witness", to_json(w)}};
                    r.computed = {{"value", lb}};
                    r.bound = 1.0;
                    r.tolerance = 0.0;
                    r.pass = lb == 1.0;
                });
        s.check(tag + "/search", "searched norm of f_n never exceeds 1 + tol", [&](CheckRecord& r) {
            auto est = norm_search(f_evaluator(n, cfg), options_for(cfg, r.seed));
            r.inputs = {{"evaluator", "f:" + std::to_string(n)}};
            r.computed = {{"value", est.lower_bound}, {"estimate", to_json(est)}};
            r.bound = 1.0;
            r.pass = est.lower_bound <= 1.0 + cfg.tol;
        });
        s.check(tag + "/dominance", "0 <= f_n <= |e_n| on 100000 random functionals", [&](CheckRecord& r) {
            const auto rep = dominance_upper_bound(f_evaluator(n, cfg), abs(to_evaluator(gen(n), Space::dual)), 1.0,
                                                   kSamples, r.seed);
            r.inputs = {{"f", "f:" + std::to_string(n)}, {"g", "(abs (gen " + std::to_string(n) + "))"}};
            r.computed = {{"value", rep.violated ? 1 : 0}, {"samples", rep.samples_checked}, {"label", rep.label}};
            if (rep.violation) r.computed["violation"] = to_json(rep.violation->point);
            r.bound = 0.0;
            r.tolerance = 0.0;
            r.pass = !rep.violated;
        });
    }
}

void suite_thm36(Suite& s) {
    const auto& cfg = s.cfg();
    s.check("coefficients", "searched norm of sum a_i f_i equals max |a_i| for 100 random a (n <= 6)",
            [&](CheckRecord& r) {
                Rng rng(r.seed);
                std::uniform_real_distribution<double> coef(-1.0, 1.0);
                double worst_gap = 0.0;
                double worst_excess = -1e300;
                json cases = json::array();
                for (int t = 0; t < 100; ++t) {
                    const auto n = std::uniform_int_distribution<int>(1, 6)(rng);
                    Eigen::VectorXd a(n);
                    for (int i = 0; i < n; ++i) a(i) = coef(rng);
                    const double target = a.cwiseAbs().maxCoeff();
                    const auto est = norm_search(u_evaluator(a, cfg), options_for(cfg, stream_seed(r.seed, {std::uint64_t(t)})));
                    worst_gap = std::max(worst_gap, target - est.lower_bound);
                    worst_excess = std::max(worst_excess, est.lower_bound - target);
                    cases.push_back({{"a", format_vector_literal(a)},
                                     {"max_abs", target},
                                     {"lower_bound", est.lower_bound},
                                     {"witness", to_json(est.best_witness)}});
                }
                r.inputs = {{"cases", 100}, {"max_length", 6}};
                r.computed = {{"value", worst_gap}, {"max_excess", worst_excess}, {"cases", cases}};
                r.bound = 1e-6;
                r.pass = worst_gap <= 1e-6 && worst_excess <= cfg.tol;
            });
}

void suite_thm37(Suite& s) {
    const auto& cfg = s.cfg();
    s.check("identity", "T(u(x)) = x for 100 random finitely supported x", [&](CheckRecord& r) {
        Rng rng(r.seed);
        std::uniform_real_distribution<double> value(-5.0, 5.0);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const std::uint32_t span = std::min(12u, cfg.truncation);
        double worst = 0.0;
        for (int t = 0; t < 100; ++t) {
            Eigen::VectorXd x = Eigen::VectorXd::Zero(span);
            for (std::uint32_t i = 0; i < span; ++i)
                if (unit(rng) < 0.5) x(i) = value(rng);
            const auto image = t_apply(u_evaluator(x, cfg), span);
            worst = std::max(worst, (image - x).cwiseAbs().maxCoeff());
        }
        r.inputs = {{"cases", 100}, {"coordinates", span}};
        r.computed = {{"value", worst}};
        r.bound = 0.0;
        r.tolerance = 1e-12;
        r.pass = worst <= 1e-12;
    });
}

const std::map<std::string, void (*)(Suite&)>& registry() {
    static const std::map<std::string, void (*)(Suite&)> table = {
        {"lemma22", suite_lemma22}, {"lemma23", suite_lemma23}, {"claim", suite_claim},
        {"lemma32", suite_lemma32}, {"lemma33", suite_lemma33}, {"lemma34", suite_lemma34},
        {"lemma35", suite_lemma35}, {"thm36", suite_thm36},     {"thm37", suite_thm37},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"lemma22", "lemma23", "claim", "lemma32", "lemma33",
                                                   "lemma34", "lemma35", "thm36", "thm37", "all"};
    return names;
}

VerificationReport run_suite(const std::string& name, const ParamConfig& cfg) {
    if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
        throw precondition_error("unknown suite '" + name + "'");
    validate(cfg);

    VerificationReport report;
    report.suite = name;
    report.config = to_json(cfg);
    for (const auto& suite : suite_names()) {
        if (suite == "all" || (name != "all" && suite != name)) continue;
        Suite s(suite, cfg, report.checks);
        registry().at(suite)(s);
    }
    return report;
}

}  // namespace fbl
