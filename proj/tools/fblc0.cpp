#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fbl/errors.hpp"
#include "fbl/literal.hpp"
#include "fbl/report.hpp"
#include "fbl/sexpr.hpp"
#include "fbl/vector_literal.hpp"

namespace {

using json = nlohmann::ordered_json;

std::vector<std::uint64_t> parse_sequence(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        if (first == std::string::npos) throw fbl::config_error("empty entry in --n-seq");
        std::size_t used = 0;
        const auto value = std::stoull(item.substr(first), &used);
        if (item.find_first_not_of(" \t", first + used) != std::string::npos)
            throw fbl::config_error("bad entry '" + item + "' in --n-seq");
        out.push_back(value);
    }
    return out;
}

void print_witness(std::ostream& out, const fbl::WitnessTuple& w) {
    out << "witness: " << w.functionals.size() << " functional(s), dual-ball sup "
        << fbl::format_real(w.dual_ball_sup) << (w.mode == fbl::AdmissibilityMode::exact ? " (exact)" : " (stochastic)")
        << "\n";
    for (const auto& x : w.functionals) out << "  " << x.to_string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Free Banach lattice norms, the quotient onto c0 and the c0 embedding"};
    app.set_config("--config", "", "Read options from a TOML/INI file");
    app.require_subcommand(1);
    app.fallthrough();

    fbl::ParamConfig cfg;
    std::string n_seq;
    std::string format = "text";
    std::string out_path;

    app.add_option("--n-seq", n_seq, "Prefix of the increasing sequence N_1, N_2, ... (continued by +1)")
        ->envname("FBLC0_N_SEQ");
    app.add_option("--trunc", cfg.truncation, "Largest coordinate in use")->envname("FBLC0_TRUNC");
    app.add_option("--budget", cfg.budget.restarts, "Search restarts per tuple size")->envname("FBLC0_BUDGET");
    app.add_option("--steps", cfg.budget.steps, "Ascent steps per restart")->envname("FBLC0_STEPS");
    app.add_option("--max-tuple", cfg.budget.max_tuple, "Largest tuple size searched")->envname("FBLC0_MAX_TUPLE");
    app.add_option("--seed", cfg.seed, "Base seed")->envname("FBLC0_SEED");
    app.add_option("--eps", cfg.eps, "Slack of the subsequence selection")->envname("FBLC0_EPS");
    app.add_option("--tol", cfg.tol, "Numerical tolerance")->envname("FBLC0_TOL");
    app.add_option("--limit", cfg.enumeration_limit, "Largest support for exact sign enumeration")
        ->envname("FBLC0_LIMIT");
    app.add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")->envname("FBLC0_THREADS");
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->envname("FBLC0_FORMAT");
    app.add_option("--out", out_path, "Write output to a file instead of stdout")->envname("FBLC0_OUT");

    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    std::string suite;
    verify->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(fbl::suite_names()));
    bool timing = true;
    verify->add_flag("!--no-timing", timing, "Leave runtimes out of the JSON report");

    auto* norm = app.add_subcommand("norm", "Estimate the free lattice norm of an expression or evaluator");
    std::string literal;
    std::string space_name = "dual";
    std::string dominator;
    double bound = 1.0;
    std::size_t samples = 100000;
    norm->add_option("literal", literal, "e.g. f:3, (add f:1 f:2), (sup (gen 1) (gen 2))")->required();
    norm->add_option("--space", space_name, "Ambient of the evaluation points")
        ->check(CLI::IsMember({"dual", "cube"}));
    norm->add_option("--dominator", dominator, "Evaluator g with 0 <= f <= g to test by sampling");
    norm->add_option("--bound", bound, "Known norm bound of the dominator");
    norm->add_option("--samples", samples, "Dominance samples");

    auto* decompose = app.add_subcommand("decompose", "Chain decomposition of a nonnegative vector");
    std::string vector;
    decompose->add_option("vector", vector, "e.g. \"1:0.5, 2:1, 3:0.25\"")->required();

    auto* select = app.add_subcommand("select", "Disjoint witnesses for a family with f_n(x_n*) = 1");
    std::string family;
    std::size_t length = 16;
    select->add_option("family", family, "coordinate: f_n = (gen n)^+ at e_n; phi: f_n = (gen {n})^+ at the quotient points")
        ->required()
        ->check(CLI::IsMember({"coordinate", "phi"}));
    select->add_option("--length", length, "Number of members to select");

    CLI11_PARSE(app, argc, argv);

    std::ostringstream out;
    int status = 0;
    try {
        if (!n_seq.empty()) cfg.n_seq = fbl::GrowthSequence(parse_sequence(n_seq));
        fbl::validate(cfg);
        const bool as_json = format == "json";

        if (*verify) {
            const auto report = fbl::run_suite(suite, cfg);
            if (as_json) out << report.to_json(timing).dump(2) << "\n";
            else out << report.to_text();
            status = report.passed() ? 0 : 1;
        } else if (*norm) {
            const auto space = space_name == "cube" ? fbl::Space::cube : fbl::Space::dual;
            const auto f = fbl::parse_evaluator(literal, space, cfg);
            auto estimate = fbl::norm_search(f, cfg.search_options());
            std::optional<fbl::DominanceReport> dom;
            if (!dominator.empty()) {
                const auto g = fbl::parse_evaluator(dominator, space, cfg);
                dom = fbl::dominance_upper_bound(f, g, bound, samples, cfg.seed, cfg.tol);
                if (auto cert = dom->certificate()) {
                    estimate.upper_bound = bound;
                    estimate.upper_certificate = cert;
                }
            }
            if (as_json) {
                json j;
                j["evaluator"] = f.name();
                j["estimate"] = fbl::to_json(estimate);
                if (dom) {
                    j["dominance"] = {{"dominator", dominator},
                                      {"violated", dom->violated},
                                      {"samples_checked", dom->samples_checked},
                                      {"label", dom->label}};
                    if (dom->violation)
                        j["dominance"]["violation"] = {{"point", fbl::to_json(dom->violation->point)},
                                                       {"f", dom->violation->f_value},
                                                       {"g", dom->violation->g_value}};
                }
                j["config"] = fbl::to_json(cfg);
                out << j.dump(2) << "\n";
            } else {
                out << "evaluator: " << f.name() << "\n";
                out << "lower_bound: " << fbl::format_real(estimate.lower_bound) << "\n";
                print_witness(out, estimate.best_witness);
                out << "evaluations: " << estimate.evaluations_used << "\n";
                if (dom) {
                    if (dom->violated) {
                        out << "dominance: violated at " << dom->violation->point.to_string() << " (f = "
                            << fbl::format_real(dom->violation->f_value)
                            << ", g = " << fbl::format_real(dom->violation->g_value) << ")\n";
                    } else {
                        out << "upper_bound: " << fbl::format_real(bound) << " (dominance on " << dom->samples_checked
                            << " samples, " << dom->label << ")\n";
                    }
                }
            }
        } else if (*decompose) {
            const auto d = fbl::greedy_decompose(fbl::parse_vector_literal(vector));
            if (as_json) {
                out << fbl::to_json(d).dump(2) << "\n";
            } else {
                for (const auto& [lambda, subset] : d.terms)
                    out << fbl::format_real(lambda) << "  " << subset.to_string() << "\n";
            }
        } else if (*select) {
            std::vector<fbl::FamilyMember> members;
            for (std::uint32_t n = 1; n <= cfg.truncation; ++n) {
                if (family == "coordinate")
                    members.push_back({fbl::pos(fbl::gen(n)),
                                       fbl::SparseFunctional::coordinate(fbl::Ambient::cube(), fbl::GeneratorId(n))});
                else
                    members.push_back({fbl::pos(fbl::gen(fbl::SubsetGenerator{n})), fbl::phi_point(n, cfg.truncation)});
            }
            const auto sel = fbl::select_subsequence(members, cfg.eps, length);
            if (as_json) {
                out << fbl::to_json(sel).dump(2) << "\n";
            } else {
                out << "eps: " << fbl::format_real(sel.eps) << "\n";
                for (std::size_t k = 0; k < sel.indices.size(); ++k) {
                    out << "k=" << k + 1 << "  n=" << sel.indices[k] << "  y=" << sel.witnesses[k].to_string()
                        << "  sum=" << fbl::format_real(sel.partial_sum(k + 1)) << "\n";
                }
                out << "coordinate admissibility: " << fbl::format_real(fbl::coordinate_admissibility(sel.witnesses))
                    << "\n";
            }
        }
    } catch (const fbl::parse_error& err) {
        std::cerr << "parse error: " << err.what() << "\n";
        return 2;
    } catch (const fbl::config_error& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }

    if (out_path.empty()) {
        std::cout << out.str();
    } else {
        std::ofstream file(out_path);
        if (!file) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return 2;
        }
        file << out.str();
    }
    return status;
}
