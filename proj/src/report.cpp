#include "fbl/report.hpp"

#include <cstdio>
#include <sstream>

#include "fbl/errors.hpp"
#include "fbl/sexpr.hpp"

namespace fbl {

using json = nlohmann::ordered_json;

namespace {

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

const char* mode_name(AdmissibilityMode m) { return m == AdmissibilityMode::exact ? "exact" : "stochastic_lower"; }

}  // namespace

std::string CheckRecord::inputs_digest() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(inputs.dump())));
    return buf;
}

bool VerificationReport::passed() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

json VerificationReport::to_json(bool with_timing) const {
    json out;
    out["suite"] = suite;
    out["status"] = passed() ? "pass" : "fail";
    out["config"] = config;
    json list = json::array();
    std::size_t failures = 0;
    for (const auto& c : checks) {
        json r;
        r["id"] = c.id;
        r["suite"] = c.suite;
        r["description"] = c.description;
        r["inputs_digest"] = c.inputs_digest();
        r["inputs"] = c.inputs;
        r["computed"] = c.computed;
        r["bound"] = c.bound ? json(*c.bound) : json(nullptr);
        r["tolerance"] = c.tolerance;
        r["pass"] = c.pass;
        r["seed"] = c.seed;
        list.push_back(std::move(r));
        failures += c.pass ? 0 : 1;
    }
    out["checks_total"] = checks.size();
    out["checks_failed"] = failures;
    out["checks"] = std::move(list);
    if (with_timing) {
        json timing;
        double total = 0.0;
        json per = json::object();
        for (const auto& c : checks) {
            per[c.id] = c.runtime_seconds;
            total += c.runtime_seconds;
        }
        timing["total_seconds"] = total;
        timing["checks"] = std::move(per);
        out["timing"] = std::move(timing);
    }
    return out;
}

std::string VerificationReport::to_text() const {
    std::ostringstream out;
    out << "suite " << suite << "\n";
    std::size_t failures = 0;
    for (const auto& c : checks) {
        out << (c.pass ? "PASS  " : "FAIL  ") << c.id;
        if (c.computed.contains("value")) {
            const auto& v = c.computed["value"];
            out << "  value=" << (v.is_number_float() ? format_real(v.get<double>()) : v.dump());
        }
        if (c.bound) out << "  bound=" << format_real(*c.bound);
        out << "  tol=" << format_real(c.tolerance);
        char secs[32];
        std::snprintf(secs, sizeof secs, "%.3fs", c.runtime_seconds);
        out << "  " << secs << "\n      " << c.description << "\n";
        if (!c.pass) ++failures;
    }
    out << checks.size() - failures << "/" << checks.size() << " checks passed: " << (failures ? "FAIL" : "PASS")
        << "\n";
    return out.str();
}

json to_json(const SparseFunctional& x) {
    json entries = json::array();
    for (const auto& [id, value] : x.entries()) entries.push_back(json::array({id.to_string(), value}));
    json out;
    out["ambient"] = x.ambient().to_string();
    out["entries"] = std::move(entries);
    return out;
}

json to_json(const WitnessTuple& w) {
    json list = json::array();
    for (const auto& x : w.functionals) list.push_back(to_json(x));
    json out;
    out["functionals"] = std::move(list);
    out["dual_ball_sup"] = w.dual_ball_sup;
    out["mode"] = mode_name(w.mode);
    out["scale_factor"] = w.scale_factor;
    return out;
}

json to_json(const NormEstimate& e) {
    json out;
    out["lower_bound"] = e.lower_bound;
    out["witness"] = to_json(e.best_witness);
    out["upper_bound"] = e.upper_bound ? json(*e.upper_bound) : json(nullptr);
    if (e.upper_certificate) {
        json cert;
        cert["kind"] = e.upper_certificate->kind == CertificateKind::dominance ? "dominance" : "analytic";
        cert["detail"] = e.upper_certificate->detail;
        out["upper_certificate"] = std::move(cert);
    } else {
        out["upper_certificate"] = nullptr;
    }
    out["evaluations_used"] = e.evaluations_used;
    return out;
}

json to_json(const Decomposition& d) {
    json terms = json::array();
    for (const auto& [lambda, subset] : d.terms) {
        json t;
        t["lambda"] = lambda;
        t["subset"] = subset.to_string();
        terms.push_back(std::move(t));
    }
    json out;
    out["source"] = std::vector<double>(d.source.data(), d.source.data() + d.source.size());
    out["terms"] = std::move(terms);
    return out;
}

json to_json(const WitnessSelection& s) {
    json out;
    out["eps"] = s.eps;
    out["indices"] = s.indices;
    json supports = json::array();
    for (const auto& f : s.supports) {
        json ids = json::array();
        for (const auto& id : f) ids.push_back(id.to_string());
        supports.push_back(std::move(ids));
    }
    out["supports"] = std::move(supports);
    json witnesses = json::array();
    for (const auto& y : s.witnesses) witnesses.push_back(to_json(y));
    out["witnesses"] = std::move(witnesses);
    out["values"] = s.values;
    return out;
}

json to_json(const ParamConfig& cfg) {
    json out;
    if (cfg.n_seq.prefix().empty()) out["n_seq"] = "n+1";
    else out["n_seq"] = cfg.n_seq.prefix();
    out["truncation"] = cfg.truncation;
    out["eps"] = cfg.eps;
    out["tol"] = cfg.tol;
    out["budget"] = {{"restarts", cfg.budget.restarts}, {"steps", cfg.budget.steps}, {"max_tuple", cfg.budget.max_tuple}};
    out["seed"] = cfg.seed;
    out["enumeration_limit"] = cfg.enumeration_limit;
    return out;
}

SparseFunctional functional_from_json(const json& j) {
    const auto ambient_name = j.at("ambient").get<std::string>();
    std::vector<SparseFunctional::Entry> entries;
    for (const auto& e : j.at("entries")) entries.emplace_back(parse_generator_id(e.at(0).get<std::string>()), e.at(1).get<double>());
    Ambient ambient;
    if (ambient_name == "dual") ambient = Ambient::dual();
    else if (ambient_name == "cube") ambient = Ambient::cube(KeyKind::index);
    else if (ambient_name == "cube-subset") ambient = Ambient::cube(KeyKind::subset);
    else throw parse_error("unknown ambient '" + ambient_name + "'", 0);
    return SparseFunctional(ambient, std::move(entries));
}

WitnessTuple witness_from_json(const json& j) {
    WitnessTuple w;
    for (const auto& x : j.at("functionals")) w.functionals.push_back(functional_from_json(x));
    w.dual_ball_sup = j.at("dual_ball_sup").get<double>();
    w.mode = j.at("mode").get<std::string>() == "exact" ? AdmissibilityMode::exact : AdmissibilityMode::stochastic_lower;
    w.scale_factor = j.at("scale_factor").get<double>();
    return w;
}

}  // namespace fbl
