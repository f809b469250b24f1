#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fbl/embedding.hpp"
#include "fbl/norm.hpp"
#include "fbl/quotient.hpp"

namespace fbl {

/// One verified claim. `inputs` and `computed` hold everything needed to
/// re-check the claim without rerunning searches (witnesses in full).
struct CheckRecord {
    std::string id;
    std::string suite;
    std::string description;
    nlohmann::ordered_json inputs;
    nlohmann::ordered_json computed;
    std::optional<double> bound;
    double tolerance = 0.0;
    bool pass = false;
    std::uint64_t seed = 0;
    double runtime_seconds = 0.0;

    /// FNV-1a of the serialized inputs, as 16 hex digits.
    std::string inputs_digest() const;
};

struct VerificationReport {
    std::string suite;
    nlohmann::ordered_json config;
    std::vector<CheckRecord> checks;

    bool passed() const;
    /// Runtimes go to a separate "timing" member, omitted when
    /// `with_timing` is false; the rest is a pure function of suite and config.
    nlohmann::ordered_json to_json(bool with_timing = true) const;
    std::string to_text() const;
};

const std::vector<std::string>& suite_names();

/// Runs a named suite (or "all"). Throws config_error for an invalid config
/// and precondition_error for an unknown name, before any check runs.
VerificationReport run_suite(const std::string& name, const ParamConfig& cfg);

nlohmann::ordered_json to_json(const SparseFunctional& x);
nlohmann::ordered_json to_json(const WitnessTuple& w);
nlohmann::ordered_json to_json(const NormEstimate& e);
nlohmann::ordered_json to_json(const Decomposition& d);
nlohmann::ordered_json to_json(const WitnessSelection& s);
nlohmann::ordered_json to_json(const ParamConfig& cfg);

/// Reads a functional back from its JSON form.
SparseFunctional functional_from_json(const nlohmann::ordered_json& j);
WitnessTuple witness_from_json(const nlohmann::ordered_json& j);

}  // namespace fbl
