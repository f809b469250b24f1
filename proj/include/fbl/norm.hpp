#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fbl/admissibility.hpp"
#include "fbl/evaluator.hpp"

namespace fbl {

/// Work per norm search: for each tuple size 1..max_tuple, `restarts`
/// independent ascents of `steps` proposals each.
struct SearchBudget {
    std::size_t restarts = 64;
    std::size_t steps = 500;
    std::size_t max_tuple = 8;
};

struct SearchOptions {
    SearchBudget budget;
    std::uint64_t seed = 0;
    /// Coordinates explored in addition to the evaluator's support hint.
    std::vector<GeneratorId> extra_coordinates;
    std::size_t enumeration_limit = kExactEnumerationLimit;
    unsigned threads = 0;
};

enum class CertificateKind { dominance, analytic };

struct UpperCertificate {
    CertificateKind kind = CertificateKind::analytic;
    std::string detail;
};

/// Lower bound with the witness that certifies it, and optional upper
/// evidence. lower_bound is reproducible from best_witness alone.
struct NormEstimate {
    double lower_bound = 0.0;
    WitnessTuple best_witness;
    std::optional<double> upper_bound;
    std::optional<UpperCertificate> upper_certificate;
    std::uint64_t evaluations_used = 0;
};

/// sum_i |f(x_i*)| over an admissible witness. The supremum is recomputed
/// with the exact oracle; a witness above 1 + tol (or one that cannot be
/// checked exactly) is rejected with inadmissible_witness.
double norm_lower_bound(const Evaluator& f, const WitnessTuple& witness, double tol = kAdmissibilityTolerance,
                        std::size_t limit = kExactEnumerationLimit);

/// Heuristic maximization of sum_i |f(x_i*)| over admissible tuples
/// supported on the evaluator's hint plus options.extra_coordinates.
///
/// Seeds are signed coordinate functionals, pairs and signed sums of them,
/// and the full basis; each restart then runs a stochastic ascent (entry
/// scaling, new coordinates, entry removal, sign flips, row moves) on the
/// dense tuple, scoring it after normalization to dual-ball supremum 1.
/// Restarts use independent seeded streams and are merged in index order,
/// so the result does not depend on the thread count.
NormEstimate norm_search(const Evaluator& f, const SearchOptions& options = {});

struct DominanceViolation {
    SparseFunctional point;
    double f_value = 0.0;
    double g_value = 0.0;
};

/// Sampled evidence for 0 <= f <= g, which would transfer g's norm bound to f.
struct DominanceReport {
    bool violated = false;
    std::size_t samples_checked = 0;
    double asserted_bound = 0.0;
    std::optional<DominanceViolation> violation;
    std::string label = "sampled, not proven";

    /// The certificate form, present only when no violation was found.
    std::optional<UpperCertificate> certificate() const;
};

/// Checks 0 <= f(x) <= g(x) + tol on `samples` random functionals drawn over
/// the union of both hints plus two further coordinates. Stops at the first
/// violation.
DominanceReport dominance_upper_bound(const Evaluator& f, const Evaluator& g, double g_norm_bound,
                                      std::size_t samples, std::uint64_t seed, double tol = 0.0);

/// Order-insensitive fingerprint of a witness, entries rounded to 12 decimals.
std::string fingerprint(const WitnessTuple& witness);

}  // namespace fbl
