#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fbl/generator.hpp"

namespace fbl {

/// Where a functional lives: the cube [-1,1]^A (keys are indices or subset
/// literals) or the dual sequence space l1 = c0* (keys are coordinates).
enum class Space { cube, dual };
enum class KeyKind { index, subset };

struct Ambient {
    Space space = Space::dual;
    KeyKind keys = KeyKind::index;

    static constexpr Ambient dual() { return {Space::dual, KeyKind::index}; }
    static constexpr Ambient cube(KeyKind keys = KeyKind::index) { return {Space::cube, keys}; }

    bool accepts(const GeneratorId& id) const {
        return keys == KeyKind::index ? id.is_index() : id.is_subset();
    }
    std::string to_string() const;

    friend bool operator==(const Ambient&, const Ambient&) = default;
};

/// Finitely supported functional. Unlisted coordinates are exactly 0; zero
/// entries are pruned on construction so that the support is canonical.
class SparseFunctional {
public:
    using Entry = std::pair<GeneratorId, double>;

    explicit SparseFunctional(Ambient ambient = Ambient::dual()) : ambient_(ambient) {}

    /// Throws precondition_error on duplicate ids, non-finite values, cube
    /// entries outside [-1,1], or ids of the wrong kind for the ambient.
    SparseFunctional(Ambient ambient, std::vector<Entry> entries);

    /// `value` times the indicator of one generator (e_n* in l1 for the dual).
    static SparseFunctional coordinate(Ambient ambient, GeneratorId id, double value = 1.0);

    const Ambient& ambient() const noexcept { return ambient_; }
    const std::vector<Entry>& entries() const noexcept { return entries_; }
    std::size_t support_size() const noexcept { return entries_.size(); }
    bool is_zero() const noexcept { return entries_.empty(); }

    /// Value at a generator; 0 off the support. Throws domain_error naming the
    /// id when it does not belong to the ambient.
    double operator()(const GeneratorId& id) const;
    /// Value at a coordinate index (index-keyed ambients only).
    double at(std::uint32_t index) const;

    double l1_norm() const;
    double max_abs() const;

    /// Multiplies every entry; cube bounds are re-checked.
    SparseFunctional scaled(double factor) const;

    /// `ambient=dual; 1:0.5, 3:-0.25`
    std::string to_string() const;

    friend bool operator==(const SparseFunctional&, const SparseFunctional&) = default;

private:
    Ambient ambient_;
    std::vector<Entry> entries_;
};

/// Parses the text form written by SparseFunctional::to_string. The key kind
/// of a cube functional is inferred from its literals (index by default).
SparseFunctional parse_functional(std::string_view text);

/// Ordered union of the supports.
std::vector<GeneratorId> joint_support(const std::vector<SparseFunctional>& tuple);

}  // namespace fbl
