#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace fbl {

/// A finite nonempty set of positive integers: one generator of the free
/// lattice over the finite parts of the naturals.
class SubsetGenerator {
public:
    /// Sorts and deduplicates; throws precondition_error when empty or when an
    /// element is 0.
    explicit SubsetGenerator(std::vector<std::uint32_t> elements);
    SubsetGenerator(std::initializer_list<std::uint32_t> elements)
        : SubsetGenerator(std::vector<std::uint32_t>(elements)) {}

    const std::vector<std::uint32_t>& elements() const noexcept { return elements_; }
    std::size_t size() const noexcept { return elements_.size(); }
    std::uint32_t max_element() const noexcept { return elements_.back(); }

    bool contains(std::uint32_t n) const;
    bool is_subset_of(const SubsetGenerator& other) const;

    /// `{1,3,4}`
    std::string to_string() const;

    friend bool operator==(const SubsetGenerator&, const SubsetGenerator&) = default;
    friend auto operator<=>(const SubsetGenerator&, const SubsetGenerator&) = default;

private:
    std::vector<std::uint32_t> elements_;
};

/// Identifier of a free generator: either a positive coordinate index (a point
/// of an abstract set, or a c0 coordinate) or a subset literal.
class GeneratorId {
public:
    /// Index must be positive.
    explicit GeneratorId(std::uint32_t index);
    GeneratorId(SubsetGenerator subset) : value_(std::move(subset)) {}

    bool is_index() const noexcept { return std::holds_alternative<std::uint32_t>(value_); }
    bool is_subset() const noexcept { return !is_index(); }

    std::uint32_t index() const;
    const SubsetGenerator& subset() const;

    /// `3` or `{1,3}`
    std::string to_string() const;

    friend bool operator==(const GeneratorId&, const GeneratorId&) = default;
    friend auto operator<=>(const GeneratorId&, const GeneratorId&) = default;

private:
    std::variant<std::uint32_t, SubsetGenerator> value_;
};

using DependencySet = std::set<GeneratorId>;

/// Parses `3` or `{1,3}`; throws parse_error.
GeneratorId parse_generator_id(const std::string& text);

}  // namespace fbl
