#include "fbl/generator.hpp"

#include <algorithm>
#include <charconv>

#include "fbl/errors.hpp"

namespace fbl {

SubsetGenerator::SubsetGenerator(std::vector<std::uint32_t> elements) : elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    if (elements_.empty()) throw precondition_error("subset generator must be nonempty");
    if (elements_.front() == 0) throw precondition_error("subset generator elements must be positive");
}

bool SubsetGenerator::contains(std::uint32_t n) const {
    return std::binary_search(elements_.begin(), elements_.end(), n);
}

bool SubsetGenerator::is_subset_of(const SubsetGenerator& other) const {
    return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(), elements_.end());
}

std::string SubsetGenerator::to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(elements_[i]);
    }
    out += '}';
    return out;
}

GeneratorId::GeneratorId(std::uint32_t index) : value_(index) {
    if (index == 0) throw precondition_error("generator index must be positive");
}

std::uint32_t GeneratorId::index() const {
    if (!is_index()) throw domain_error("generator " + to_string() + " is a subset, not an index");
    return std::get<std::uint32_t>(value_);
}

const SubsetGenerator& GeneratorId::subset() const {
    if (!is_subset()) throw domain_error("generator " + to_string() + " is an index, not a subset");
    return std::get<SubsetGenerator>(value_);
}

std::string GeneratorId::to_string() const {
    if (is_index()) return std::to_string(std::get<std::uint32_t>(value_));
    return std::get<SubsetGenerator>(value_).to_string();
}

namespace {

std::uint32_t parse_positive(std::string_view text, std::size_t offset) {
    std::uint32_t value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) throw parse_error("expected positive integer '" + std::string(text) + "'", offset);
    if (value == 0) throw parse_error("generator indices start at 1", offset);
    return value;
}

std::string_view trim(std::string_view s, std::size_t& offset) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
        ++offset;
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

GeneratorId parse_generator_id(const std::string& text) {
    std::size_t offset = 0;
    std::string_view s = trim(text, offset);
    if (s.empty()) throw parse_error("empty generator id", offset);
    if (s.front() != '{') return GeneratorId(parse_positive(s, offset));
    if (s.back() != '}') throw parse_error("unterminated subset literal", offset + s.size());
    std::string_view body = s.substr(1, s.size() - 2);
    std::size_t pos = offset + 1;
    std::vector<std::uint32_t> elements;
    while (true) {
        auto comma = body.find(',');
        std::size_t part_offset = pos;
        std::string_view part = trim(body.substr(0, comma), part_offset);
        if (part.empty()) throw parse_error("empty element in subset literal", part_offset);
        elements.push_back(parse_positive(part, part_offset));
        if (comma == std::string_view::npos) break;
        pos += comma + 1;
        body.remove_prefix(comma + 1);
    }
    return GeneratorId(SubsetGenerator(std::move(elements)));
}

}  // namespace fbl
