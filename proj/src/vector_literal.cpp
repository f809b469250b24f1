#include "fbl/vector_literal.hpp"

#include <charconv>
#include <map>

#include "fbl/errors.hpp"
#include "fbl/sexpr.hpp"

namespace fbl {

Eigen::VectorXd parse_vector_literal(std::string_view text) {
    std::map<std::uint32_t, double> entries;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string_view::npos) end = text.size();
        std::size_t first = start;
        while (first < end && (text[first] == ' ' || text[first] == '\t')) ++first;
        std::size_t last = end;
        while (last > first && (text[last - 1] == ' ' || text[last - 1] == '\t')) --last;
        if (first == last) {
            if (end < text.size() || !entries.empty()) throw parse_error("empty vector entry", first);
        } else {
            const std::string_view item = text.substr(first, last - first);
            const auto colon = item.find(':');
            if (colon == std::string_view::npos) throw parse_error("expected '<index>:<value>'", first);
            std::uint32_t index = 0;
            const auto [ptr, ec] = std::from_chars(item.data(), item.data() + colon, index);
            if (ec != std::errc() || ptr != item.data() + colon || index == 0)
                throw parse_error("bad coordinate index '" + std::string(item.substr(0, colon)) + "'", first);
            if (entries.count(index)) throw parse_error("repeated coordinate " + std::to_string(index), first);
            entries[index] = parse_real(item.substr(colon + 1), first + colon + 1);
        }
        start = end + 1;
    }
    Eigen::VectorXd x = Eigen::VectorXd::Zero(entries.empty() ? 0 : entries.rbegin()->first);
    for (const auto& [index, value] : entries) x(index - 1) = value;
    return x;
}

std::string format_vector_literal(const Eigen::VectorXd& x) {
    std::string out;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (x(i) == 0.0) continue;
        if (!out.empty()) out += ", ";
        out += std::to_string(i + 1) + ":" + format_real(x(i));
    }
    return out;
}

}  // namespace fbl
