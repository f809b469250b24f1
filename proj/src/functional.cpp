#include "fbl/functional.hpp"

#include <algorithm>
#include <cmath>

#include "fbl/errors.hpp"
#include "fbl/sexpr.hpp"

namespace fbl {

std::string Ambient::to_string() const {
    if (space == Space::dual) return "dual";
    return keys == KeyKind::index ? "cube" : "cube-subset";
}

SparseFunctional::SparseFunctional(Ambient ambient, std::vector<Entry> entries) : ambient_(ambient) {
    if (ambient.space == Space::dual && ambient.keys != KeyKind::index)
        throw precondition_error("dual functionals are indexed by coordinates");
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& [id, value] = entries[i];
        if (!ambient.accepts(id))
            throw precondition_error("generator " + id.to_string() + " does not belong to ambient " +
                                     ambient.to_string());
        if (i > 0 && entries[i - 1].first == id) throw precondition_error("duplicate entry for " + id.to_string());
        if (!std::isfinite(value)) throw precondition_error("non-finite entry at " + id.to_string());
        if (ambient.space == Space::cube && std::fabs(value) > 1.0)
            throw precondition_error("cube entry at " + id.to_string() + " lies outside [-1,1]");
    }
    std::erase_if(entries, [](const Entry& e) { return e.second == 0.0; });
    entries_ = std::move(entries);
}

SparseFunctional SparseFunctional::coordinate(Ambient ambient, GeneratorId id, double value) {
    return SparseFunctional(ambient, {{std::move(id), value}});
}

double SparseFunctional::operator()(const GeneratorId& id) const {
    if (!ambient_.accepts(id))
        throw domain_error("generator " + id.to_string() + " cannot be resolved in ambient " + ambient_.to_string());
    auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                               [](const Entry& e, const GeneratorId& key) { return e.first < key; });
    return (it != entries_.end() && it->first == id) ? it->second : 0.0;
}

double SparseFunctional::at(std::uint32_t index) const {
    if (ambient_.keys != KeyKind::index) throw domain_error("coordinate access on a subset-keyed functional");
    // Index ids sort before subsets and by value, so a linear scan stops early.
    for (const auto& [id, value] : entries_) {
        const auto k = id.index();
        if (k == index) return value;
        if (k > index) break;
    }
    return 0.0;
}

double SparseFunctional::l1_norm() const {
    double total = 0.0;
    for (const auto& e : entries_) total += std::fabs(e.second);
    return total;
}

double SparseFunctional::max_abs() const {
    double best = 0.0;
    for (const auto& e : entries_) best = std::max(best, std::fabs(e.second));
    return best;
}

SparseFunctional SparseFunctional::scaled(double factor) const {
    auto entries = entries_;
    for (auto& e : entries) e.second *= factor;
    return SparseFunctional(ambient_, std::move(entries));
}

std::string SparseFunctional::to_string() const {
    std::string out = "ambient=" + std::string(ambient_.space == Space::dual ? "dual" : "cube") + ";";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        out += i ? ", " : " ";
        out += entries_[i].first.to_string() + ":" + format_real(entries_[i].second);
    }
    return out;
}

namespace {

std::size_t skip_spaces(std::string_view text, std::size_t pos) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    return pos;
}

}  // namespace

SparseFunctional parse_functional(std::string_view text) {
    const auto semi = text.find(';');
    if (semi == std::string_view::npos) throw parse_error("expected 'ambient=...;'", 0);
    std::size_t pos = skip_spaces(text, 0);
    std::string_view head = text.substr(pos, semi - pos);
    while (!head.empty() && head.back() == ' ') head.remove_suffix(1);
    if (head.substr(0, 8) != "ambient=") throw parse_error("expected 'ambient='", pos);
    const std::string_view space = head.substr(8);
    Space sp;
    if (space == "cube") sp = Space::cube;
    else if (space == "dual") sp = Space::dual;
    else throw parse_error("unknown ambient '" + std::string(space) + "'", pos + 8);

    std::vector<SparseFunctional::Entry> entries;
    pos = semi + 1;
    int depth = 0;
    std::size_t start = pos;
    auto flush = [&](std::size_t end) {
        const std::size_t first = skip_spaces(text, start);
        std::string_view item = text.substr(first, end - first);
        while (!item.empty() && (item.back() == ' ' || item.back() == '\t')) item.remove_suffix(1);
        if (item.empty()) {
            if (end < text.size()) throw parse_error("empty entry", first);
            return;
        }
        const auto colon = item.rfind(':');
        if (colon == std::string_view::npos) throw parse_error("expected '<id>:<value>'", first);
        GeneratorId id = [&] {
            try {
                return parse_generator_id(std::string(item.substr(0, colon)));
            } catch (const parse_error&) {
                throw parse_error("bad generator id '" + std::string(item.substr(0, colon)) + "'", first);
            } catch (const precondition_error& err) {
                throw parse_error(err.what(), first);
            }
        }();
        std::string_view value_text = item.substr(colon + 1);
        const std::size_t value_pos = first + colon + 1;
        entries.emplace_back(std::move(id), parse_real(value_text, value_pos));
    };
    for (; pos < text.size(); ++pos) {
        if (text[pos] == '{') ++depth;
        else if (text[pos] == '}') --depth;
        else if (text[pos] == ',' && depth == 0) {
            flush(pos);
            start = pos + 1;
        }
    }
    flush(text.size());

    KeyKind keys = KeyKind::index;
    if (!entries.empty() && entries.front().first.is_subset()) keys = KeyKind::subset;
    if (sp == Space::dual && keys == KeyKind::subset) throw parse_error("dual functionals take coordinate indices", semi);
    try {
        return SparseFunctional(Ambient{sp, keys}, std::move(entries));
    } catch (const precondition_error& err) {
        throw parse_error(err.what(), semi + 1);
    }
}

std::vector<GeneratorId> joint_support(const std::vector<SparseFunctional>& tuple) {
    std::vector<GeneratorId> ids;
    for (const auto& f : tuple)
        for (const auto& e : f.entries()) ids.push_back(e.first);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

}  // namespace fbl
