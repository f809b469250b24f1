#include "fbl/sexpr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>

#include "fbl/errors.hpp"

namespace fbl {

namespace {

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    SExpr read_all() {
        SExpr term = read();
        skip_space();
        if (pos_ != text_.size()) throw parse_error("unexpected trailing input", pos_);
        return term;
    }

private:
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    SExpr read() {
        skip_space();
        if (pos_ >= text_.size()) throw parse_error("unexpected end of input", pos_);
        const char c = text_[pos_];
        if (c == ')') throw parse_error("unexpected ')'", pos_);
        if (c == '(') return read_list();
        return read_atom();
    }

    SExpr read_list() {
        SExpr list;
        list.is_list = true;
        list.position = pos_;
        ++pos_;
        while (true) {
            skip_space();
            if (pos_ >= text_.size()) throw parse_error("unterminated list opened", list.position);
            if (text_[pos_] == ')') {
                ++pos_;
                return list;
            }
            list.items.push_back(read());
        }
    }

    SExpr read_atom() {
        SExpr atom;
        atom.position = pos_;
        int braces = 0;
        int brackets = 0;
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (braces == 0 && brackets == 0 &&
                (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')'))
                break;
            if (c == '{') ++braces;
            if (c == '}' && --braces < 0) throw parse_error("unbalanced '}'", pos_);
            if (c == '[') ++brackets;
            if (c == ']' && --brackets < 0) throw parse_error("unbalanced ']'", pos_);
            if (!std::isspace(static_cast<unsigned char>(c))) atom.atom.push_back(c);
            ++pos_;
        }
        if (braces != 0 || brackets != 0) throw parse_error("unterminated literal", atom.position);
        return atom;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

SExpr read_sexpr(std::string_view text) { return Reader(text).read_all(); }

std::string format_real(double value) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

double parse_real(std::string_view token, std::size_t position) {
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw parse_error("malformed real '" + std::string(token) + "'", position);
    if (!std::isfinite(value)) throw parse_error("non-finite real", position);
    return value;
}

}  // namespace fbl
