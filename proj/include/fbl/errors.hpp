#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fbl {

/// Input lies outside the ambient context of an operation (unknown generator,
/// wrong functional space, truncation too small).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A documented precondition of the call was violated by the caller.
class precondition_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input that is well-formed but carries no information (all-zero tuple).
class degenerate_input : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class config_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Raised when a witness tuple fails the admissibility oracle.
class inadmissible_witness : public std::domain_error {
public:
    explicit inadmissible_witness(double dual_ball_sup)
        : std::domain_error("witness is not admissible: dual-ball supremum " +
                            std::to_string(dual_ball_sup) + " exceeds 1"),
          dual_ball_sup_(dual_ball_sup) {}

    double dual_ball_sup() const noexcept { return dual_ball_sup_; }

private:
    double dual_ball_sup_;
};

/// The exhaustive sign oracle refuses supports larger than its limit.
class enumeration_limit_exceeded : public std::domain_error {
public:
    enumeration_limit_exceeded(std::size_t support, std::size_t limit)
        : std::domain_error("joint support " + std::to_string(support) +
                            " exceeds exact enumeration limit " + std::to_string(limit) +
                            "; use ball_sup_search"),
          support_(support) {}

    std::size_t support() const noexcept { return support_; }

private:
    std::size_t support_;
};

class truncation_exhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fbl
