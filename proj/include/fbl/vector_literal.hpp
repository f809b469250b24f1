#pragma once

#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace fbl {

/// Finitely supported vectors are stored densely: entry i holds coordinate i+1.
///
/// Parses `1:0.5, 3:-2`; an empty literal is the zero vector. Indices are
/// positive and may not repeat. Throws parse_error.
Eigen::VectorXd parse_vector_literal(std::string_view text);

/// Nonzero coordinates in the literal form above.
std::string format_vector_literal(const Eigen::VectorXd& x);

}  // namespace fbl
