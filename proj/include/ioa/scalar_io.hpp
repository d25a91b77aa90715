#pragma once

#include <string>

#include "ioa/cyclo.hpp"

namespace ioa {

// Textual scalar syntax used by instance files and reports:
//   rational:  a or a/b
//   phase:     z(k,N)  meaning zeta_N^k
//   products/sums with *, +, -, and parentheses.
Cyclo parse_scalar(const std::string& text, long ambient_order);
std::string scalar_to_string(const Cyclo& c);

}  // namespace ioa
