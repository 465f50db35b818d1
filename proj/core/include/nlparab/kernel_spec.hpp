#pragma once

#include <map>
#include <string>

#include "nlparab/kernel.hpp"

namespace nlparab {

// flat decimal key-value form of a kernel, the shape config files carry
using KernelSpec = std::map<std::string, std::string>;

// Builds a kernel from its flat description. kind selects the family:
//   fractional   : dim, alpha, and either coef or
//                  normalization in {exact, two_minus_alpha} (default exact)
//   sequence     : n (order alpha_n = 2 - 1/(n+1)), optional dim
//   cone         : alpha, axis_x, axis_y, aperture, optional coef (dim 2)
//   custom-table : dim, alpha, near_coef, near_alpha, radii, values,
//                  tail_coef, tail_alpha (radii/values comma-separated)
// alpha0 and lambda override the class certificate when present. Missing or
// malformed entries raise std::invalid_argument naming the field.
Kernel kernel_from_spec(const KernelSpec& spec);

// Serializes a kernel back to the flat form; round-trips through
// kernel_from_spec to an identical density. Custom callable densities and
// attached coefficients have no flat form and are rejected.
KernelSpec kernel_to_spec(const Kernel& kernel);

}  // namespace nlparab
