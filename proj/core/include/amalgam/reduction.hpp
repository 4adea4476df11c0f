#pragma once

#include "amalgam/algdata.hpp"

namespace amalgam {

/// Cuts A1 *_D A2 by a projection made of one minimal projection per block
/// of D. The result has D = C^{l0}, A_s blocks n'_s(i) = sum_j mu_s(i,j), and
/// the same multiplicity matrices. Idempotent; abelian-D instances are fixed.
/// Throws InvalidInstance on invalid input.
AmalgamInstance compress(const AmalgamInstance& instance);

}  // namespace amalgam
