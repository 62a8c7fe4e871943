#pragma once
#include "acat/dga.hpp"

namespace acat {

// Builds the m-copy DGA of a one-component knot DGA (single label 1, one
// group component of rank <= 1). Chords of the base fan out into q[j,k] for
// all j,k in [m]; the Morse data of the copy construction contributes chords
// x[j,k] (degree 0) and y[j,k] (degree -1) for j < k and one group letter per
// copy. Differentials follow the matrix shape
//
//   d Q = Psi(d_base q) + Y Q + Q Y,   d Y = Y^2,   d T = Y T + T Y
//
// where Psi is the algebra map sending the base chord q to the matrix (q[j,k]),
// the group letter t to T = (I + X) D, D = diag(t_j), X = (x[j,k]), and Y is
// the strictly upper triangular matrix of the y[j,k].
std::string pattern_name(const std::string& base, int j, int k);
bool parse_pattern_name(const std::string& name, std::string* base, int* j, int* k);

SemiFreeDGA multi_copy(const SemiFreeDGA& base, int m);

}  // namespace acat
