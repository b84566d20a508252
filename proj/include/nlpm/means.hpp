#pragma once

#include "nlpm/calculus.hpp"

namespace nlpm {

// Binary operator mean determined by a representing function f:
//   a sigma b = b^{1/2} f(b^{-1/2} a b^{-1/2}) b^{1/2}.
struct MeanSpec {
    std::string name;
    ScalarFunctionSpec representing_function;
};

MeanSpec make_mean(std::string name, ScalarFunctionSpec f);

// b must be strictly positive definite; the non-invertible case is a hard
// Singular error (there is no canonical value there).  epsilon_shift > 0
// computes the mean of (a + eps I, b + eps I) instead, as a diagnostic.
HermMatrix mean_eval(const MeanSpec& m, const HermMatrix& a, const HermMatrix& b,
                     Tolerance tol = {}, double epsilon_shift = 0.0);

// a^{1/2} (a^{-1/2} b a^{-1/2})^{1/2} a^{1/2}; a strictly positive definite,
// b PSD.  Symmetric in (a, b) when both are invertible.
HermMatrix geometric_mean(const HermMatrix& a, const HermMatrix& b, Tolerance tol = {},
                          double epsilon_shift = 0.0);

}  // namespace nlpm
