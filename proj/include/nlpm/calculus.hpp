#pragma once

#include "nlpm/scalar_function.hpp"

namespace nlpm {

// Eigenvalues at or below this are treated as the point 0 of the spectrum,
// i.e. they receive f(0) = F(0) and not the jump.
double zero_threshold(const HermMatrix& a, Tolerance tol = {});
double zero_threshold(double lambda_max_abs, Tolerance tol);

// Functional calculus V diag(f(lambda_i)) V*.  Eigenvalues within the zero
// threshold map through f(0); the rest through F(lambda) + k.  Throws
// DomainViolation if the spectrum escapes the declared domain.
HermMatrix apply_function(const ScalarFunctionSpec& f, const HermMatrix& a, Tolerance tol = {});

// Orthogonal projection onto the range: calculus by chi_(0,inf).
HermMatrix range_projection(const HermMatrix& a, Tolerance tol = {});

int numeric_rank(const HermMatrix& a, Tolerance tol = {});

enum class StaircaseMode { invertible, general };

// Dyadic staircase minorant of a at resolution n.
//   invertible: steps on [lambda_min, lambda_max], requires a invertible;
//   general:    steps on [0, lambda_max], first cell maps to 0.
// Always <= a, and refining n in general mode is Loewner-increasing.
HermMatrix staircase_lower(const HermMatrix& a, int n, StaircaseMode mode, Tolerance tol = {});

// Scalar versions of the staircase step functions (used by tests and by the
// matrix routine itself).
double staircase_value(double t, double floor, double ceil, int n);

}  // namespace nlpm
