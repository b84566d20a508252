#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "nlpm/herm.hpp"

namespace nlpm {

struct Interval {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
};

// A scalar function on [0, inf) in the normal form f(t) = F(t) + k*chi_(0,inf)(t):
// continuous part F plus a jump of size k at 0.  So f(0) = F(0) and the right
// limit at 0 is F(0) + k.
struct ScalarFunctionSpec {
    std::string name;
    std::function<double(double)> continuous_part;  // F
    double jump = 0.0;                              // k >= 0
    Interval declared_domain;
    bool operator_monotone = true;       // metadata flag, not verified symbolically
    bool nonnegative_on_domain = true;   // sample-checked at construction

    double eval(double t) const {
        double v = continuous_part(t);
        if (t > 0.0) v += jump;
        return v;
    }
};

// Sample-checks monotonicity of F on the domain (hard error if decreasing)
// and records whether F stays non-negative.  The f_alpha family dips below
// zero near 0, so non-negativity is kept as a flag rather than enforced.
ScalarFunctionSpec make_function(std::string name, std::function<double(double)> F, double jump,
                                 Interval domain = {}, bool operator_monotone = true);

// Built-in functions.  square and max_one are flagged non-operator-monotone;
// they are the stock counterexample generators.
ScalarFunctionSpec fn_identity();
ScalarFunctionSpec fn_sqrt();
ScalarFunctionSpec fn_power(double p);            // t^p, p in (0, 1]
ScalarFunctionSpec fn_shifted_inverse(double alpha);  // alpha - 1/(t+1)
ScalarFunctionSpec fn_f_alpha(double alpha);          // alpha/(alpha+1) - 1/(t+1)
ScalarFunctionSpec fn_indicator_jump();               // chi_(0,inf)
ScalarFunctionSpec fn_max_one();                      // 1 v t
ScalarFunctionSpec fn_square();

// Piecewise-linear interpolant of (t, F(t)) samples plus a jump at 0; domain
// is the sample range.
ScalarFunctionSpec fn_table(const std::vector<std::pair<double, double>>& samples, double jump);

// Estimates the right limit of f_raw at 0 on the grid t = 2^-j, j <= 40, and
// splits f_raw into continuous part plus jump.  NegativeJump if the limit
// undershoots f_raw(0) beyond tol, NoLimit if the probe never settles.
ScalarFunctionSpec jump_decompose(const std::string& name, const std::function<double(double)>& f_raw,
                                  Tolerance tol = {});

// PSD test of the divided-difference matrix [ (f(t_i)-f(t_j))/(t_i-t_j) ]
// with central-difference diagonal (h = 1e-6).  A necessary condition for
// matrix monotonicity at order |points|.
bool loewner_matrix_test(const ScalarFunctionSpec& f, const std::vector<double>& points,
                         Tolerance tol = {});

}  // namespace nlpm
