#include "nlpm/calculus.hpp"

#include <cmath>
#include <limits>

namespace nlpm {

double zero_threshold(double lambda_max_abs, Tolerance) {
    // The gate that decides "this eigenvalue is the spectral point 0" sits
    // just above machine dust (n^2 eps per congruence product at n <= 8): it
    // must swallow the round-off that products and the solver leave in exact
    // kernels, but it must not swallow genuine small eigenvalues.  Clamping a
    // true eigenvalue loses F(lambda) entirely, which for sqrt-like functions
    // dwarfs every tolerance in use, so this boundary is a machine-arithmetic
    // constant rather than a user tolerance.
    constexpr double eps = std::numeric_limits<double>::epsilon();
    return 256.0 * eps * std::max(1.0, lambda_max_abs);
}

double zero_threshold(const HermMatrix& a, Tolerance tol) {
    return zero_threshold(spectral_norm(a, tol), tol);
}

HermMatrix apply_function(const ScalarFunctionSpec& f, const HermMatrix& a, Tolerance tol) {
    const SpectralDecomp d = eig(a, tol);
    double lmax_abs = 0.0;
    for (double l : d.eigenvalues) lmax_abs = std::max(lmax_abs, std::abs(l));
    const double zthr = zero_threshold(lmax_abs, tol);
    const double slack = tol.rtol * std::max(1.0, lmax_abs) + tol.atol;

    std::vector<double> vals(d.eigenvalues.size());
    for (size_t k = 0; k < vals.size(); ++k) {
        double l = d.eigenvalues[k];
        if (l < f.declared_domain.lo - slack || l > f.declared_domain.hi + slack)
            throw DomainViolation("apply_function: eigenvalue " + std::to_string(l) +
                                  " outside declared domain of " + f.name);
        l = std::min(std::max(l, f.declared_domain.lo), f.declared_domain.hi);
        // At or below the zero threshold the eigenvalue reads as the spectral
        // point 0: value f(0) = F(0), jump not applied.
        vals[k] = l <= zthr ? f.continuous_part(0.0) : f.continuous_part(l) + f.jump;
    }
    return recompose(d, vals);
}

HermMatrix range_projection(const HermMatrix& a, Tolerance tol) {
    return apply_function(fn_indicator_jump(), a, tol);
}

int numeric_rank(const HermMatrix& a, Tolerance tol) {
    const SpectralDecomp d = eig(a, tol);
    double lmax_abs = 0.0;
    for (double l : d.eigenvalues) lmax_abs = std::max(lmax_abs, std::abs(l));
    const double zthr = zero_threshold(lmax_abs, tol);
    int r = 0;
    for (double l : d.eigenvalues)
        if (l > zthr) ++r;
    return r;
}

double staircase_value(double t, double floor, double ceil, int n) {
    const double width = ceil - floor;
    if (width <= 0.0) return floor;
    const double cells = std::ldexp(1.0, n);  // 2^n
    // k-th cell is (floor + (k-1) width/2^n, floor + k width/2^n]; the first
    // cell (and everything at or below it) maps to the floor.
    double k = std::ceil((t - floor) / width * cells);
    k = std::min(std::max(k, 1.0), cells);
    return floor + (k - 1.0) * width / cells;
}

HermMatrix staircase_lower(const HermMatrix& a, int n, StaircaseMode mode, Tolerance tol) {
    if (n < 1) throw DomainViolation("staircase_lower: resolution must be >= 1");
    const SpectralDecomp d = eig(a, tol);
    const double beta = d.lambda_max();
    double floor = 0.0;
    if (mode == StaircaseMode::invertible) {
        const double lmin = d.lambda_min();
        if (lmin <= tol.rtol * std::max(1.0, std::abs(beta)) + tol.atol)
            throw NotInvertible("staircase_lower: invertible mode needs lambda_min bounded away from 0");
        floor = lmin;
    }
    std::vector<double> vals(d.eigenvalues.size());
    for (size_t k = 0; k < vals.size(); ++k)
        vals[k] = staircase_value(d.eigenvalues[k], floor, std::max(beta, floor), n);
    return recompose(d, vals);
}

}  // namespace nlpm
