#include "nlpm/means.hpp"

namespace nlpm {

MeanSpec make_mean(std::string name, ScalarFunctionSpec f) {
    if (!std::isfinite(f.eval(1.0))) throw DomainViolation("make_mean: f(1) must be finite");
    return MeanSpec{std::move(name), std::move(f)};
}

namespace {

HermMatrix shifted(const HermMatrix& a, double eps) {
    return eps == 0.0 ? a : a + HermMatrix::scaled_identity(a.dim(), eps);
}

// x^{-1/2} from one decomposition, reused for x^{1/2}.
struct RootPair {
    HermMatrix root;
    HermMatrix inv_root;
};

RootPair roots(const HermMatrix& x, Tolerance tol) {
    const SpectralDecomp d = eig(x, tol);
    double lmax_abs = 0.0;
    for (double l : d.eigenvalues) lmax_abs = std::max(lmax_abs, std::abs(l));
    if (d.lambda_min() <= tol.rtol * lmax_abs + tol.atol)
        throw Singular("operator mean: base matrix is not invertible");
    std::vector<double> r(d.eigenvalues.size()), ir(d.eigenvalues.size());
    for (size_t k = 0; k < r.size(); ++k) {
        r[k] = std::sqrt(d.eigenvalues[k]);
        ir[k] = 1.0 / r[k];
    }
    return {recompose(d, r), recompose(d, ir)};
}

}  // namespace

HermMatrix mean_eval(const MeanSpec& m, const HermMatrix& a0, const HermMatrix& b0,
                     Tolerance tol, double epsilon_shift) {
    if (a0.dim() != b0.dim()) throw DimMismatch("mean_eval: dimension mismatch");
    const HermMatrix a = shifted(a0, epsilon_shift);
    const HermMatrix b = shifted(b0, epsilon_shift);
    const RootPair rb = roots(b, tol);
    const HermMatrix inner = HermMatrix::hermitize(rb.inv_root.mat() * a.mat() * rb.inv_root.mat());
    const HermMatrix f_inner = apply_function(m.representing_function, inner, tol);
    return HermMatrix::hermitize(rb.root.mat() * f_inner.mat() * rb.root.mat());
}

HermMatrix geometric_mean(const HermMatrix& a0, const HermMatrix& b0, Tolerance tol,
                          double epsilon_shift) {
    if (a0.dim() != b0.dim()) throw DimMismatch("geometric_mean: dimension mismatch");
    const HermMatrix a = shifted(a0, epsilon_shift);
    const HermMatrix b = shifted(b0, epsilon_shift);
    const RootPair ra = roots(a, tol);
    const HermMatrix inner = HermMatrix::hermitize(ra.inv_root.mat() * b.mat() * ra.inv_root.mat());
    const HermMatrix root_inner = sqrt_psd(inner, tol);
    return HermMatrix::hermitize(ra.root.mat() * root_inner.mat() * ra.root.mat());
}

}  // namespace nlpm
