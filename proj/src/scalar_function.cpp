#include "nlpm/scalar_function.hpp"

#include <algorithm>
#include <cmath>

namespace nlpm {

namespace {

std::vector<double> sample_points(const Interval& dom) {
    const double hi = std::isfinite(dom.hi) ? dom.hi : std::max(dom.lo, 0.0) + 16.0;
    std::vector<double> ts;
    const int kSamples = 64;
    for (int i = 0; i <= kSamples; ++i) ts.push_back(dom.lo + (hi - dom.lo) * i / kSamples);
    return ts;
}

}  // namespace

ScalarFunctionSpec make_function(std::string name, std::function<double(double)> F, double jump,
                                 Interval domain, bool operator_monotone) {
    if (jump < 0.0) throw NegativeJump("make_function: jump must be non-negative");
    ScalarFunctionSpec spec;
    spec.name = std::move(name);
    spec.continuous_part = std::move(F);
    spec.jump = jump;
    spec.declared_domain = domain;
    spec.operator_monotone = operator_monotone;

    bool nonneg = true;
    double prev = -std::numeric_limits<double>::infinity();
    for (double t : sample_points(domain)) {
        const double v = spec.continuous_part(t);
        if (!std::isfinite(v)) throw DomainViolation("make_function: F not finite on declared domain");
        if (v < prev - 1e-12 * std::max(1.0, std::abs(prev)))
            throw DomainViolation("make_function: F decreasing on declared domain");
        if (v < -1e-12) nonneg = false;
        prev = v;
    }
    spec.nonnegative_on_domain = nonneg;
    return spec;
}

ScalarFunctionSpec fn_identity() {
    return make_function("identity", [](double t) { return t; }, 0.0);
}

ScalarFunctionSpec fn_sqrt() {
    return make_function("sqrt", [](double t) { return std::sqrt(std::max(0.0, t)); }, 0.0);
}

ScalarFunctionSpec fn_power(double p) {
    if (!(p > 0.0 && p <= 1.0)) throw DomainViolation("fn_power: exponent must lie in (0, 1]");
    return make_function("power(" + std::to_string(p) + ")",
                         [p](double t) { return std::pow(std::max(0.0, t), p); }, 0.0);
}

ScalarFunctionSpec fn_shifted_inverse(double alpha) {
    if (alpha < 0.0) throw DomainViolation("fn_shifted_inverse: alpha must be >= 0");
    return make_function("shifted_inverse(" + std::to_string(alpha) + ")",
                         [alpha](double t) { return alpha - 1.0 / (t + 1.0); }, 0.0);
}

ScalarFunctionSpec fn_f_alpha(double alpha) {
    if (alpha < 0.0) throw DomainViolation("fn_f_alpha: alpha must be >= 0");
    return make_function("f_alpha(" + std::to_string(alpha) + ")",
                         [alpha](double t) { return alpha / (alpha + 1.0) - 1.0 / (t + 1.0); }, 0.0);
}

ScalarFunctionSpec fn_indicator_jump() {
    return make_function("indicator_jump", [](double) { return 0.0; }, 1.0);
}

ScalarFunctionSpec fn_max_one() {
    return make_function("max_one", [](double t) { return std::max(1.0, t); }, 0.0,
                         Interval{}, /*operator_monotone=*/false);
}

ScalarFunctionSpec fn_square() {
    return make_function("square", [](double t) { return t * t; }, 0.0,
                         Interval{}, /*operator_monotone=*/false);
}

ScalarFunctionSpec fn_table(const std::vector<std::pair<double, double>>& samples, double jump) {
    if (samples.size() < 2) throw DomainViolation("fn_table: need at least two samples");
    std::vector<std::pair<double, double>> pts = samples;
    std::sort(pts.begin(), pts.end());
    auto F = [pts](double t) {
        if (t <= pts.front().first) return pts.front().second;
        if (t >= pts.back().first) return pts.back().second;
        auto it = std::upper_bound(pts.begin(), pts.end(), std::make_pair(t, std::numeric_limits<double>::infinity()));
        const auto& [t1, v1] = *it;
        const auto& [t0, v0] = *(it - 1);
        const double u = (t - t0) / (t1 - t0);
        return v0 + u * (v1 - v0);
    };
    Interval dom{pts.front().first, pts.back().first};
    return make_function("table", F, jump, dom);
}

ScalarFunctionSpec jump_decompose(const std::string& name, const std::function<double(double)>& f_raw,
                                  Tolerance tol) {
    const double f0 = f_raw(0.0);
    // Probe the right limit on a geometric grid; it must be settled at the
    // fine end of the grid, not just somewhere along it.  The settle
    // tolerance is sqrt(rtol)-sized: Hoelder-1/2 decay (sqrt-like functions)
    // still lands within it by j = 40, ruling only genuine oscillation out.
    const double settle = std::sqrt(tol.rtol);
    double prev = f_raw(1.0);
    double limit = prev;
    int stable_steps = 0;
    for (int j = 1; j <= 40; ++j) {
        const double t = std::ldexp(1.0, -j);
        const double v = f_raw(t);
        if (std::abs(v - prev) <= settle * std::max(1.0, std::abs(v)) + tol.atol)
            ++stable_steps;
        else
            stable_steps = 0;
        prev = v;
        limit = v;
    }
    if (stable_steps < 3) throw NoLimit("jump_decompose: probe values at 0+ do not settle");

    const double k = limit - f0;
    if (k < -(tol.rtol * std::max(1.0, std::abs(limit)) + tol.atol))
        throw NegativeJump("jump_decompose: f(0) exceeds the right limit at 0");
    const double jump = std::max(0.0, k);

    auto F = [f_raw, jump, f0](double t) { return t > 0.0 ? f_raw(t) - jump : f0; };
    return make_function(name, F, jump);
}

bool loewner_matrix_test(const ScalarFunctionSpec& f, const std::vector<double>& points,
                         Tolerance tol) {
    const int n = static_cast<int>(points.size());
    if (n == 0) throw DegeneratePoints("loewner_matrix_test: no points");
    for (int i = 0; i < n; ++i) {
        if (points[i] <= 0.0) throw DegeneratePoints("loewner_matrix_test: points must be positive");
        for (int j = i + 1; j < n; ++j)
            if (points[i] == points[j]) throw DegeneratePoints("loewner_matrix_test: repeated point");
    }
    CMatrix m(n);
    for (int i = 0; i < n; ++i) {
        const double h = std::min(1e-6, points[i] / 2.0);
        m.at(i, i) = (f.eval(points[i] + h) - f.eval(points[i] - h)) / (2.0 * h);
        for (int j = i + 1; j < n; ++j) {
            const double v = (f.eval(points[i]) - f.eval(points[j])) / (points[i] - points[j]);
            m.at(i, j) = v;
            m.at(j, i) = v;
        }
    }
    return is_psd(HermMatrix::hermitize(m), tol);
}

}  // namespace nlpm
