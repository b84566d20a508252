#include "nlpm/capacity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace nlpm {

namespace {

int popcount(std::uint32_t m) { return std::popcount(m); }

void check_n(int n, int max_n, const char* who) {
    if (n < 1 || n > max_n)
        throw InvalidCapacity(std::string(who) + ": n must lie in [1, " + std::to_string(max_n) + "]");
}

// Eigenvalues of a PSD matrix in descending order, small negatives clamped.
std::vector<double> psd_spectrum(const HermMatrix& a, Tolerance tol, const char* who) {
    const SpectralDecomp d = eig(a, tol);
    double lmax_abs = 0.0;
    for (double l : d.eigenvalues) lmax_abs = std::max(lmax_abs, std::abs(l));
    const double thr = tol.rtol * lmax_abs + tol.atol;
    std::vector<double> lam = d.eigenvalues;
    for (double& l : lam) {
        if (l < -thr) throw NotPsd(std::string(who) + ": input matrix is not PSD");
        l = std::max(0.0, l);
    }
    return lam;
}

}  // namespace

Capacity::Capacity(int n, std::vector<double> values) : n_(n), v_(std::move(values)) {
    check_n(n, 16, "Capacity");
    if (v_.size() != (1u << n_)) throw InvalidCapacity("Capacity: values array must have 2^n entries");
    if (v_[0] != 0.0) throw InvalidCapacity("Capacity: value on the empty set must be 0");
    // Round-off slack so transform round trips that are exact to 1e-12 still
    // validate.
    const double slack = 1e-12 * std::max(1.0, std::abs(v_.back()));
    for (std::uint32_t mask = 0; mask < v_.size(); ++mask) {
        if (v_[mask] < -slack) throw InvalidCapacity("Capacity: values must be non-negative");
        for (int i = 0; i < n_; ++i) {
            const std::uint32_t sup = mask | (1u << i);
            if (sup != mask && v_[mask] > v_[sup] + slack)
                throw InvalidCapacity("Capacity: monotonicity fails between a set and a superset");
        }
    }
}

Capacity Capacity::additive(const std::vector<double>& weights) {
    const int n = static_cast<int>(weights.size());
    check_n(n, 16, "Capacity::additive");
    std::vector<double> v(1u << n, 0.0);
    for (std::uint32_t mask = 1; mask < v.size(); ++mask)
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) v[mask] += weights[i];
    return Capacity(n, std::move(v));
}

Capacity Capacity::unanimity(int n, std::uint32_t t) {
    check_n(n, 16, "Capacity::unanimity");
    if (t == 0) throw InvalidCapacity("Capacity::unanimity: coalition must be non-empty");
    std::vector<double> v(1u << n, 0.0);
    for (std::uint32_t mask = 1; mask < v.size(); ++mask) v[mask] = (mask & t) == t ? 1.0 : 0.0;
    return Capacity(n, std::move(v));
}

Capacity Capacity::random_monotone(int n, Rng& rng) {
    check_n(n, 16, "Capacity::random_monotone");
    std::vector<double> v(1u << n, 0.0);
    for (std::uint32_t mask = 1; mask < v.size(); ++mask) {
        double m = rng.uniform();
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) m = std::max(m, v[mask ^ (1u << i)]);
        v[mask] = m;
    }
    return Capacity(n, std::move(v));
}

OperatorCapacity::OperatorCapacity(int n, int out_dim, std::vector<HermMatrix> values, Tolerance tol)
    : n_(n), out_dim_(out_dim), v_(std::move(values)) {
    check_n(n, 12, "OperatorCapacity");
    if (out_dim_ < 1) throw InvalidCapacity("OperatorCapacity: out_dim must be >= 1");
    if (v_.size() != (1u << n_)) throw InvalidCapacity("OperatorCapacity: values array must have 2^n entries");
    for (const HermMatrix& m : v_)
        if (m.dim() != out_dim_) throw InvalidCapacity("OperatorCapacity: value dimension mismatch");
    if (v_[0].fro_norm() != 0.0) throw InvalidCapacity("OperatorCapacity: value on the empty set must be 0");
    for (std::uint32_t mask = 0; mask < v_.size(); ++mask)
        for (int i = 0; i < n_; ++i) {
            const std::uint32_t sup = mask | (1u << i);
            if (sup != mask && !loewner_leq(v_[mask], v_[sup], tol))
                throw InvalidCapacity("OperatorCapacity: Loewner monotonicity fails on a superset");
        }
}

OperatorCapacity OperatorCapacity::random_monotone(int n, int out_dim, Rng& rng) {
    // Totally monotone construction: PSD Moebius masses on small subsets.
    std::vector<HermMatrix> masses(1u << n, HermMatrix(out_dim));
    for (std::uint32_t mask = 1; mask < masses.size(); ++mask)
        if (popcount(mask) <= 2) masses[mask] = rand_psd(out_dim, rng, 1.0);
    std::vector<HermMatrix> v(1u << n, HermMatrix(out_dim));
    for (std::uint32_t mask = 0; mask < v.size(); ++mask) {
        HermMatrix s(out_dim);
        for (std::uint32_t sub = mask;; sub = (sub - 1) & mask) {
            if (popcount(sub) <= 2) s = s + masses[sub];
            if (sub == 0) break;
        }
        v[mask] = s;
    }
    return OperatorCapacity(n, out_dim, std::move(v));
}

InteractionOperator interaction_min() {
    return {"min", [](const std::vector<double>& x, std::uint32_t b) {
                double m = std::numeric_limits<double>::infinity();
                for (size_t i = 0; i < x.size(); ++i)
                    if (b & (1u << i)) m = std::min(m, x[i]);
                return b == 0 ? 0.0 : m;
            }};
}

InteractionOperator interaction_product() {
    return {"product", [](const std::vector<double>& x, std::uint32_t b) {
                double p = 1.0;
                for (size_t i = 0; i < x.size(); ++i)
                    if (b & (1u << i)) p *= x[i];
                return b == 0 ? 0.0 : p;
            }};
}

bool interaction_monotone_sampled(const InteractionOperator& op, int n, double K, int trials,
                                  std::uint64_t seed) {
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        std::vector<double> x(n), y(n);
        for (int i = 0; i < n; ++i) {
            x[i] = K * rng.uniform();
            y[i] = x[i] + (K - x[i]) * rng.uniform();
        }
        for (std::uint32_t b = 1; b < (1u << n); ++b)
            if (op.eval(x, b) > op.eval(y, b) + 1e-12) return false;
    }
    return true;
}

double choquet_scalar(const Capacity& mu, const std::vector<double>& x) {
    const int n = mu.n();
    if (static_cast<int>(x.size()) != n) throw LengthMismatch("choquet_scalar: vector length != n");
    for (double v : x)
        if (v < 0.0) throw NegativeInput("choquet_scalar: negative entry");
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) { return x[i] > x[j]; });
    double total = 0.0;
    std::uint32_t mask = 0;
    for (int i = 0; i < n; ++i) {
        mask |= 1u << idx[i];
        const double next = i + 1 < n ? x[idx[i + 1]] : 0.0;
        total += (x[idx[i]] - next) * mu.value(mask);
    }
    return total;
}

double choquet_matrix(const Capacity& mu, const HermMatrix& a, Tolerance tol) {
    if (a.dim() != mu.n()) throw DimMismatch("choquet_matrix: matrix dim != n");
    const std::vector<double> lam = psd_spectrum(a, tol, "choquet_matrix");
    // Abel-summed chain form: sum_i lambda_i (mu(A_i) - mu(A_{i-1})).
    double total = 0.0;
    double prev = 0.0;
    for (int i = 0; i < mu.n(); ++i) {
        const double cur = mu.value((1u << (i + 1)) - 1u);
        total += lam[i] * (cur - prev);
        prev = cur;
    }
    return total;
}

HermMatrix choquet_matrix_operator(const OperatorCapacity& mu, const HermMatrix& a, Tolerance tol) {
    if (a.dim() != mu.n()) throw DimMismatch("choquet_matrix_operator: matrix dim != n");
    const std::vector<double> lam = psd_spectrum(a, tol, "choquet_matrix_operator");
    HermMatrix total(mu.out_dim());
    for (int i = 0; i < mu.n(); ++i) {
        const double next = i + 1 < mu.n() ? lam[i + 1] : 0.0;
        total = total + (lam[i] - next) * mu.value((1u << (i + 1)) - 1u);
    }
    return total;
}

double sugeno_scalar(const Capacity& mu, const std::vector<double>& x) {
    const int n = mu.n();
    if (static_cast<int>(x.size()) != n) throw LengthMismatch("sugeno_scalar: vector length != n");
    for (double v : x)
        if (v < 0.0) throw NegativeInput("sugeno_scalar: negative entry");
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) { return x[i] > x[j]; });
    double best = 0.0;
    std::uint32_t mask = 0;
    for (int i = 0; i < n; ++i) {
        mask |= 1u << idx[i];
        best = std::max(best, std::min(x[idx[i]], mu.value(mask)));
    }
    return best;
}

double sugeno_matrix(const Capacity& mu, const HermMatrix& a, Tolerance tol) {
    if (a.dim() != mu.n()) throw DimMismatch("sugeno_matrix: matrix dim != n");
    const std::vector<double> lam = psd_spectrum(a, tol, "sugeno_matrix");
    double best = 0.0;
    for (int i = 0; i < mu.n(); ++i)
        best = std::max(best, std::min(lam[i], mu.value((1u << (i + 1)) - 1u)));
    return best;
}

namespace {

// Alternating superset sums g(A) = sum_{B >= A} (-1)^{|B\A|} I(lambda|B),
// computed in place in O(n 2^n).
std::vector<double> superset_alternating(const InteractionOperator& op, const std::vector<double>& lam,
                                         int n) {
    std::vector<double> g(1u << n);
    for (std::uint32_t b = 0; b < g.size(); ++b) g[b] = op.eval(lam, b);
    for (int i = 0; i < n; ++i)
        for (std::uint32_t mask = 0; mask < g.size(); ++mask)
            if (!(mask & (1u << i))) g[mask] -= g[mask | (1u << i)];
    return g;
}

std::vector<double> bounded_spectrum(const HermMatrix& a, double K, Tolerance tol) {
    if (!(K > 0.0)) throw SpectrumOutOfRange("inclusion_exclusion: bound K must be positive");
    std::vector<double> lam = psd_spectrum(a, tol, "inclusion_exclusion");
    for (double& l : lam) {
        if (l > K * (1.0 + tol.rtol) + tol.atol)
            throw SpectrumOutOfRange("inclusion_exclusion: spectrum exceeds the bound K");
        l = std::min(l, K);
    }
    return lam;
}

}  // namespace

double inclusion_exclusion_matrix(const Capacity& mu, const HermMatrix& a,
                                  const InteractionOperator& op, double K, Tolerance tol) {
    if (a.dim() != mu.n()) throw DimMismatch("inclusion_exclusion: matrix dim != n");
    if (mu.n() > 12) throw InvalidCapacity("inclusion_exclusion: n > 12 not supported");
    const std::vector<double> lam = bounded_spectrum(a, K, tol);
    const std::vector<double> g = superset_alternating(op, lam, mu.n());
    double total = 0.0;
    for (std::uint32_t mask = 1; mask < g.size(); ++mask) total += g[mask] * mu.value(mask);
    return total;
}

HermMatrix inclusion_exclusion_matrix(const OperatorCapacity& mu, const HermMatrix& a,
                                      const InteractionOperator& op, double K, Tolerance tol) {
    if (a.dim() != mu.n()) throw DimMismatch("inclusion_exclusion: matrix dim != n");
    const std::vector<double> lam = bounded_spectrum(a, K, tol);
    const std::vector<double> g = superset_alternating(op, lam, mu.n());
    HermMatrix total(mu.out_dim());
    for (std::uint32_t mask = 1; mask < g.size(); ++mask) total = total + g[mask] * mu.value(mask);
    return total;
}

std::vector<double> mobius(const Capacity& mu) {
    std::vector<double> m = mu.values();
    const int n = mu.n();
    for (int i = 0; i < n; ++i)
        for (std::uint32_t mask = 0; mask < m.size(); ++mask)
            if (mask & (1u << i)) m[mask] -= m[mask ^ (1u << i)];
    return m;
}

Capacity capacity_from_mobius(const std::vector<double>& masses) {
    const auto size = masses.size();
    int n = 0;
    while ((1u << n) < size) ++n;
    if ((1u << n) != size) throw InvalidCapacity("capacity_from_mobius: length must be a power of two");
    std::vector<double> v = masses;
    for (int i = 0; i < n; ++i)
        for (std::uint32_t mask = 0; mask < v.size(); ++mask)
            if (mask & (1u << i)) v[mask] += v[mask ^ (1u << i)];
    return Capacity(n, std::move(v));
}

}  // namespace nlpm
