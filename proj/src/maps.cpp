#include "nlpm/maps.hpp"

#include <cmath>

#include "nlpm/random.hpp"

namespace nlpm {

namespace {

double normalized_trace(const HermMatrix& a) {
    double t = 0.0;
    for (int i = 0; i < a.dim(); ++i) t += a.at(i, i).real();
    return t / a.dim();
}

cplx trace_c(const CMatrix& a) {
    cplx t{};
    for (int i = 0; i < a.dim(); ++i) t += a.at(i, i);
    return t;
}

cplx det_c(CMatrix a) {
    // Gaussian elimination with partial pivoting.
    const int n = a.dim();
    cplx det = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a.at(r, col)) > std::abs(a.at(piv, col))) piv = r;
        if (a.at(piv, col) == cplx{}) return 0.0;
        if (piv != col) {
            for (int c = 0; c < n; ++c) std::swap(a.at(piv, c), a.at(col, c));
            det = -det;
        }
        det *= a.at(col, col);
        for (int r = col + 1; r < n; ++r) {
            const cplx f = a.at(r, col) / a.at(col, col);
            for (int c = col; c < n; ++c) a.at(r, c) -= f * a.at(col, c);
        }
    }
    return det;
}

// Diagonal conditional expectation onto the diagonal masa.
HermMatrix diag_expectation(const HermMatrix& a) {
    HermMatrix r(a.dim());
    std::vector<double> d(a.dim());
    for (int i = 0; i < a.dim(); ++i) d[i] = a.at(i, i).real();
    return HermMatrix::diagonal(d);
}

// rank-indexed family f_m(t) = m/(m+1) - 1/(t+1); f_m -> t/(t+1) as m grows.
double f_rank(int m, double t) { return m / (m + 1.0) - 1.0 / (t + 1.0); }

MapSpec cone(std::string name, int dim, int out_dim,
             std::function<HermMatrix(const HermMatrix&)> eval,
             std::map<std::string, bool> profile, std::string doc = {}) {
    MapSpec m;
    m.name = std::move(name);
    m.kind = MapKind::cone_map;
    m.in_dim = dim;
    m.out_dim = out_dim;
    m.cone_eval = std::move(eval);
    m.expected_profile = std::move(profile);
    m.doc = std::move(doc);
    return m;
}

MapSpec algebra(std::string name, int dim, int out_dim,
                std::function<CMatrix(const CMatrix&)> eval,
                std::map<std::string, bool> profile, std::string doc = {}) {
    MapSpec m;
    m.name = std::move(name);
    m.kind = MapKind::algebra_map;
    m.in_dim = dim;
    m.out_dim = out_dim;
    m.alg_eval = std::move(eval);
    m.expected_profile = std::move(profile);
    m.doc = std::move(doc);
    return m;
}

MapSpec calculus_map(const std::string& name, int dim, const ScalarFunctionSpec& f,
                     std::map<std::string, bool> profile) {
    return cone(name, dim, dim,
                [f](const HermMatrix& a) { return apply_function(f, a); }, std::move(profile));
}

}  // namespace

std::vector<std::string> builtin_map_names() {
    return {
        "trace_unit",
        "vector_state",
        "diag_square",
        "threshold_norm",
        "invertibility_indicator",
        "trace_rank_alpha",
        "square",
        "max_one",
        "range_projection",
        "rank_indexed",
        "calc_identity",
        "calc_sqrt",
        "calc_power_05",
        "calc_power_025",
        "calc_shifted_inverse_2",
        "calc_f_alpha_2",
        "transpose",
        "det",
        "tensor_square",
        "exp_scalar",
        "diag_expectation_linear",
        "trace_linear",
        "congruence_fixed",
    };
}

MapSpec make_map(const std::string& name, int dim) {
    if (dim < 1) throw DimMismatch("make_map: dim must be >= 1");

    if (name == "trace_unit")
        return cone(name, dim, dim,
                    [dim](const HermMatrix& a) {
                        return HermMatrix::scaled_identity(dim, normalized_trace(a));
                    },
                    {{"monotone", true}, {"concave", true}, {"supercongruent", false}, {"normal", true}},
                    "normalized trace times the unit; the finite factor stand-in for the "
                    "tracial example");

    if (name == "vector_state")
        return cone(name, dim, dim,
                    [dim](const HermMatrix& a) {
                        return HermMatrix::scaled_identity(dim, a.at(0, 0).real());
                    },
                    {{"monotone", true}, {"concave", true}, {"supercongruent", false}},
                    "a |-> <a e1, e1> 1 with e1 inside a proper projection");

    if (name == "diag_square")
        return cone(name, dim, dim,
                    [](const HermMatrix& a) {
                        const HermMatrix e = diag_expectation(a);
                        return HermMatrix::hermitize(e.mat() * e.mat());
                    },
                    {{"monotone", true}, {"concave", false}, {"supercongruent", false}},
                    "square of the diagonal conditional expectation");

    if (name == "threshold_norm")
        return cone(name, dim, dim,
                    [dim](const HermMatrix& a) {
                        return spectral_norm(a) <= 1.0 ? HermMatrix::identity(dim) : a;
                    },
                    {{"monotone", false}, {"supercongruent", true}},
                    "unit below the norm-1 threshold, identity map above it");

    if (name == "invertibility_indicator")
        return cone(name, dim, dim,
                    [dim](const HermMatrix& a) {
                        const SpectralDecomp d = eig(a);
                        const bool invertible = d.lambda_min() > zero_threshold(std::abs(d.lambda_max()), Tolerance{});
                        return HermMatrix::scaled_identity(dim, invertible ? 1.0 : 2.0);
                    },
                    {{"monotone", false}, {"supercongruent", true}},
                    "unit on invertibles, twice the unit otherwise; in M_n left invertible "
                    "implies invertible, so the argument transfers verbatim");

    if (name == "trace_rank_alpha")
        return cone(name, dim, dim,
                    [dim](const HermMatrix& a) {
                        const double alpha = 2.0 - static_cast<double>(numeric_rank(a)) / dim;
                        return HermMatrix::scaled_identity(dim, alpha);
                    },
                    {{"monotone", false}, {"supercongruent", true}},
                    "decreasing function of the normalized trace of the range projection; "
                    "rank monotonicity under congruence holds in M_n as in the factor case");

    if (name == "square")
        return cone(name, dim, dim,
                    [](const HermMatrix& a) { return HermMatrix::hermitize(a.mat() * a.mat()); },
                    {{"monotone", false}, {"supercongruent", false}, {"concave", false}});

    if (name == "max_one")
        return calculus_map(name, dim, fn_max_one(),
                            {{"monotone", false}, {"supercongruent", false}});

    if (name == "range_projection")
        return cone(name, dim, dim, [](const HermMatrix& a) { return range_projection(a); },
                    {{"monotone", true}, {"supercongruent", true}, {"concave", true}, {"normal", true}});

    if (name == "rank_indexed")
        return cone(name, dim, dim,
                    [](const HermMatrix& a) {
                        const int m = numeric_rank(a);
                        const SpectralDecomp d = eig(a);
                        std::vector<double> vals(d.eigenvalues.size());
                        for (size_t k = 0; k < vals.size(); ++k)
                            vals[k] = f_rank(m, std::max(0.0, d.eigenvalues[k]));
                        return recompose(d, vals);
                    },
                    {{"monotone", true}},
                    "calculus by f_rank(a); order-preserving because the family increases "
                    "with rank, but not any single-function calculus");

    if (name == "calc_identity")
        return calculus_map(name, dim, fn_identity(),
                            {{"monotone", true}, {"supercongruent", true}, {"concave", true}, {"normal", true}});
    if (name == "calc_sqrt")
        return calculus_map(name, dim, fn_sqrt(),
                            {{"monotone", true}, {"supercongruent", true}, {"concave", true}, {"normal", true}});
    if (name == "calc_power_05")
        return calculus_map(name, dim, fn_power(0.5),
                            {{"monotone", true}, {"supercongruent", true}, {"concave", true}, {"normal", true}});
    if (name == "calc_power_025")
        return calculus_map(name, dim, fn_power(0.25),
                            {{"monotone", true}, {"supercongruent", true}, {"concave", true}, {"normal", true}});
    if (name == "calc_shifted_inverse_2")
        return calculus_map(name, dim, fn_shifted_inverse(2.0),
                            {{"monotone", true}, {"supercongruent", true}, {"concave", true}, {"normal", true}});
    if (name == "calc_f_alpha_2")
        // f_alpha(0) = -1/(alpha+1) < 0: the calculus is monotone but leaves
        // the cone near singular inputs, so no supercongruence claim.
        return calculus_map(name, dim, fn_f_alpha(2.0), {{"monotone", true}});

    if (name == "transpose")
        return algebra(name, dim, dim,
                       [](const CMatrix& a) {
                           const int n = a.dim();
                           CMatrix r(n);
                           for (int i = 0; i < n; ++i)
                               for (int j = 0; j < n; ++j) r.at(i, j) = a.at(j, i);
                           return r;
                       },
                       {{"positive_type", true}, {"boundedly_positive_type", true}, {"positive_definite", false}});

    if (name == "det")
        return algebra(name, dim, 1,
                       [](const CMatrix& a) {
                           CMatrix r(1);
                           r.at(0, 0) = det_c(a);
                           return r;
                       },
                       {{"positive_type", true}, {"boundedly_positive_type", true}, {"positive_definite", true}});

    if (name == "tensor_square")
        return algebra(name, dim, dim * dim, [](const CMatrix& a) { return kron(a, a); },
                       {{"positive_type", true}, {"boundedly_positive_type", true}, {"positive_definite", true}});

    if (name == "exp_scalar") {
        if (dim != 1) throw DimMismatch("exp_scalar is a map on dim 1");
        return algebra(name, 1, 1,
                       [](const CMatrix& a) {
                           CMatrix r(1);
                           r.at(0, 0) = std::exp(a.at(0, 0));
                           return r;
                       },
                       {{"positive_type", true}, {"boundedly_positive_type", false}, {"positive_definite", true}});
    }

    if (name == "diag_expectation_linear")
        return algebra(name, dim, dim,
                       [](const CMatrix& a) {
                           CMatrix r(a.dim());
                           for (int i = 0; i < a.dim(); ++i) r.at(i, i) = a.at(i, i);
                           return r;
                       },
                       {{"positive_type", true}, {"boundedly_positive_type", true}, {"positive_definite", true}});

    if (name == "trace_linear")
        return algebra(name, dim, dim,
                       [dim](const CMatrix& a) { return (trace_c(a) / static_cast<double>(dim)) * CMatrix::identity(dim); },
                       {{"positive_type", true}, {"boundedly_positive_type", true}, {"positive_definite", true}});

    if (name == "congruence_fixed") {
        Rng rng(0x5eedab1e);
        const CMatrix v = rand_gaussian(dim, rng);
        return algebra(name, dim, dim, [v](const CMatrix& a) { return v.adjoint() * a * v; },
                       {{"positive_type", true}, {"boundedly_positive_type", true}, {"positive_definite", true}});
    }

    throw Error("make_map: unknown map name '" + name + "'");
}

std::vector<MapSpec> builtin_maps(int dim) {
    std::vector<MapSpec> out;
    for (const std::string& n : builtin_map_names()) {
        if (n == "exp_scalar" && dim != 1) continue;
        out.push_back(make_map(n, dim));
    }
    return out;
}

}  // namespace nlpm
