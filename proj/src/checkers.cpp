#include "nlpm/checkers.hpp"

#include <algorithm>
#include <cmath>

#include "nlpm/calculus.hpp"
#include "nlpm/json_io.hpp"

namespace nlpm {

using nlohmann::json;

namespace {

constexpr double kFailFactor = 10.0;  // margins below -10*thr are violations
constexpr std::uint64_t kBatterySeed = 0x6a77e5;

struct CaseOutcome {
    double margin = std::numeric_limits<double>::infinity();
    double scale = 1.0;
    bool force_inconclusive = false;
};

// Classification band. The unit floor on the scale keeps the band above the
// kernel-clamp residue when a map crushes unit-scale inputs to tiny outputs.
double noise_threshold(double scale, Tolerance tol) {
    return tol.rtol * std::max(scale, 1.0) + tol.atol;
}

// Map-evaluate with EvaluatorError wrapping.
HermMatrix eval_cone(const MapSpec& m, const HermMatrix& a) {
    if (m.kind != MapKind::cone_map) throw Error(m.name + " is not a cone map");
    try {
        return m.cone_eval(a);
    } catch (const EvaluatorError&) {
        throw;
    } catch (const std::exception& e) {
        throw EvaluatorError(m.name + ": evaluator threw: " + e.what(), matrix_to_json(a).dump());
    }
}

CMatrix eval_alg(const MapSpec& m, const CMatrix& a) {
    if (m.kind != MapKind::algebra_map) throw Error(m.name + " is not an algebra map");
    try {
        return m.alg_eval(a);
    } catch (const EvaluatorError&) {
        throw;
    } catch (const std::exception& e) {
        throw EvaluatorError(m.name + ": evaluator threw: " + e.what(), matrix_to_json(a).dump());
    }
}

// Evaluate every case, serially or under OpenMP.  Cases are pre-built and the
// reduction below is order-independent, so both paths give identical results.
template <typename Case, typename Eval>
std::vector<CaseOutcome> evaluate_all(const std::vector<Case>& cases, const Eval& eval, Exec exec,
                                      std::vector<std::string>& errors,
                                      std::vector<std::string>& error_inputs) {
    const long n = static_cast<long>(cases.size());
    std::vector<CaseOutcome> out(cases.size());
    errors.assign(cases.size(), {});
    error_inputs.assign(cases.size(), {});
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < n; ++i) {
            try {
                out[i] = eval(cases[i]);
            } catch (const EvaluatorError& e) {
                errors[i] = e.what();
                error_inputs[i] = e.input_json();
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    } else {
        for (long i = 0; i < n; ++i) {
            try {
                out[i] = eval(cases[i]);
            } catch (const EvaluatorError& e) {
                errors[i] = e.what();
                error_inputs[i] = e.input_json();
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    }
    return out;
}

template <typename Case, typename Eval, typename Serialize>
PropertyReport run_campaign(const std::string& property, const std::vector<Case>& cases,
                            const Eval& eval, const Serialize& serialize, const CheckOptions& opt) {
    std::vector<std::string> errors, error_inputs;
    const std::vector<CaseOutcome> outcomes = evaluate_all(cases, eval, opt.exec, errors, error_inputs);
    for (size_t i = 0; i < errors.size(); ++i)
        if (!errors[i].empty())
            throw EvaluatorError(errors[i],
                                 error_inputs[i].empty() ? serialize(cases[i]).dump() : error_inputs[i]);
    // A NaN margin means the comparison itself was meaningless; surface it
    // instead of letting NaN comparisons skip the case.
    for (size_t i = 0; i < outcomes.size(); ++i)
        if (std::isnan(outcomes[i].margin))
            throw EvaluatorError(property + ": evaluator produced a non-finite margin",
                                 serialize(cases[i]).dump());

    // Worst case by threshold-normalized deficit; ties keep the first.
    long worst = -1;
    double worst_deficit = std::numeric_limits<double>::infinity();
    bool any_inconclusive = false;
    for (size_t i = 0; i < outcomes.size(); ++i) {
        const double thr = noise_threshold(outcomes[i].scale, opt.tol);
        const double deficit = outcomes[i].margin + thr;
        if (deficit < worst_deficit) {
            worst_deficit = deficit;
            worst = static_cast<long>(i);
        }
        if (outcomes[i].force_inconclusive) any_inconclusive = true;
        if (outcomes[i].margin < -thr && outcomes[i].margin >= -kFailFactor * thr)
            any_inconclusive = true;
    }

    PropertyReport r;
    r.property = property;
    r.trials = static_cast<long>(cases.size());
    r.seed = opt.seed;
    if (worst >= 0) {
        const CaseOutcome& w = outcomes[worst];
        r.worst_margin = w.margin;
        const double thr = noise_threshold(w.scale, opt.tol);
        if (w.margin < -kFailFactor * thr) {
            r.verdict = Verdict::fail;
            r.counterexample = serialize(cases[worst]);
        } else {
            r.verdict = any_inconclusive ? Verdict::inconclusive : Verdict::pass;
        }
    }
    return r;
}

HermMatrix embed2(int dim, double a11, double a12, double a22) {
    HermMatrix m(dim);
    CMatrix raw(dim);
    raw.at(0, 0) = a11;
    raw.at(0, 1) = a12;
    raw.at(1, 0) = a12;
    raw.at(1, 1) = a22;
    return HermMatrix::hermitize(raw);
}

HermMatrix basis_proj(int dim, int k) {  // E_kk
    HermMatrix p(dim);
    CMatrix raw(dim);
    raw.at(k, k) = 1.0;
    return HermMatrix::hermitize(raw);
}

struct MonotoneCase {
    HermMatrix x, y;
};

std::vector<MonotoneCase> monotone_battery(int dim) {
    std::vector<MonotoneCase> cases;
    const HermMatrix id = HermMatrix::identity(dim);
    cases.push_back({HermMatrix(dim), id});
    cases.push_back({id, id});
    cases.push_back({0.5 * id, 2.0 * id});
    std::vector<double> d1(dim), d2(dim);
    for (int i = 0; i < dim; ++i) {
        d1[i] = 1.0 / (i + 1);
        d2[i] = d1[i] + 0.25 * (i + 1);
    }
    cases.push_back({HermMatrix::diagonal(d1), HermMatrix::diagonal(d2)});
    if (dim >= 2) {
        const HermMatrix ones = embed2(dim, 1, 1, 1);
        std::vector<double> b(dim, 0.0);
        b[0] = 3.0;
        b[1] = 1.5;
        cases.push_back({ones, HermMatrix::diagonal(b)});
        cases.push_back({0.5 * basis_proj(dim, 0), 2.0 * basis_proj(dim, 0)});
        cases.push_back({ones, ones + basis_proj(dim, 0)});
        cases.push_back({basis_proj(dim, 0), basis_proj(dim, 0) + basis_proj(dim, 1)});
        std::vector<double> c(dim, 0.5);
        c[dim - 1] = 0.0;
        cases.push_back({HermMatrix::diagonal(c), id});
        Rng rng(kBatterySeed);
        const CMatrix u = rand_unitary(dim, rng);
        auto proj_k = [&](int k) {
            CMatrix p(dim);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) {
                    cplx s{};
                    for (int t = 0; t < k; ++t) s += u.at(i, t) * std::conj(u.at(j, t));
                    p.at(i, j) = s;
                }
            return HermMatrix::hermitize(p);
        };
        const HermMatrix p1 = proj_k(1), p2 = proj_k(std::min(2, dim));
        cases.push_back({p1, p2});
        cases.push_back({0.3 * p2, 2.5 * p2});
    }
    return cases;
}

struct CongruenceCase {
    HermMatrix a;
    CMatrix c;
};

std::vector<CongruenceCase> congruence_battery(int dim, ContractionClass cls) {
    std::vector<CongruenceCase> cases;
    const HermMatrix id = HermMatrix::identity(dim);
    Rng rng(kBatterySeed + 1);
    const HermMatrix a_rand = rand_psd(dim, rng, 2.0);
    cases.push_back({id, (0.5 * id).mat()});
    cases.push_back({a_rand, CMatrix::identity(dim)});
    cases.push_back({a_rand, CMatrix(dim)});  // zero contraction
    if (dim >= 2) {
        cases.push_back({id, basis_proj(dim, 0).mat()});
        cases.push_back({basis_proj(dim, 0), (id - basis_proj(dim, 0)).mat()});
        std::vector<double> two_zero(dim, 0.0);
        two_zero[0] = 2.0;
        cases.push_back({HermMatrix::diagonal(two_zero), embed2(dim, 0.5, 0.5, 0.5).mat()});
        std::vector<double> flat(dim, 1.0);
        flat[dim - 1] = 0.0;
        cases.push_back({HermMatrix::diagonal(flat), basis_proj(dim, 0).mat()});
        const HermMatrix p = rand_projection(dim, 1 + (dim > 2 ? 1 : 0), rng);
        cases.push_back({2.0 * id, p.mat()});
        cases.push_back({0.5 * id, p.mat()});
        if (cls == ContractionClass::general) {
            CMatrix shift(dim);
            shift.at(0, 1) = 0.9;  // non-self-adjoint contraction
            cases.push_back({a_rand, shift});
        }
    }
    return cases;
}

struct ConcaveCase {
    HermMatrix x, y;
    double t;
};

std::vector<ConcaveCase> concave_battery(int dim) {
    std::vector<ConcaveCase> cases;
    const HermMatrix id = HermMatrix::identity(dim);
    cases.push_back({HermMatrix(dim), 2.0 * id, 0.5});
    for (const MonotoneCase& mc : monotone_battery(dim)) {
        for (double t : {0.0, 0.25, 0.5, 1.0}) cases.push_back({mc.x, mc.y, t});
        // Midpoint triple along the order ray: catches maps that are
        // monotone-violating but quiet on direct pairs.
        cases.push_back({mc.x, (mc.y + (mc.y - mc.x)), 0.5});
    }
    return cases;
}

json serialize_monotone(const MapSpec& m, const MonotoneCase& c) {
    json j;
    j["kind"] = "monotone";
    j["map"] = m.name;
    j["dim"] = m.in_dim;
    j["x"] = matrix_to_json(c.x);
    j["y"] = matrix_to_json(c.y);
    return j;
}

json serialize_congruence(const MapSpec& m, const CongruenceCase& c, ContractionClass cls) {
    json j;
    j["kind"] = "supercongruent";
    j["map"] = m.name;
    j["dim"] = m.in_dim;
    j["a"] = matrix_to_json(c.a);
    j["c"] = matrix_to_json(c.c);
    j["class"] = cls == ContractionClass::positive ? "positive" : "general";
    return j;
}

json serialize_concave(const MapSpec& m, const ConcaveCase& c) {
    json j;
    j["kind"] = "concave";
    j["map"] = m.name;
    j["dim"] = m.in_dim;
    j["x"] = matrix_to_json(c.x);
    j["y"] = matrix_to_json(c.y);
    j["t"] = c.t;
    return j;
}

CaseOutcome monotone_outcome(const MapSpec& m, const MonotoneCase& c, Tolerance tol) {
    const HermMatrix fx = eval_cone(m, c.x);
    const HermMatrix fy = eval_cone(m, c.y);
    CaseOutcome o;
    o.margin = loewner_margin(fx, fy, tol);
    o.scale = std::max(spectral_norm(fx, tol), spectral_norm(fy, tol));
    return o;
}

CaseOutcome congruence_outcome(const MapSpec& m, const CongruenceCase& c, Tolerance tol) {
    const HermMatrix fa = eval_cone(m, c.a);
    const HermMatrix lhs = congruence(c.c, fa);
    const HermMatrix rhs = eval_cone(m, congruence(c.c, c.a));
    CaseOutcome o;
    o.margin = loewner_margin(lhs, rhs, tol);
    o.scale = std::max(spectral_norm(lhs, tol), spectral_norm(rhs, tol));
    return o;
}

CaseOutcome concave_outcome(const MapSpec& m, const ConcaveCase& c, Tolerance tol) {
    const HermMatrix mix = c.t * c.x + (1.0 - c.t) * c.y;
    const HermMatrix f_mix = eval_cone(m, mix);
    const HermMatrix fx = eval_cone(m, c.x);
    const HermMatrix fy = eval_cone(m, c.y);
    const HermMatrix combo = c.t * fx + (1.0 - c.t) * fy;
    CaseOutcome o;
    o.margin = loewner_margin(combo, f_mix, tol);
    o.scale = std::max({spectral_norm(f_mix, tol), spectral_norm(fx, tol), spectral_norm(fy, tol)});
    return o;
}

CaseOutcome normal_outcome(const MapSpec& m, const HermMatrix& a, int depth, Tolerance tol) {
    const HermMatrix fa = eval_cone(m, a);
    const double fa_norm = spectral_norm(fa, tol);
    CaseOutcome o;
    o.scale = std::max(fa_norm, 1.0);
    HermMatrix prev = eval_cone(m, staircase_lower(a, 1, StaircaseMode::general, tol));
    for (int n = 2; n <= depth; ++n) {
        const HermMatrix cur = eval_cone(m, staircase_lower(a, n, StaircaseMode::general, tol));
        o.margin = std::min(o.margin, loewner_margin(prev, cur, tol));
        prev = cur;
    }
    const double dist = spectral_norm(prev - fa, tol);
    const double conv_tol = std::ldexp(1.0, -depth / 2) * fa_norm + noise_threshold(o.scale, tol);
    if (dist > conv_tol) o.force_inconclusive = true;
    if (depth < 2) o.margin = 0.0;
    return o;
}

// Depth needed for the staircase to resolve the smallest positive eigenvalue;
// without this, well-posed inputs with small spectral spread read as
// "not yet converged" at any fixed depth.
int adaptive_depth(const HermMatrix& a, int base, Tolerance tol) {
    const SpectralDecomp d = eig(a, tol);
    double lmax_abs = 0.0;
    for (double l : d.eigenvalues) lmax_abs = std::max(lmax_abs, std::abs(l));
    const double zthr = zero_threshold(lmax_abs, tol);
    double minpos = std::numeric_limits<double>::infinity();
    for (double l : d.eigenvalues)
        if (l > zthr) minpos = std::min(minpos, l);
    if (!std::isfinite(minpos) || minpos <= 0.0) return base;
    const double kappa = std::max(1.0, d.lambda_max() / minpos);
    const int need = 2 * static_cast<int>(std::ceil(std::log2(kappa))) + 2;
    return std::min(std::max(base, need), 48);
}

std::vector<HermMatrix> normal_battery(int dim) {
    std::vector<HermMatrix> as;
    std::vector<double> d(dim, 0.0);
    for (int i = 0; i < dim && i < 2; ++i) d[i] = 1.0 / (i + 1);
    as.push_back(HermMatrix::diagonal(d));  // diag(1, 1/2, 0, ...)
    as.push_back(HermMatrix::identity(dim));
    std::vector<double> spread(dim);
    for (int i = 0; i < dim; ++i) spread[i] = 1.0 - 0.6 * i / std::max(1, dim - 1) + 0.01 * i;
    as.push_back(HermMatrix::diagonal(spread));
    if (dim >= 2) {
        Rng rng(kBatterySeed + 2);
        as.push_back(0.9 * rand_projection(dim, dim - 1, rng));
    }
    return as;
}

std::vector<std::vector<CMatrix>> gram_tuple_battery(int dim) {
    std::vector<std::vector<CMatrix>> tuples;
    if (dim >= 2) {
        CMatrix e11(dim), e12(dim), e21(dim), e22(dim);
        e11.at(0, 0) = 1.0;
        e12.at(0, 1) = 1.0;
        e21.at(1, 0) = 1.0;
        e22.at(1, 1) = 1.0;
        tuples.push_back({e11, e12});
        tuples.push_back({e11, e21});
        tuples.push_back({e11 + e12, e21 + e22});
        tuples.push_back({CMatrix::identity(dim), e11, e12});
    } else {
        CMatrix one(1), im(1);
        one.at(0, 0) = 1.0;
        im.at(0, 0) = cplx(0.0, 1.0);
        tuples.push_back({one, im});
    }
    return tuples;
}

std::vector<std::vector<CMatrix>> sampled_tuples(int dim, int count, int size, Rng& rng) {
    std::vector<std::vector<CMatrix>> tuples;
    for (int t = 0; t < count; ++t) {
        std::vector<CMatrix> tup;
        for (int k = 0; k < size; ++k) tup.push_back(rand_gaussian(dim, rng));
        tuples.push_back(std::move(tup));
    }
    return tuples;
}

// Gram table phi(a_i* a_j), hermitian-pair symmetric by construction of the
// inputs but not of the outputs; kept as raw matrices.
std::vector<std::vector<CMatrix>> gram_table(const MapSpec& m, const std::vector<CMatrix>& tuple) {
    const size_t n = tuple.size();
    std::vector<std::vector<CMatrix>> t(n, std::vector<CMatrix>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) t[i][j] = eval_alg(m, tuple[i].adjoint() * tuple[j]);
    return t;
}

HermMatrix gram_form(const std::vector<std::vector<CMatrix>>& table, const std::vector<cplx>& alpha,
                     int out_dim) {
    CMatrix s(out_dim);
    for (size_t i = 0; i < alpha.size(); ++i)
        for (size_t j = 0; j < alpha.size(); ++j)
            s = s + (std::conj(alpha[i]) * alpha[j]) * table[i][j];
    return HermMatrix::hermitize(s);
}

std::vector<std::vector<cplx>> alpha_cases(size_t tuple_size, int random_count, Rng& rng) {
    std::vector<std::vector<cplx>> alphas;
    for (size_t i = 0; i < tuple_size; ++i) {
        std::vector<cplx> e(tuple_size, cplx{});
        e[i] = 1.0;
        alphas.push_back(e);
    }
    alphas.emplace_back(tuple_size, cplx(1.0, 0.0));
    std::vector<cplx> alt(tuple_size);
    for (size_t i = 0; i < tuple_size; ++i) alt[i] = (i % 2 == 0) ? 1.0 : -1.0;
    alphas.push_back(alt);
    for (int r = 0; r < random_count; ++r) {
        std::vector<cplx> a(tuple_size);
        for (cplx& z : a) z = rng.cgaussian();
        alphas.push_back(a);
    }
    return alphas;
}

json tuple_to_json(const std::vector<CMatrix>& tuple) {
    json arr = json::array();
    for (const CMatrix& m : tuple) arr.push_back(matrix_to_json(m));
    return arr;
}

json alpha_to_json(const std::vector<cplx>& alpha) {
    json arr = json::array();
    for (const cplx& z : alpha) arr.push_back(json::array({z.real(), z.imag()}));
    return arr;
}

std::vector<cplx> alpha_from_json(const json& j) {
    std::vector<cplx> a;
    for (const json& row : j) a.emplace_back(row[0].get<double>(), row[1].get<double>());
    return a;
}

PropertyReport merge_reports(const std::string& property, std::vector<PropertyReport> parts,
                             std::uint64_t seed) {
    PropertyReport r;
    r.property = property;
    r.seed = seed;
    r.verdict = Verdict::pass;
    for (const PropertyReport& p : parts) {
        r.trials += p.trials;
        if (p.worst_margin < r.worst_margin) r.worst_margin = p.worst_margin;
        if (p.verdict == Verdict::fail && r.verdict != Verdict::fail) {
            r.verdict = Verdict::fail;
            r.counterexample = p.counterexample;
        } else if (p.verdict == Verdict::inconclusive && r.verdict == Verdict::pass) {
            r.verdict = Verdict::inconclusive;
        }
    }
    return r;
}

}  // namespace

PropertyReport check_monotone(const MapSpec& m, const CheckOptions& opt) {
    std::vector<MonotoneCase> cases = monotone_battery(m.in_dim);
    Rng rng(opt.seed);
    for (long t = 0; t < opt.trials; ++t) {
        MonotoneCase c;
        c.y = rand_psd(m.in_dim, rng, opt.sample_scale);
        c.x = rand_psd_between(c.y, rng);
        cases.push_back(std::move(c));
    }
    return run_campaign(
        "monotone", cases,
        [&](const MonotoneCase& c) { return monotone_outcome(m, c, opt.tol); },
        [&](const MonotoneCase& c) { return serialize_monotone(m, c); }, opt);
}

PropertyReport check_supercongruent(const MapSpec& m, const CheckOptions& opt) {
    std::vector<CongruenceCase> cases = congruence_battery(m.in_dim, opt.contraction_class);
    Rng rng(opt.seed);
    for (long t = 0; t < opt.trials; ++t) {
        CongruenceCase c;
        c.a = rand_psd(m.in_dim, rng, opt.sample_scale);
        c.c = rand_contraction(m.in_dim, rng, opt.contraction_class);
        cases.push_back(std::move(c));
    }
    const std::string property = opt.contraction_class == ContractionClass::positive
                                     ? "supercongruent"
                                     : "supercongruent_general";
    return run_campaign(
        property, cases,
        [&](const CongruenceCase& c) { return congruence_outcome(m, c, opt.tol); },
        [&](const CongruenceCase& c) { return serialize_congruence(m, c, opt.contraction_class); },
        opt);
}

PropertyReport check_concave(const MapSpec& m, const CheckOptions& opt) {
    std::vector<ConcaveCase> cases = concave_battery(m.in_dim);
    Rng rng(opt.seed);
    const double grid[5] = {0.0, 0.25, 0.5, 0.75, 1.0};
    for (long t = 0; t < opt.trials; ++t) {
        ConcaveCase c;
        c.x = rand_psd(m.in_dim, rng, opt.sample_scale);
        c.y = rand_psd(m.in_dim, rng, opt.sample_scale);
        c.t = t % 2 == 0 ? grid[(t / 2) % 5] : rng.uniform();
        cases.push_back(std::move(c));
    }
    return run_campaign(
        "concave", cases, [&](const ConcaveCase& c) { return concave_outcome(m, c, opt.tol); },
        [&](const ConcaveCase& c) { return serialize_concave(m, c); }, opt);
}

PropertyReport check_normal_staircase(const MapSpec& m, const HermMatrix& a, int depth,
                                      const CheckOptions& opt) {
    std::vector<HermMatrix> cases{a};
    return run_campaign(
        "normal", cases,
        [&](const HermMatrix& base) { return normal_outcome(m, base, depth, opt.tol); },
        [&](const HermMatrix& base) {
            json j;
            j["kind"] = "normal_staircase";
            j["map"] = m.name;
            j["dim"] = m.in_dim;
            j["a"] = matrix_to_json(base);
            j["depth"] = depth;
            return j;
        },
        opt);
}

PropertyReport check_normal(const MapSpec& m, const CheckOptions& opt) {
    std::vector<HermMatrix> cases = normal_battery(m.in_dim);
    Rng rng(opt.seed);
    for (long t = 0; t < opt.trials; ++t) cases.push_back(rand_psd(m.in_dim, rng, opt.sample_scale));
    return run_campaign(
        "normal", cases,
        [&](const HermMatrix& base) {
            return normal_outcome(m, base, adaptive_depth(base, opt.normal_depth, opt.tol), opt.tol);
        },
        [&](const HermMatrix& base) {
            json j;
            j["kind"] = "normal_staircase";
            j["map"] = m.name;
            j["dim"] = m.in_dim;
            j["a"] = matrix_to_json(base);
            j["depth"] = adaptive_depth(base, opt.normal_depth, opt.tol);
            return j;
        },
        opt);
}

PropertyReport gram_positive_type(const MapSpec& m, const std::vector<CMatrix>& tuple,
                                  const CheckOptions& opt) {
    if (tuple.empty()) throw Error("gram_positive_type: empty tuple");
    const auto table = gram_table(m, tuple);
    Rng rng(opt.seed);
    const auto alphas = alpha_cases(tuple.size(), opt.alpha_trials, rng);
    return run_campaign(
        "positive_type", alphas,
        [&](const std::vector<cplx>& alpha) {
            const HermMatrix s = gram_form(table, alpha, m.out_dim);
            CaseOutcome o;
            const SpectralDecomp d = eig(s, opt.tol);
            o.margin = d.lambda_min();
            o.scale = std::max(std::abs(d.lambda_max()), std::abs(d.lambda_min()));
            return o;
        },
        [&](const std::vector<cplx>& alpha) {
            json j;
            j["kind"] = "gram_positive_type";
            j["map"] = m.name;
            j["dim"] = m.in_dim;
            j["tuple"] = tuple_to_json(tuple);
            j["alpha"] = alpha_to_json(alpha);
            return j;
        },
        opt);
}

PropertyReport check_positive_type(const MapSpec& m, const CheckOptions& opt) {
    std::vector<std::vector<CMatrix>> tuples = gram_tuple_battery(m.in_dim);
    Rng rng(opt.seed ^ 0x9e3779b97f4a7c15ull);
    for (auto& t : sampled_tuples(m.in_dim, opt.tuple_count, opt.tuple_size, rng))
        tuples.push_back(std::move(t));
    std::vector<PropertyReport> parts;
    for (const auto& t : tuples) parts.push_back(gram_positive_type(m, t, opt));
    return merge_reports("positive_type", std::move(parts), opt.seed);
}

PropertyReport block_positive_definite(const MapSpec& m, const std::vector<CMatrix>& tuple,
                                       Tolerance tol) {
    if (tuple.empty()) throw Error("block_positive_definite: empty tuple");
    const auto table = gram_table(m, tuple);
    const int n = static_cast<int>(tuple.size());
    const int od = m.out_dim;
    CMatrix block(n * od);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int r = 0; r < od; ++r)
                for (int c = 0; c < od; ++c) block.at(i * od + r, j * od + c) = table[i][j].at(r, c);
    const HermMatrix h = HermMatrix::hermitize(block);
    const SpectralDecomp d = eig(h, tol);
    PropertyReport rep;
    rep.property = "positive_definite";
    rep.trials = 1;
    rep.worst_margin = d.lambda_min();
    const double scale = std::max(std::abs(d.lambda_max()), std::abs(d.lambda_min()));
    const double thr = noise_threshold(scale, tol);
    if (d.lambda_min() < -kFailFactor * thr) {
        rep.verdict = Verdict::fail;
        json j;
        j["kind"] = "block_positive_definite";
        j["map"] = m.name;
        j["dim"] = m.in_dim;
        j["tuple"] = tuple_to_json(tuple);
        rep.counterexample = j;
    } else if (d.lambda_min() < -thr) {
        rep.verdict = Verdict::inconclusive;
    } else {
        rep.verdict = Verdict::pass;
    }
    return rep;
}

PropertyReport check_positive_definite(const MapSpec& m, const CheckOptions& opt) {
    std::vector<std::vector<CMatrix>> tuples = gram_tuple_battery(m.in_dim);
    Rng rng(opt.seed ^ 0xda3e39cb94b95bdbull);
    for (auto& t : sampled_tuples(m.in_dim, opt.tuple_count, opt.tuple_size, rng))
        tuples.push_back(std::move(t));
    std::vector<PropertyReport> parts;
    for (const auto& t : tuples) parts.push_back(block_positive_definite(m, t, opt.tol));
    PropertyReport r = merge_reports("positive_definite", std::move(parts), opt.seed);
    return r;
}

std::pair<double, PropertyReport> bounded_type_ratio(const MapSpec& m, const CMatrix& a,
                                                     const std::vector<CMatrix>& tuple,
                                                     const CheckOptions& opt) {
    if (tuple.empty()) throw Error("bounded_type_ratio: empty tuple");
    const CMatrix asq = a.adjoint() * a;
    const std::vector<double> scales = {0.5, 1.0, 2.0, 4.0};
    Rng rng(opt.seed);

    double k_estimate = 0.0;
    double worst_gram_margin = std::numeric_limits<double>::infinity();
    bool divergence_witness = false;
    bool saw_infinite = false;
    long samples = 0, valid = 0;
    std::vector<double> per_scale_max(scales.size(), 0.0);

    for (size_t si = 0; si < scales.size(); ++si) {
        std::vector<CMatrix> scaled;
        for (const CMatrix& t : tuple) scaled.push_back(scales[si] * t);
        // Twisted table phi(a_i* a* a a_j) alongside the plain Gram table.
        const size_t n = scaled.size();
        std::vector<std::vector<CMatrix>> plain(n, std::vector<CMatrix>(n));
        std::vector<std::vector<CMatrix>> twisted(n, std::vector<CMatrix>(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                plain[i][j] = eval_alg(m, scaled[i].adjoint() * scaled[j]);
                twisted[i][j] = eval_alg(m, scaled[i].adjoint() * asq * scaled[j]);
            }
        const auto alphas = alpha_cases(n, opt.alpha_trials, rng);
        for (const auto& alpha : alphas) {
            const HermMatrix s = gram_form(plain, alpha, m.out_dim);
            const HermMatrix sa = gram_form(twisted, alpha, m.out_dim);
            const SpectralDecomp ds = eig(s, opt.tol);
            worst_gram_margin = std::min(worst_gram_margin, ds.lambda_min());
            const double s_scale = std::max(std::abs(ds.lambda_max()), 1.0);
            const double den_floor = noise_threshold(s_scale, opt.tol);
            for (int v = 0; v < opt.vector_trials; ++v) {
                std::vector<cplx> xi(m.out_dim);
                for (cplx& z : xi) z = rng.cgaussian();
                double norm = 0.0;
                for (const cplx& z : xi) norm += std::norm(z);
                if (norm == 0.0) continue;
                ++samples;
                const double den = inner(matvec(s.mat(), xi), xi).real() / norm;
                const double num = inner(matvec(sa.mat(), xi), xi).real() / norm;
                if (den > den_floor) {
                    ++valid;
                    const double ratio = num / den;
                    if (!std::isfinite(ratio)) {
                        saw_infinite = true;
                    } else {
                        k_estimate = std::max(k_estimate, ratio);
                        per_scale_max[si] = std::max(per_scale_max[si], ratio);
                    }
                } else if (num > 1000.0 * den_floor) {
                    divergence_witness = true;  // numerator alive, denominator collapsed
                }
            }
        }
    }

    PropertyReport r;
    r.property = "boundedly_positive_type";
    r.trials = samples;
    r.seed = opt.seed;
    r.worst_margin = worst_gram_margin;
    const double first = per_scale_max.front();
    const double last = per_scale_max.back();
    const bool diverging = saw_infinite || divergence_witness ||
                           (last > 10.0 * first && last > first + 1.0);
    if (diverging) {
        r.verdict = Verdict::fail;
        json j;
        j["kind"] = "bounded_type";
        j["map"] = m.name;
        j["dim"] = m.in_dim;
        j["a"] = matrix_to_json(a);
        j["tuple"] = tuple_to_json(tuple);
        j["ratio_by_scale"] = per_scale_max;
        r.counterexample = j;
    } else if (valid < 8) {
        r.verdict = Verdict::inconclusive;
    } else {
        r.verdict = Verdict::pass;
    }
    return {k_estimate, r};
}

std::pair<double, PropertyReport> check_boundedly_positive_type(const MapSpec& m,
                                                                const CheckOptions& opt) {
    Rng rng(opt.seed ^ 0xc2b2ae3d27d4eb4full);
    CMatrix a = rand_gaussian(m.in_dim, rng);
    const double top = sigma_max(a, opt.tol);
    if (top > 0.0) a = (2.0 / top) * a;  // pin ||a|| = 2
    const auto tuples = sampled_tuples(m.in_dim, 1, opt.tuple_size, rng);
    return bounded_type_ratio(m, a, tuples.front(), opt);
}

double replay_margin(const MapSpec& m, const json& cex, Tolerance tol) {
    const std::string kind = cex.at("kind").get<std::string>();
    if (kind == "monotone") {
        MonotoneCase c{herm_from_json(cex.at("x")), herm_from_json(cex.at("y"))};
        return monotone_outcome(m, c, tol).margin;
    }
    if (kind == "supercongruent") {
        CongruenceCase c{herm_from_json(cex.at("a")), cmatrix_from_json(cex.at("c"))};
        return congruence_outcome(m, c, tol).margin;
    }
    if (kind == "concave") {
        ConcaveCase c{herm_from_json(cex.at("x")), herm_from_json(cex.at("y")),
                      cex.at("t").get<double>()};
        return concave_outcome(m, c, tol).margin;
    }
    if (kind == "normal_staircase") {
        return normal_outcome(m, herm_from_json(cex.at("a")), cex.at("depth").get<int>(), tol)
            .margin;
    }
    if (kind == "gram_positive_type") {
        std::vector<CMatrix> tuple;
        for (const json& t : cex.at("tuple")) tuple.push_back(cmatrix_from_json(t));
        const auto table = gram_table(m, tuple);
        const HermMatrix s = gram_form(table, alpha_from_json(cex.at("alpha")), m.out_dim);
        return eig(s, tol).lambda_min();
    }
    if (kind == "block_positive_definite") {
        std::vector<CMatrix> tuple;
        for (const json& t : cex.at("tuple")) tuple.push_back(cmatrix_from_json(t));
        return block_positive_definite(m, tuple, tol).worst_margin;
    }
    throw Error("replay_margin: unknown counterexample kind '" + kind + "'");
}

PropertyReport run_property(const MapSpec& m, const std::string& property,
                            const CheckOptions& opt) {
    if (property == "monotone") return check_monotone(m, opt);
    if (property == "supercongruent") return check_supercongruent(m, opt);
    if (property == "concave") return check_concave(m, opt);
    if (property == "normal") return check_normal(m, opt);
    if (property == "positive_type") return check_positive_type(m, opt);
    if (property == "boundedly_positive_type") return check_boundedly_positive_type(m, opt).second;
    if (property == "positive_definite") return check_positive_definite(m, opt);
    throw Error("run_property: unknown property '" + property + "'");
}

}  // namespace nlpm
