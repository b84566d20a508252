#pragma once

#include <utility>

#include "nlpm/maps.hpp"
#include "nlpm/random.hpp"
#include "nlpm/report.hpp"

namespace nlpm {

// Trial evaluation backend.  Both paths build the identical case list first
// and reduce margins with an order-independent min, so reports are
// bit-identical whichever backend runs them; `serial` is the reference
// implementation, `parallel` fans the evaluations out over OpenMP threads.
enum class Exec { serial, parallel };

struct CheckOptions {
    long trials = 500;
    std::uint64_t seed = 0;
    Tolerance tol{};
    Exec exec = Exec::parallel;
    ContractionClass contraction_class = ContractionClass::positive;
    int normal_depth = 12;
    int alpha_trials = 32;      // Gram-form coefficient draws per tuple
    int vector_trials = 16;     // state vectors per coefficient draw
    int tuple_count = 4;        // random tuples for algebra-map campaigns
    int tuple_size = 3;
    double sample_scale = 2.0;  // spectral-norm scale of random PSD samples
};

// Order check on exact-order sampled pairs plus a structured battery.
PropertyReport check_monotone(const MapSpec& m, const CheckOptions& opt = {});

// c phi(a) c <= phi(c a c) for positive contractions (class positive) or
// c* phi(a) c <= phi(c* a c) for arbitrary contractions (class general).
PropertyReport check_supercongruent(const MapSpec& m, const CheckOptions& opt = {});

PropertyReport check_concave(const MapSpec& m, const CheckOptions& opt = {});

// Normality surrogate on the dyadic staircase chain a_n of a single matrix:
// phi(a_n) must be Loewner-increasing, and phi(a_depth) must be within
// 2^(-depth/2) ||phi(a)|| (+ tol) of phi(a).  Increasing but unconverged is
// inconclusive, not a failure.
PropertyReport check_normal_staircase(const MapSpec& m, const HermMatrix& a, int depth,
                                      const CheckOptions& opt = {});

// Staircase check over a battery of base points plus sampled ones.
PropertyReport check_normal(const MapSpec& m, const CheckOptions& opt = {});

// Gram positivity: S(alpha) = sum conj(alpha_i) alpha_j phi(a_i* a_j) must be
// PSD for every coefficient vector.
PropertyReport gram_positive_type(const MapSpec& m, const std::vector<CMatrix>& tuple,
                                  const CheckOptions& opt = {});
PropertyReport check_positive_type(const MapSpec& m, const CheckOptions& opt = {});

// Ratio of the a-twisted Gram form against the plain one over escalating
// tuple scales.  Returns the largest observed ratio (the K estimate) and a
// report: fail when the ratio diverges across scales or the denominator
// collapses while the numerator stays positive.
std::pair<double, PropertyReport> bounded_type_ratio(const MapSpec& m, const CMatrix& a,
                                                     const std::vector<CMatrix>& tuple,
                                                     const CheckOptions& opt = {});
std::pair<double, PropertyReport> check_boundedly_positive_type(const MapSpec& m,
                                                                const CheckOptions& opt = {});

// PSD test of the full block matrix [phi(a_i* a_j)]_ij.
PropertyReport block_positive_definite(const MapSpec& m, const std::vector<CMatrix>& tuple,
                                       Tolerance tol = {});
PropertyReport check_positive_definite(const MapSpec& m, const CheckOptions& opt = {});

// Re-evaluate a serialized counterexample; returns the margin it produces.
double replay_margin(const MapSpec& m, const nlohmann::json& counterexample, Tolerance tol = {});

// Dispatch by property name ("monotone", "supercongruent", "concave",
// "normal", "positive_type", "boundedly_positive_type", "positive_definite").
PropertyReport run_property(const MapSpec& m, const std::string& property,
                            const CheckOptions& opt = {});

}  // namespace nlpm
