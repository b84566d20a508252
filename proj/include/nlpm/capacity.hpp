#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nlpm/herm.hpp"
#include "nlpm/random.hpp"

namespace nlpm {

// Monotone set function on subsets of {1,...,n}, stored densely by bitmask
// (little-endian: bit i <-> element i+1).  Construction validates mu(empty)=0
// and monotonicity on every single-bit superset, which implies the rest.
class Capacity {
public:
    Capacity(int n, std::vector<double> values);

    int n() const { return n_; }
    std::uint32_t subset_count() const { return 1u << n_; }
    double value(std::uint32_t mask) const { return v_[mask]; }
    double total() const { return v_.back(); }
    const std::vector<double>& values() const { return v_; }

    static Capacity additive(const std::vector<double>& weights);
    static Capacity unanimity(int n, std::uint32_t t);
    static Capacity random_monotone(int n, Rng& rng);

private:
    int n_;
    std::vector<double> v_;
};

// PSD-matrix-valued monotone set function.
class OperatorCapacity {
public:
    OperatorCapacity(int n, int out_dim, std::vector<HermMatrix> values, Tolerance tol = {});

    int n() const { return n_; }
    int out_dim() const { return out_dim_; }
    const HermMatrix& value(std::uint32_t mask) const { return v_[mask]; }
    const std::vector<HermMatrix>& values() const { return v_; }

    static OperatorCapacity random_monotone(int n, int out_dim, Rng& rng);

private:
    int n_;
    int out_dim_;
    std::vector<HermMatrix> v_;
};

// Subset-indexed aggregation kernel I(x|B).  Must be monotone in x for the
// inclusion-exclusion integral to be order preserving.
struct InteractionOperator {
    std::string id;
    std::function<double(const std::vector<double>&, std::uint32_t)> eval;
};

InteractionOperator interaction_min();
InteractionOperator interaction_product();

// Sample check of pointwise monotonicity of I on [0, K]^n.
bool interaction_monotone_sampled(const InteractionOperator& op, int n, double K, int trials,
                                  std::uint64_t seed);

double choquet_scalar(const Capacity& mu, const std::vector<double>& x);
double choquet_matrix(const Capacity& mu, const HermMatrix& a, Tolerance tol = {});
HermMatrix choquet_matrix_operator(const OperatorCapacity& mu, const HermMatrix& a, Tolerance tol = {});

double sugeno_scalar(const Capacity& mu, const std::vector<double>& x);
double sugeno_matrix(const Capacity& mu, const HermMatrix& a, Tolerance tol = {});

// Inclusion-exclusion integral: sum over subsets A of mu(A) times the
// alternating superset sum of I(lambda|B).  With I = min this coincides with
// the Choquet integral.  Spectrum must lie in [0, K].
double inclusion_exclusion_matrix(const Capacity& mu, const HermMatrix& a,
                                  const InteractionOperator& op, double K, Tolerance tol = {});
HermMatrix inclusion_exclusion_matrix(const OperatorCapacity& mu, const HermMatrix& a,
                                      const InteractionOperator& op, double K, Tolerance tol = {});

// Signed Moebius masses of mu (index = bitmask) and its inverse.
std::vector<double> mobius(const Capacity& mu);
Capacity capacity_from_mobius(const std::vector<double>& masses);

}  // namespace nlpm
