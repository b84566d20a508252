#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "nlpm/calculus.hpp"

namespace nlpm {

enum class MapKind { cone_map, algebra_map };

// A named evaluator for a non-linear map.  Cone maps act on the positive
// cone and are expected (not enforced) to return PSD values; a non-PSD value
// is a reportable finding for the checkers, not a crash.  Algebra maps must
// accept arbitrary square complex matrices.
struct MapSpec {
    std::string name;
    MapKind kind = MapKind::cone_map;
    int in_dim = 0;
    int out_dim = 0;
    std::function<HermMatrix(const HermMatrix&)> cone_eval;
    std::function<CMatrix(const CMatrix&)> alg_eval;
    std::map<std::string, bool> expected_profile;
    std::string doc;
};

std::vector<std::string> builtin_map_names();

// Instantiate a builtin family at the given dimension.  exp_scalar only
// exists at dim 1; det maps to dim 1; tensor_square maps to dim^2.
MapSpec make_map(const std::string& name, int dim);

// Every builtin instantiable at `dim`.
std::vector<MapSpec> builtin_maps(int dim);

}  // namespace nlpm
