#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nlpm/checkers.hpp"
#include "nlpm/json_io.hpp"

// The OpenMP path must be bit-identical to the serial reference: the case
// list is built up front and the reduction is an order-independent min.

using namespace nlpm;

namespace {

std::string render(const PropertyReport& r) { return report_to_json(r).dump(); }

CheckOptions with_exec(Exec e, std::uint64_t seed) {
    CheckOptions o;
    o.trials = 120;
    o.seed = seed;
    o.exec = e;
    return o;
}

}  // namespace

TEST_CASE("serial and parallel campaigns produce identical reports") {
    const std::vector<std::pair<std::string, std::string>> jobs = {
        {"calc_sqrt", "monotone"},       {"max_one", "monotone"},
        {"range_projection", "supercongruent"}, {"square", "supercongruent"},
        {"trace_unit", "concave"},       {"diag_square", "concave"},
        {"range_projection", "normal"},  {"transpose", "positive_type"},
        {"transpose", "positive_definite"},
    };
    for (const auto& [map_name, property] : jobs) {
        CAPTURE(map_name);
        CAPTURE(property);
        const MapSpec m = make_map(map_name, 3);
        for (std::uint64_t seed : {0ull, 42ull}) {
            const PropertyReport serial = run_property(m, property, with_exec(Exec::serial, seed));
            const PropertyReport parallel =
                run_property(m, property, with_exec(Exec::parallel, seed));
            CHECK(render(serial) == render(parallel));
        }
    }
}

TEST_CASE("bounded-type check is execution-independent") {
    const MapSpec m = make_map("trace_linear", 2);
    const auto [k1, r1] = check_boundedly_positive_type(m, with_exec(Exec::serial, 3));
    const auto [k2, r2] = check_boundedly_positive_type(m, with_exec(Exec::parallel, 3));
    CHECK(k1 == k2);
    CHECK(render(r1) == render(r2));
}
