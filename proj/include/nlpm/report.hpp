#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include <json.hpp>

namespace nlpm {

enum class Verdict { pass, fail, inconclusive };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

// Outcome of a sampled property check.  A fail verdict always carries a
// replayable counterexample; pass means "no violation found at this budget".
struct PropertyReport {
    std::string property;
    Verdict verdict = Verdict::pass;
    long trials = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    std::optional<nlohmann::json> counterexample;
    std::uint64_t seed = 0;
};

nlohmann::json report_to_json(const PropertyReport& r);

}  // namespace nlpm
