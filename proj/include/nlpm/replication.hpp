#pragma once

#include <string>
#include <vector>

#include "nlpm/checkers.hpp"

namespace nlpm {

// One replication case.  `matched` means the checkers produced the verdicts
// the source claims, so a reproduced counterexample (checker verdict "fail")
// still reads as a match.
struct CaseResult {
    std::string id;
    std::string location;
    std::string claim;
    bool matched = false;
    std::string note;
    std::vector<PropertyReport> reports;
};

struct OutOfScopeEntry {
    std::string id;
    std::string reason;
};

struct Ledger {
    std::uint64_t seed = 0;
    std::vector<CaseResult> cases;  // sorted by id
    std::vector<OutOfScopeEntry> out_of_scope;

    bool all_matched() const {
        for (const CaseResult& c : cases)
            if (!c.matched) return false;
        return true;
    }
};

// The ids every ledger must contain.
std::vector<std::string> expected_case_ids();

Ledger run_all(std::uint64_t seed, Exec exec = Exec::parallel);

nlohmann::json ledger_to_json(const Ledger& ledger);

}  // namespace nlpm
