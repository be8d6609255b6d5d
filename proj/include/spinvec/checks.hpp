#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "spinvec/types.hpp"

namespace spinvec {

/// One reproduced value: the measured result against its reference target.
struct CheckItem {
    std::string id;
    std::string description;
    double expected;
    double actual;
    double tolerance;
    bool pass;
};

struct CheckTable {
    std::vector<CheckItem> items;
    bool all_pass;
};

/// Recomputes every headline value of the fluctuation-based vector model
/// (single-spin fluctuations, two-spin correlation cases, stretched-state
/// quadrature sums, the coupled-state sweep identities, effective units)
/// and compares each against its reference value at the given absolute
/// tolerance. Aggregate items report a maximum deviation with target 0.
CheckTable value_table(double tolerance = kTol);

nlohmann::ordered_json table_document(const CheckTable& table, double tolerance);
std::string table_text(const CheckTable& table);

}  // namespace spinvec
