#pragma once

// Randomized engine properties with pinned seeds. Each returns "" on success
// or a description of the first counterexample.

#include <cstdint>
#include <string>

namespace ddlite::testing {

/// semi-naive == naive == parallel == ground oracle.
std::string check_fixpoints(int programs, std::uint32_t seed);

/// Shuffling the rule order never changes the fixpoint.
std::string check_rule_order(int programs, std::uint32_t seed);

/// mgu(a, b) = s implies s(a) == s(b) and s is idempotent; a failed mgu is
/// never refuted by a simple instance.
std::string check_mgu(int pairs, std::uint32_t seed);

/// Every tree from auto_pt-instrumented random programs replays.
std::string check_proof_replay(int programs, std::uint32_t seed);

}  // namespace ddlite::testing
