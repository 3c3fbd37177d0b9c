#pragma once

// Deterministic multi-actor scenario runner. A scenario is a JSON document
// declaring a scheme, threshold parameters and an ordered action list;
// the runner executes it against the real modules, emits a JSON-lines
// transcript and checks the scripted expectations.

#include <cstdint>
#include <string>
#include <vector>

namespace tecash {

struct ScenarioResult {
    bool ok = true;
    std::vector<std::string> failures;
    std::string transcript;  // JSON lines, one per action
};

// Scenario document:
// {
//   "scheme": "compact" | "divisible",
//   "t": 2, "n": 3, "L": 6,
//   "unregistered": ["u2"],               // optional: users kept out of the registry
//   "actions": [
//     {"op": "withdraw", "user": "u1", "wallet": "w1"},
//     {"op": "clone-wallet", "from": "w1", "to": "w2"},
//     {"op": "spend", "user": "u1", "wallet": "w1", "provider": "p1",
//      "v": 2, "payment": "pay1", "expect_ok": true},
//     {"op": "deposit", "provider": "p1", "payment": "pay1", "expect_ok": true},
//     {"op": "raw-append", "provider": "p2", "payment": "pay1"},
//     {"op": "depvf", "payment": "pay1", "expect": "cleared",
//      "expect_user": "u1", "expect_providers": ["p2"]}
//   ]
// }
// Users, providers and wallets come into existence on first mention;
// every payment travels between actors as serialized bytes.
ScenarioResult run_scenario(const std::string& scenario_json,
                            std::uint64_t seed);

}  // namespace tecash
