#pragma once

// Multi-denomination payment planning: greedy decomposition of a price
// into coins, exact average coin counts over a price range, and a small
// dynamic-programming oracle for minimal representations.

#include <cstdint>
#include <utility>
#include <vector>

namespace tecash {

// Sorted ascending, distinct, positive, containing 1.
using DenominationSet = std::vector<std::uint64_t>;

// (denomination, count) pairs, largest denomination first.
using SpendPlan = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

// Throws std::invalid_argument on a malformed set.
void check_denoms(const DenominationSet& denoms);

SpendPlan greedy_decompose(std::uint64_t price, const DenominationSet& denoms);

std::uint64_t plan_coins(const SpendPlan& plan);

// Mean greedy coin count over prices 1..p_max, exact rational arithmetic.
double average_coins(const DenominationSet& denoms, std::uint64_t p_max);

// DP minimum coin count; test oracle, price capped at 10^5.
std::uint64_t optimal_decompose_oracle(std::uint64_t price,
                                       const DenominationSet& denoms);

}  // namespace tecash
