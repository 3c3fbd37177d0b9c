#include "tecash/denom.hpp"

#include <limits>
#include <stdexcept>

namespace tecash {

void check_denoms(const DenominationSet& denoms) {
    if (denoms.empty() || denoms.front() != 1)
        throw std::invalid_argument("denomination set must start at 1");
    for (std::size_t i = 1; i < denoms.size(); i++)
        if (denoms[i] <= denoms[i - 1])
            throw std::invalid_argument("denominations must strictly increase");
}

SpendPlan greedy_decompose(std::uint64_t price,
                           const DenominationSet& denoms) {
    check_denoms(denoms);
    if (price == 0) throw std::invalid_argument("price must be positive");
    SpendPlan plan;
    std::uint64_t left = price;
    for (std::size_t i = denoms.size(); i-- > 0 && left > 0;) {
        std::uint64_t c = left / denoms[i];
        if (c == 0) continue;
        plan.emplace_back(denoms[i], c);
        left -= c * denoms[i];
    }
    return plan;
}

std::uint64_t plan_coins(const SpendPlan& plan) {
    std::uint64_t total = 0;
    for (const auto& [d, c] : plan) total += c;
    return total;
}

double average_coins(const DenominationSet& denoms, std::uint64_t p_max) {
    check_denoms(denoms);
    if (p_max == 0) throw std::invalid_argument("p_max must be positive");
    // Greedy count per price without building plans.
    std::uint64_t sum = 0;
    for (std::uint64_t p = 1; p <= p_max; p++) {
        std::uint64_t left = p;
        for (std::size_t i = denoms.size(); i-- > 0 && left > 0;) {
            sum += left / denoms[i];
            left %= denoms[i];
        }
    }
    return static_cast<double>(sum) / static_cast<double>(p_max);
}

std::uint64_t optimal_decompose_oracle(std::uint64_t price,
                                       const DenominationSet& denoms) {
    check_denoms(denoms);
    if (price == 0 || price > 100000)
        throw std::invalid_argument("oracle supports prices in [1, 1e5]");
    const std::uint64_t inf = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> best(price + 1, inf);
    best[0] = 0;
    for (std::uint64_t p = 1; p <= price; p++)
        for (std::uint64_t d : denoms) {
            if (d > p) break;
            if (best[p - d] != inf && best[p - d] + 1 < best[p])
                best[p] = best[p - d] + 1;
        }
    return best[price];
}

}  // namespace tecash
