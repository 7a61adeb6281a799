#pragma once

#include <optional>
#include <vector>

namespace ncdeg {

using WeightGrid = std::vector<std::vector<std::optional<long long>>>;

// Maximum total weight of a perfect matching in a square grid where
// std::nullopt marks a missing edge. nullopt if no perfect matching exists.
std::optional<long long> max_weight_perfect_matching(const WeightGrid& w, std::vector<int>* match = nullptr);
// Also returns potentials with row_pot[i] + col_pot[j] >= w[i][j] on every
// edge and equality summing to the optimum.
std::optional<long long> max_weight_perfect_matching(const WeightGrid& w, std::vector<long long>& row_pot,
                                                     std::vector<long long>& col_pot);
std::optional<long long> min_weight_perfect_matching(const WeightGrid& w, std::vector<int>* match = nullptr);

// Size of a maximum matching (Kuhn) on the support of w.
int max_matching_size(const WeightGrid& w);

}  // namespace ncdeg
