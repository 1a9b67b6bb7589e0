#pragma once

#include <functional>
#include <vector>

namespace rainbow {

/// C(n, k) in exact 64-bit arithmetic. Throws resource_error on overflow.
long long binomial(int n, int k);

/// First k-subset of [0, n) in lexicographic order: {0, 1, ..., k-1}.
std::vector<int> first_k_subset(int k);

/// Advances `s` to the next k-subset of [0, n) in lexicographic order.
/// Returns false (leaving `s` untouched) when `s` is already the last one.
bool next_k_subset(std::vector<int>& s, int n);

void for_each_k_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn);

std::vector<std::vector<int>> all_k_subsets(int n, int k);

/// Rank of a sorted set in colexicographic order over all sets of its size.
long long colex_rank(const std::vector<int>& sorted_set);

}  // namespace rainbow
