#include "rainbow/combinatorics.hpp"

#include "rainbow/errors.hpp"

namespace rainbow {

long long binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (unsigned __int128)(n - k + i) / (unsigned __int128)i;
    if (r > (unsigned __int128)0x7fffffffffffffffULL)
      throw resource_error("binomial overflow for C(" + std::to_string(n) + "," + std::to_string(k) + ")");
  }
  return (long long)r;
}

std::vector<int> first_k_subset(int k) {
  std::vector<int> s((size_t)k);
  for (int i = 0; i < k; ++i) s[(size_t)i] = i;
  return s;
}

bool next_k_subset(std::vector<int>& s, int n) {
  int k = (int)s.size();
  int i = k - 1;
  while (i >= 0 && s[(size_t)i] == n - k + i) --i;
  if (i < 0) return false;
  ++s[(size_t)i];
  for (int j = i + 1; j < k; ++j) s[(size_t)j] = s[(size_t)(j - 1)] + 1;
  return true;
}

void for_each_k_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> s = first_k_subset(k);
  do {
    fn(s);
  } while (next_k_subset(s, n));
}

std::vector<std::vector<int>> all_k_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  for_each_k_subset(n, k, [&](const std::vector<int>& s) { out.push_back(s); });
  return out;
}

long long colex_rank(const std::vector<int>& sorted_set) {
  long long r = 0;
  for (size_t i = 0; i < sorted_set.size(); ++i) r += binomial(sorted_set[i], (int)i + 1);
  return r;
}

}  // namespace rainbow
