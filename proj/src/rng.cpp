#include "rainbow/rng.hpp"

#include <algorithm>
#include <string>

#include "rainbow/errors.hpp"

namespace rainbow {

std::vector<int> Rng::sample_distinct(int n, int count) {
  if (count < 0 || count > n) throw contract_error("sample_distinct: count out of range");
  // Floyd's algorithm: O(count) draws, no O(n) scratch.
  std::vector<int> out;
  out.reserve((size_t)count);
  for (int j = n - count; j < n; ++j) {
    int t = (int)below((std::uint64_t)j + 1);
    if (std::find(out.begin(), out.end(), t) == out.end())
      out.push_back(t);
    else
      out.push_back(j);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> Rng::sample_from(const std::vector<int>& pool, int count) {
  std::vector<int> idx = sample_distinct((int)pool.size(), count);
  std::vector<int> out;
  out.reserve((size_t)count);
  for (int i : idx) out.push_back(pool[(size_t)i]);
  shuffle(out);
  return out;
}

std::uint64_t fnv1a64(const void* data, std::size_t len) {
  const unsigned char* p = (const unsigned char*)data;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fnv1a64(const std::string& s) { return fnv1a64(s.data(), s.size()); }

}  // namespace rainbow
