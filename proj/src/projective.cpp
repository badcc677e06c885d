#include "eloop/projective.hpp"

namespace eloop {

std::uint64_t count_projective(std::uint32_t n, const RingConfig& cfg) {
  const std::uint64_t r = cfg.size();
  const std::uint64_t m = cfg.ideal_size();
  std::uint64_t total = 0;
  for (std::uint32_t i = 0; i <= n; ++i) total += ipow(r, n - i) * ipow(m, i);
  return total;
}

}  // namespace eloop
