#include "agnn/kernels.hpp"

#include <stdexcept>

namespace agnn::kernels {

DisplacementArray exclusive_prefix_sum(const ConditionArray& c) {
  const std::size_t L = c.size();
  DisplacementArray x(c.begin(), c.end());
  // Hillis-Steele layered network: after pass d, x[i] holds the inclusive
  // sum over the window (i-2d, i].
  for (std::size_t d = 1; d < L; d <<= 1)
    for (std::size_t i = L; i-- > d;) x[i] += x[i - d];
  // Inclusive -> exclusive.
  for (std::size_t i = 0; i < L; ++i) x[i] -= c[i];
  return x;
}

std::vector<std::uint64_t> relocate(std::span<const std::uint64_t> values,
                                    const ConditionArray& c,
                                    const DisplacementArray& d) {
  const std::size_t L = values.size();
  if (c.size() != L || d.size() != L)
    throw std::invalid_argument("relocate: length mismatch");
  std::uint64_t running = 0;
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < L; ++i) {
    if (d[i] != running)
      throw std::invalid_argument(
          "relocate: displacement array inconsistent with conditions at " +
          std::to_string(i));
    if (c[i]) {
      out.push_back(values[i]);
      ++running;
    }
  }
  return out;
}

std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>
set_partition(std::span<const std::uint64_t> values, const ConditionArray& c) {
  if (c.size() != values.size())
    throw std::invalid_argument("set_partition: length mismatch");
  ConditionArray not_c(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) not_c[i] = !c[i];
  return {relocate(values, c, exclusive_prefix_sum(c)),
          relocate(values, not_c, exclusive_prefix_sum(not_c))};
}

std::size_t set_count(std::span<const Vid> values, Vid threshold,
                      CountMode mode) {
  std::size_t count = 0;
  for (Vid v : values)
    count += mode == CountMode::greater_equal ? v >= threshold : v == threshold;
  return count;
}

std::size_t set_count_ge(std::span<const Vid> values, std::uint64_t threshold) {
  std::size_t count = 0;
  for (Vid v : values) count += v >= threshold;
  return count;
}

}  // namespace agnn::kernels
