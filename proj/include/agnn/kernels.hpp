#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "agnn/graph.hpp"

// The two redesigned data-path primitives shared by the engine simulators:
// set-partitioning (exclusive prefix sum + relocation) and set-counting.
// All functions are pure.
namespace agnn::kernels {

// Boolean condition vector paired 1:1 with a value array.
using ConditionArray = std::vector<std::uint8_t>;

// offsets[i] = number of true conditions strictly before i, i.e. the
// exclusive write index of element i in the compacted output.
using DisplacementArray = std::vector<std::uint64_t>;

// Computed by the layered adder network the hardware implements (log-depth
// inclusive scan, then shifted to exclusive form).
DisplacementArray exclusive_prefix_sum(const ConditionArray& c);

// Scatters values[i] to output[d[i]] for every true condition; stable.
// Throws std::invalid_argument if d is not the prefix sum of c.
std::vector<std::uint64_t> relocate(std::span<const std::uint64_t> values,
                                    const ConditionArray& c,
                                    const DisplacementArray& d);

// Stable split into (condition-true bucket, condition-false bucket).
std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>
set_partition(std::span<const std::uint64_t> values, const ConditionArray& c);

enum class CountMode { greater_equal, equal };

std::size_t set_count(std::span<const Vid> values, Vid threshold,
                      CountMode mode);

// 64-bit threshold variant so that callers can probe threshold+1 without
// wrapping at the top of the VID range. greater_equal semantics.
std::size_t set_count_ge(std::span<const Vid> values, std::uint64_t threshold);

}  // namespace agnn::kernels
