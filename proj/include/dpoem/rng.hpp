#pragma once

#include <cstdint>
#include <random>

namespace dpoem {

using Rng = std::mt19937_64;

/// Stream domains. Every random consumer draws from its own derived stream so
/// that results do not depend on the order in which agents are processed.
enum class StreamTag : std::uint64_t {
  kGraph = 1,
  kPartition = 2,
  kAgent = 3,
  kSynthetic = 4,
  kSubsample = 5,
};

/// One step of the splitmix64 generator; advances `state`.
std::uint64_t splitmix64(std::uint64_t& state);

/// Deterministic child seed for (master, tag, index).
std::uint64_t derive_seed(std::uint64_t master, StreamTag tag, std::uint64_t index = 0);

inline Rng make_stream(std::uint64_t master, StreamTag tag, std::uint64_t index = 0) {
  return Rng(derive_seed(master, tag, index));
}

}  // namespace dpoem
