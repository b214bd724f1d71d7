#include "dpoem/rng.hpp"

namespace dpoem {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, StreamTag tag, std::uint64_t index) {
  std::uint64_t state = master;
  std::uint64_t h = splitmix64(state);
  state = h ^ (static_cast<std::uint64_t>(tag) * 0xd6e8feb86659fd93ULL);
  h = splitmix64(state);
  state = h ^ index;
  return splitmix64(state);
}

}  // namespace dpoem
