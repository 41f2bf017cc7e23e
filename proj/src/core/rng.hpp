#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace levyspec {

// Philox4x32-10 block function (Salmon et al., Random123). Pure function of
// (counter, key); no internal state.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

std::uint64_t splitmix64(std::uint64_t x);

// Roles separate the independent streams consumed by one replication so that
// adding draws to one role never shifts another.
enum class StreamRole : std::uint64_t {
  kWeights = 1,
  kSigns = 2,
  kTree = 3,
  kPoissonDirichlet = 4,
  kPoissonPoints = 5,
  kSizeBiased = 6,
  kPsi = 7,
  kResidualCheck = 8,
  kGeneric = 99,
};

// Counter-based generator keyed by (seed, stream id). Streams are derived by
// hashing, so a replication's draws do not depend on which other replications
// ran or in what order. Satisfies UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;

  Rng(std::uint64_t seed, std::uint64_t stream);

  // Stream for (seed, replication, role, substream).
  static Rng for_replication(std::uint64_t seed, std::uint64_t rep, StreamRole role,
                             std::uint64_t substream = 0);

  // Independent child stream; same salt always yields the same child.
  Rng derive(std::uint64_t salt) const;

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  // Uniform on the open interval (0,1), 53-bit resolution.
  double uniform();
  // Unit-rate exponential.
  double exponential();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
};

}  // namespace levyspec
