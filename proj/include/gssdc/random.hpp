#pragma once

#include <cstdint>
#include <random>

namespace gssdc {

// Derive an independent child seed from a master seed and a stream index
// (splitmix64 finalizer; stable across platforms).
std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream);

// Deterministic random stream. mt19937_64 supplies the bits; the mappings to
// doubles are explicit because std::uniform_real_distribution and
// std::normal_distribution are implementation-defined and would break
// byte-identical reruns across standard libraries.
class RandomStream {
public:
  explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; the second variate of each pair is cached.
  double normal();

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  // Uniform on {0, ..., n-1} by rejection (n > 0).
  int uniform_int(int n);

private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace gssdc
