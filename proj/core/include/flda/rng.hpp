#ifndef FLDA_RNG_HPP_
#define FLDA_RNG_HPP_

#include <cstdint>
#include <random>
#include <string_view>

#include "flda/kernels.hpp"

namespace flda {

// Reproducible, splittable randomness. Every consumer derives its own
// stream from (seed, purpose-tag, index) via a splitmix64 hash of the
// three components; the stream itself is std::mt19937_64, whose output
// sequence is fixed by the standard. Normal variates use Box-Muller on
// explicitly constructed 53-bit uniforms, so no library distribution
// object is involved.
class Rng {
 public:
  explicit Rng(std::uint64_t stream_key);

  /// Derive a stream key from a master seed, a purpose tag and an index.
  static std::uint64_t derive(std::uint64_t seed, std::string_view tag,
                              std::uint64_t index = 0);

  /// Uniform double in (0, 1).
  double uniform();

  /// Standard normal variate.
  double normal();

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

  /// Vector of iid standard normals.
  Vec normal_vec(Eigen::Index n);

  /// Matrix of iid standard normals (column-major fill order).
  Mat normal_mat(Eigen::Index rows, Eigen::Index cols);

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace flda

#endif  // FLDA_RNG_HPP_
