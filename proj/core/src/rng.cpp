#include "flda/rng.hpp"

#include <cmath>
#include <numbers>

namespace flda {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t stream_key) : gen_(stream_key) {}

std::uint64_t Rng::derive(std::uint64_t seed, std::string_view tag,
                          std::uint64_t index) {
  std::uint64_t state = seed;
  std::uint64_t key = splitmix64(state);
  for (unsigned char ch : tag) {
    state ^= ch;
    key ^= splitmix64(state);
  }
  state ^= index;
  key ^= splitmix64(state);
  return key;
}

double Rng::uniform() {
  // 53 random bits into (0, 1); the +0.5 offset keeps 0 out of the range.
  const std::uint64_t bits = gen_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(angle);
  has_spare_ = true;
  return r * std::cos(angle);
}

std::uint64_t Rng::below(std::uint64_t n) {
  // Rejection sampling over the top multiple of n, unbiased.
  const std::uint64_t limit = n * (UINT64_MAX / n);
  std::uint64_t x;
  do {
    x = gen_();
  } while (x >= limit);
  return x % n;
}

Vec Rng::normal_vec(Eigen::Index n) {
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = normal();
  }
  return v;
}

Mat Rng::normal_mat(Eigen::Index rows, Eigen::Index cols) {
  Mat m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      m(i, j) = normal();
    }
  }
  return m;
}

}  // namespace flda
