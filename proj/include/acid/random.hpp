#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace acid {

//! Descriptor of a deterministic random stream. Two streams with the same
//! (master_seed, stream_id) produce byte-identical draw sequences; distinct
//! stream ids select distinct generator keys, so parallel replicates never
//! share state.
struct RandomStream {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

inline RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_id) {
  return RandomStream{master_seed, stream_id};
}

//! Counter-based generator (Philox-4x64, 10 rounds) keyed by the stream
//! descriptor. Draw helpers use fixed algorithms (no std::distribution)
//! so sequences are identical across platforms and compilers.
class Rng {
 public:
  explicit Rng(RandomStream stream)
      : key_{stream.master_seed, stream.stream_id} {}
  Rng(std::uint64_t master_seed, std::uint64_t stream_id)
      : Rng(RandomStream{master_seed, stream_id}) {}

  std::uint64_t next_u64() {
    if (buffer_pos_ == 4) refill();
    return buffer_[buffer_pos_++];
  }

  //! Uniform draw on [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  //! Uniform draw on (0, 1); never returns an exact endpoint.
  double uniform_open() {
    double u;
    do {
      u = uniform();
    } while (u == 0.0);
    return u;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  //! Unbiased integer in [0, n).
  std::uint64_t uniform_below(std::uint64_t n) {
    const std::uint64_t threshold = (0ULL - n) % n;
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  //! Standard normal via Box-Muller (second draw cached).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * pi_ * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  //! Exponential with unit rate.
  double exponential() { return -std::log(1.0 - uniform()); }

  //! Laplace(0, 1) as the difference of two unit exponentials.
  double laplace() { return exponential() - exponential(); }

  //! Gamma(shape, 1), Marsaglia-Tsang.
  double gamma(double shape) {
    if (shape < 1.0) {
      double u = uniform_open();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      double u = uniform_open();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double chi_square(double df) { return 2.0 * gamma(0.5 * df); }

  //! Standard Student-t with df degrees of freedom.
  double student_t(double df) {
    return normal() / std::sqrt(chi_square(df) / df);
  }

 private:
  static constexpr double pi_ = 3.14159265358979323846;
  static constexpr std::uint64_t mul0_ = 0xD2E7470EE14C6C93ULL;
  static constexpr std::uint64_t mul1_ = 0xCA5A826395121157ULL;
  static constexpr std::uint64_t weyl0_ = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t weyl1_ = 0xBB67AE8584CAA73BULL;

  static void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                      std::uint64_t& lo) {
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
  }

  void refill() {
    std::array<std::uint64_t, 4> c = counter_;
    std::array<std::uint64_t, 2> k = key_;
    for (int round = 0; round < 10; ++round) {
      std::uint64_t hi0, lo0, hi1, lo1;
      mulhilo(mul0_, c[0], hi0, lo0);
      mulhilo(mul1_, c[2], hi1, lo1);
      c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
      k[0] += weyl0_;
      k[1] += weyl1_;
    }
    buffer_ = c;
    buffer_pos_ = 0;
    if (++counter_[0] == 0)
      if (++counter_[1] == 0)
        if (++counter_[2] == 0) ++counter_[3];
  }

  std::array<std::uint64_t, 2> key_;
  std::array<std::uint64_t, 4> counter_{0, 0, 0, 0};
  std::array<std::uint64_t, 4> buffer_{};
  int buffer_pos_ = 4;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace acid
