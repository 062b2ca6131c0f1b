#pragma once

#include <string>
#include <vector>

#include "acid/random.hpp"

namespace acid {

//! Random mixture target for the density-estimation study: 2 or 3
//! components, means separated by at least 1.5, squared scales in
//! [0.5, 2], Gaussian or Student-t(5) component kernels, uniform-normalized
//! weights.
struct MixtureComponent {
  bool student_t = false;
  double mean = 0.0;
  double scale2 = 1.0;  // variance parameter (squared scale for Student-t)
  double weight = 0.0;
};

struct MixtureDgm {
  std::vector<MixtureComponent> components;

  double density(double x) const;
  double sample(Rng& rng) const;
  std::string to_json() const;
};

MixtureDgm dgm_mixture(Rng& rng);

enum class GpVariant { dgm1, dgm2, dgm3 };
const char* gp_variant_name(GpVariant v);
GpVariant gp_variant_from_name(const std::string& name);

//! One regression-function draw f ~ GP(0, K) evaluated at the design
//! points, plus the variant's noise sampler. K uses exp(-distance)
//! entries (0.8 exp(-d2) + 0.2 exp(-d1) for dgm3) with a 1e-8 nugget;
//! factorization escalates the jitter up to 1e-4 before giving up.
struct GpRegressionDraw {
  std::vector<double> f;
  GpVariant variant = GpVariant::dgm1;

  double sample_noise(Rng& rng) const;
  std::string to_json() const;
};

GpRegressionDraw dgm_gp_regression(Rng& rng, GpVariant variant,
                                   const std::vector<double>& design);

}  // namespace acid
