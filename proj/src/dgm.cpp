#include "acid/dgm.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "acid/errors.hpp"
#include "acid/numerics.hpp"

namespace acid {

double MixtureDgm::density(double x) const {
  double out = 0.0;
  for (const auto& comp : components) {
    double scale = std::sqrt(comp.scale2);
    if (comp.student_t) {
      out += comp.weight * student_t_pdf(x, comp.mean, scale, 5.0);
    } else {
      out += comp.weight * normal_pdf((x - comp.mean) / scale) / scale;
    }
  }
  return out;
}

double MixtureDgm::sample(Rng& rng) const {
  double u = rng.uniform();
  double cum = 0.0;
  const MixtureComponent* chosen = &components.back();
  for (const auto& comp : components) {
    cum += comp.weight;
    if (u < cum) {
      chosen = &comp;
      break;
    }
  }
  double scale = std::sqrt(chosen->scale2);
  if (chosen->student_t) return chosen->mean + scale * rng.student_t(5.0);
  return chosen->mean + scale * rng.normal();
}

std::string MixtureDgm::to_json() const {
  std::ostringstream out;
  char buf[64];
  out << "{\"kind\":\"mixture-density\",\"components\":[";
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto& c = components[i];
    if (i) out << ',';
    out << "{\"kernel\":\"" << (c.student_t ? "student-t" : "gaussian")
        << "\"";
    std::snprintf(buf, sizeof(buf), "%.17g", c.mean);
    out << ",\"mean\":" << buf;
    std::snprintf(buf, sizeof(buf), "%.17g", c.scale2);
    out << ",\"scale2\":" << buf;
    std::snprintf(buf, sizeof(buf), "%.17g", c.weight);
    out << ",\"weight\":" << buf << '}';
  }
  out << "]}";
  return out.str();
}

MixtureDgm dgm_mixture(Rng& rng) {
  const std::size_t n_comp = 2 + rng.uniform_below(2);
  MixtureDgm dgm;
  dgm.components.resize(n_comp);

  // Means uniform on (-3, 3), rejected until pairwise separation >= 1.5.
  const int cap = 100000;
  int attempt = 0;
  for (;; ++attempt) {
    if (attempt >= cap)
      throw numeric_error("dgm_mixture: mean separation rejection cap hit");
    std::vector<double> means(n_comp);
    for (double& m : means) m = rng.uniform(-3.0, 3.0);
    bool ok = true;
    for (std::size_t i = 0; i < n_comp && ok; ++i)
      for (std::size_t j = i + 1; j < n_comp; ++j)
        if (std::fabs(means[i] - means[j]) < 1.5) {
          ok = false;
          break;
        }
    if (ok) {
      for (std::size_t i = 0; i < n_comp; ++i)
        dgm.components[i].mean = means[i];
      break;
    }
  }

  for (auto& comp : dgm.components) comp.scale2 = rng.uniform(0.5, 2.0);
  for (auto& comp : dgm.components) comp.student_t = rng.uniform_below(2) == 1;
  double weight_sum = 0.0;
  for (auto& comp : dgm.components) {
    comp.weight = rng.uniform();
    weight_sum += comp.weight;
  }
  for (auto& comp : dgm.components) comp.weight /= weight_sum;
  return dgm;
}

const char* gp_variant_name(GpVariant v) {
  switch (v) {
    case GpVariant::dgm1: return "dgm1";
    case GpVariant::dgm2: return "dgm2";
    case GpVariant::dgm3: return "dgm3";
  }
  return "?";
}

GpVariant gp_variant_from_name(const std::string& name) {
  if (name == "dgm1") return GpVariant::dgm1;
  if (name == "dgm2") return GpVariant::dgm2;
  if (name == "dgm3") return GpVariant::dgm3;
  throw std::invalid_argument("unknown GP variant: " + name);
}

double GpRegressionDraw::sample_noise(Rng& rng) const {
  if (variant == GpVariant::dgm2) return rng.student_t(5.0);
  return rng.normal();
}

std::string GpRegressionDraw::to_json() const {
  std::ostringstream out;
  out << "{\"kind\":\"gp-regression\",\"variant\":\""
      << gp_variant_name(variant) << "\",\"points\":" << f.size() << '}';
  return out.str();
}

GpRegressionDraw dgm_gp_regression(Rng& rng, GpVariant variant,
                                   const std::vector<double>& design) {
  const std::size_t n = design.size();
  if (n == 0)
    throw std::invalid_argument("dgm_gp_regression: empty design");
  if (n > 2000)
    throw std::invalid_argument("dgm_gp_regression: design capped at 2000");

  Eigen::MatrixXd k(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double v;
      if (i == j) {
        v = 1.0 + 1e-8;
      } else {
        double d = std::fabs(design[i] - design[j]);
        // In one dimension the L2 and L1 distances coincide; the dgm3
        // mixture weights are kept for the multivariate reading.
        v = variant == GpVariant::dgm3
                ? 0.8 * std::exp(-d) + 0.2 * std::exp(-d)
                : std::exp(-d);
      }
      k(i, j) = v;
      k(j, i) = v;
    }
  }

  Eigen::LLT<Eigen::MatrixXd> llt;
  double jitter = 1e-8;
  for (;;) {
    Eigen::MatrixXd attempt = k;
    if (jitter > 1e-8)
      attempt.diagonal().array() += jitter;
    llt.compute(attempt);
    if (llt.info() == Eigen::Success) break;
    jitter *= 10.0;
    if (jitter > 1e-4)
      throw numeric_error(
          "dgm_gp_regression: factorization failed at jitter 1e-4");
  }

  Eigen::VectorXd z(n);
  for (std::size_t i = 0; i < n; ++i) z(i) = rng.normal();
  Eigen::VectorXd f = llt.matrixL() * z;

  GpRegressionDraw draw;
  draw.variant = variant;
  draw.f.assign(f.data(), f.data() + n);
  return draw;
}

}  // namespace acid
