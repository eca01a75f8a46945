#include "datakit/degrade/kernels.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "datakit/core/error.hpp"

namespace datakit::degrade {

namespace {

void check_size(int size) {
  if (size < 1 || size % 2 == 0) throw RangeError("kernel size must be odd and positive, got " + std::to_string(size));
}

/// Evaluates f on the quadratic form x^T Sigma^-1 x over a centered grid.
template <typename F>
BlurKernel from_quadratic_form(int size, double sigma_x, double sigma_y, double theta, F f) {
  check_size(size);
  if (!(sigma_x > 0.0) || !(sigma_y > 0.0)) throw RangeError("kernel sigma must be positive");
  const double c = std::cos(theta), s = std::sin(theta);
  const double vx = sigma_x * sigma_x, vy = sigma_y * sigma_y;
  // Sigma = U diag(vx, vy) U^T, U the rotation by theta.
  const double a = c * c * vx + s * s * vy;
  const double b = c * s * (vx - vy);
  const double d = s * s * vx + c * c * vy;
  const double det = a * d - b * b;
  const double ia = d / det, ib = -b / det, id = a / det;

  BlurKernel k;
  k.size = size;
  k.weights.resize(static_cast<std::size_t>(size) * size);
  const int r = size / 2;
  for (int y = -r; y <= r; ++y) {
    for (int x = -r; x <= r; ++x) {
      const double q = ia * x * x + 2.0 * ib * x * y + id * y * y;
      k.weights[static_cast<std::size_t>(y + r) * size + (x + r)] = f(q);
    }
  }
  const double total = k.sum();
  for (auto& w : k.weights) w /= total;
  return k;
}

}  // namespace

double BlurKernel::sum() const noexcept { return std::accumulate(weights.begin(), weights.end(), 0.0); }

BlurKernel identity_kernel(int size) {
  check_size(size);
  BlurKernel k;
  k.size = size;
  k.weights.assign(static_cast<std::size_t>(size) * size, 0.0);
  k.weights[k.weights.size() / 2] = 1.0;
  return k;
}

BlurKernel gaussian_kernel(int size, double sigma_x, double sigma_y, double theta) {
  return from_quadratic_form(size, sigma_x, sigma_y, theta, [](double q) { return std::exp(-0.5 * q); });
}

BlurKernel generalized_gaussian_kernel(int size, double sigma_x, double sigma_y, double theta, double beta) {
  if (!(beta > 0.0)) throw RangeError("generalized Gaussian beta must be positive");
  return from_quadratic_form(size, sigma_x, sigma_y, theta,
                             [beta](double q) { return std::exp(-0.5 * std::pow(q, beta)); });
}

BlurKernel plateau_kernel(int size, double sigma_x, double sigma_y, double theta, double beta) {
  if (!(beta > 0.0)) throw RangeError("plateau beta must be positive");
  return from_quadratic_form(size, sigma_x, sigma_y, theta,
                             [beta](double q) { return 1.0 / (std::pow(q, beta) + 1.0); });
}

BlurKernel sinc_kernel(int size, double omega_c) {
  check_size(size);
  if (!(omega_c > 0.0)) throw RangeError("sinc cutoff must be positive");
  BlurKernel k;
  k.size = size;
  k.weights.resize(static_cast<std::size_t>(size) * size);
  const int r = size / 2;
  for (int y = -r; y <= r; ++y) {
    for (int x = -r; x <= r; ++x) {
      const double rho = std::hypot(static_cast<double>(x), static_cast<double>(y));
      const double w = rho == 0.0 ? omega_c * omega_c / (4.0 * std::numbers::pi)
                                  : omega_c * std::cyl_bessel_j(1.0, omega_c * rho) / (2.0 * std::numbers::pi * rho);
      k.weights[static_cast<std::size_t>(y + r) * size + (x + r)] = w;
    }
  }
  const double total = k.sum();
  for (auto& w : k.weights) w /= total;
  return k;
}

BlurKernel make_kernel(const KernelParams& p) {
  switch (p.kind) {
    case KernelKind::iso:
    case KernelKind::aniso: return gaussian_kernel(p.size, p.sigma_x, p.sigma_y, p.theta);
    case KernelKind::generalized_iso:
    case KernelKind::generalized_aniso:
      return generalized_gaussian_kernel(p.size, p.sigma_x, p.sigma_y, p.theta, p.beta);
    case KernelKind::plateau_iso:
    case KernelKind::plateau_aniso: return plateau_kernel(p.size, p.sigma_x, p.sigma_y, p.theta, p.beta);
    case KernelKind::sinc: return sinc_kernel(p.size, p.omega_c);
    case KernelKind::identity: return identity_kernel(p.size);
  }
  throw RangeError("unknown kernel kind");
}

void to_json(nlohmann::json& j, const KernelParams& k) {
  j = nlohmann::json{{"type", to_string(k.kind)}, {"size", k.size},   {"sigma_x", k.sigma_x}, {"sigma_y", k.sigma_y},
                     {"theta", k.theta},          {"beta", k.beta},   {"omega_c", k.omega_c}};
}

void from_json(const nlohmann::json& j, KernelParams& k) {
  k.kind = kernel_kind_from_string(j.at("type").get<std::string>());
  k.size = j.at("size").get<int>();
  k.sigma_x = j.at("sigma_x").get<double>();
  k.sigma_y = j.at("sigma_y").get<double>();
  k.theta = j.at("theta").get<double>();
  k.beta = j.at("beta").get<double>();
  k.omega_c = j.at("omega_c").get<double>();
}

}  // namespace datakit::degrade
