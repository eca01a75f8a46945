#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "datakit/degrade/config.hpp"

namespace datakit::degrade {

/// Parameters that fully determine a blur kernel. Fields a kind does not use
/// are zero.
struct KernelParams {
  KernelKind kind = KernelKind::identity;
  int size = 7;
  double sigma_x = 0.0;
  double sigma_y = 0.0;
  double theta = 0.0;
  double beta = 0.0;
  double omega_c = 0.0;

  friend bool operator==(const KernelParams&, const KernelParams&) = default;
};

void to_json(nlohmann::json& j, const KernelParams& k);
void from_json(const nlohmann::json& j, KernelParams& k);

/// Square, odd-sized kernel, row-major; weights sum to 1.
struct BlurKernel {
  int size = 1;
  std::vector<double> weights;

  double at(int x, int y) const noexcept { return weights[static_cast<std::size_t>(y) * size + x]; }
  double sum() const noexcept;
};

BlurKernel make_kernel(const KernelParams& p);
BlurKernel identity_kernel(int size);

/// Anisotropic Gaussian covariance rotated by theta.
BlurKernel gaussian_kernel(int size, double sigma_x, double sigma_y, double theta);
BlurKernel generalized_gaussian_kernel(int size, double sigma_x, double sigma_y, double theta, double beta);
BlurKernel plateau_kernel(int size, double sigma_x, double sigma_y, double theta, double beta);
/// Circular low-pass (2-D sinc) kernel with cutoff omega_c.
BlurKernel sinc_kernel(int size, double omega_c);

}  // namespace datakit::degrade
