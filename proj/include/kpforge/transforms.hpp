#pragma once

#include <functional>
#include <vector>

namespace kpforge {

/// Samples of the Fourier transform of an even real function of one
/// variable, h^(x) = int h(xi) e^{2 pi i xi x} d xi, by trapezoidal sums on
/// the frequency lattice xi = m*dxi, |m| < M/2.
///
/// Entry k (FFT order) holds h^ at x = k'/(M*dxi) with k' the signed index,
/// so the table resolves x with spacing 1/(M*dxi) on |x| < 1/(2*dxi).
std::vector<double> even_transform_1d(const std::function<double(double)>& h, double dxi, int M);

/// Same for a radial function on R^2; entry (a,b) in row-major FFT order.
std::vector<double> radial_transform_2d(const std::function<double(double)>& h, double dxi, int M);

/// Uniformly spaced table of a smooth function with cubic (Catmull-Rom)
/// interpolation. Outside the table the value is 0.
class CubicTable {
 public:
  CubicTable() = default;
  CubicTable(std::vector<double> values, double x0, double dx);

  double operator()(double x) const;
  double x_min() const { return x0_; }
  double x_max() const { return x0_ + dx_ * static_cast<double>(values_.size() - 1); }
  double max_abs() const;
  double l1() const;  // trapezoidal integral of |value|

 private:
  std::vector<double> values_;
  double x0_ = 0.0;
  double dx_ = 1.0;
};

/// Reorders an FFT-order 1-D table into ascending x and wraps it as a CubicTable.
CubicTable centered_table(const std::vector<double>& fft_order, double dx);

}  // namespace kpforge
