#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qinterf {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Raised when a request exceeds a numerical cost or resolution limit
/// (grid size, photon number, alias-free delay range).
class GuardViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Uniform sampling axis: value(i) = start + i * step, 0 <= i < count.
class Axis {
 public:
  Axis(double start, double step, std::size_t count);

  double start() const { return start_; }
  double step() const { return step_; }
  std::size_t count() const { return count_; }
  double value(std::size_t i) const { return start_ + static_cast<double>(i) * step_; }
  double last() const { return value(count_ - 1); }
  std::vector<double> values() const;

  bool operator==(const Axis&) const = default;

 private:
  double start_;
  double step_;
  std::size_t count_;
};

/// Axis of `count` points with step 2*half_width/count starting at -half_width.
/// Index count/2 sits exactly at zero, which is the layout fft2 produces.
Axis centered_axis(double half_width, std::size_t count);

/// Axis from `first` to `last` inclusive.
Axis linspace(double first, double last, std::size_t count);

bool is_power_of_two(std::size_t n);

/// Complex samples on a rectangular grid; rows follow axis_row, columns axis_col.
class Grid2 {
 public:
  Grid2(Axis axis_row, Axis axis_col, Eigen::MatrixXcd values);

  const Axis& axis_row() const { return axis_row_; }
  const Axis& axis_col() const { return axis_col_; }
  const Eigen::MatrixXcd& values() const { return values_; }

 private:
  Axis axis_row_;
  Axis axis_col_;
  Eigen::MatrixXcd values_;
};

/// Real-valued counterpart of Grid2, used for densities and integrands.
class RealGrid2 {
 public:
  RealGrid2(Axis axis_row, Axis axis_col, Eigen::MatrixXd values);

  const Axis& axis_row() const { return axis_row_; }
  const Axis& axis_col() const { return axis_col_; }
  const Eigen::MatrixXd& values() const { return values_; }

 private:
  Axis axis_row_;
  Axis axis_col_;
  Eigen::MatrixXd values_;
};

/// Trapezoidal weights for a uniform axis (step/2 at both ends, step inside).
Eigen::VectorXd trapezoid_weights(const Axis& axis);

double integrate1(const Axis& axis, std::span<const double> values);
double integrate2(const RealGrid2& grid);

/// Trapezoidal quadrature over a 4D tensor grid. `integrand(i0, i1, i2, i3)`
/// returns the sample at the given indices. The outermost axis is the
/// natural partition for data-parallel evaluation.
template <class Integrand>
double integrate4(const std::array<Axis, 4>& axes, Integrand&& integrand) {
  std::array<Eigen::VectorXd, 4> w;
  for (std::size_t d = 0; d < 4; ++d) w[d] = trapezoid_weights(axes[d]);
  double total = 0.0;
  for (std::size_t a = 0; a < axes[0].count(); ++a) {
    double slab = 0.0;
    for (std::size_t b = 0; b < axes[1].count(); ++b) {
      double plane = 0.0;
      for (std::size_t c = 0; c < axes[2].count(); ++c) {
        double line = 0.0;
        for (std::size_t d = 0; d < axes[3].count(); ++d) line += w[3][d] * integrand(a, b, c, d);
        plane += w[2][c] * line;
      }
      slab += w[1][b] * plane;
    }
    total += w[0][a] * slab;
  }
  return total;
}

enum class FftSign { forward, inverse };

/// Continuous-normalized 2D Fourier transform of grid samples.
///
/// forward: G(t1,t2) = (1/2pi) sum f(w1,w2) exp(-i(w1 t1 + w2 t2)) dw1 dw2
/// inverse: same with exp(+i...), mapping time samples back to frequency.
///
/// Output axes have step 2pi/(N*step_in). Their starts default to the centered
/// layout (-N/2 * step_out); passing explicit starts lets an inverse land on
/// the original frequency axis exactly. Counts must be powers of two.
Grid2 fft2(const Grid2& grid, FftSign sign);
Grid2 fft2(const Grid2& grid, FftSign sign, double out_start_row, double out_start_col);

/// Sum of |values|^2 times the cell area (rectangle rule).
double grid_energy(const Grid2& grid);

struct SvdResult {
  Eigen::VectorXd singular_values;  // descending, non-negative
  Eigen::MatrixXcd left;            // columns are left singular vectors
  Eigen::MatrixXcd right;           // columns are right singular vectors
};

SvdResult svd(const Eigen::MatrixXcd& m);

/// Bilinear interpolation of a real or complex matrix at fractional indices
/// (row, col). Points outside the sampled rectangle return zero.
template <class Derived>
typename Derived::Scalar bilinear(const Eigen::MatrixBase<Derived>& m, double row, double col) {
  using Scalar = typename Derived::Scalar;
  const auto rows = static_cast<double>(m.rows());
  const auto cols = static_cast<double>(m.cols());
  constexpr double eps = 1e-9;
  if (row < -eps || col < -eps || row > rows - 1 + eps || col > cols - 1 + eps) return Scalar(0);
  row = std::clamp(row, 0.0, rows - 1);
  col = std::clamp(col, 0.0, cols - 1);
  auto r0 = static_cast<Eigen::Index>(std::floor(row));
  auto c0 = static_cast<Eigen::Index>(std::floor(col));
  if (r0 == m.rows() - 1) --r0;
  if (c0 == m.cols() - 1) --c0;
  if (r0 < 0) r0 = 0;
  if (c0 < 0) c0 = 0;
  const double fr = row - static_cast<double>(r0);
  const double fc = col - static_cast<double>(c0);
  if (m.rows() == 1 || m.cols() == 1) return m(r0, c0);
  return m(r0, c0) * ((1 - fr) * (1 - fc)) + m(r0 + 1, c0) * (fr * (1 - fc)) +
         m(r0, c0 + 1) * ((1 - fr) * fc) + m(r0 + 1, c0 + 1) * (fr * fc);
}

}  // namespace qinterf
