#include "qinterf/numerics.hpp"

#include <fftw3.h>

#include <mutex>

namespace qinterf {

Axis::Axis(double start, double step, std::size_t count) : start_(start), step_(step), count_(count) {
  if (!std::isfinite(start) || !std::isfinite(step)) throw std::invalid_argument("axis: non-finite start or step");
  if (!(step > 0.0)) throw std::invalid_argument("axis: step must be positive");
  if (count < 2) throw std::invalid_argument("axis: count must be at least 2");
}

std::vector<double> Axis::values() const {
  std::vector<double> v(count_);
  for (std::size_t i = 0; i < count_; ++i) v[i] = value(i);
  return v;
}

Axis centered_axis(double half_width, std::size_t count) {
  if (!(half_width > 0.0)) throw std::invalid_argument("centered_axis: half_width must be positive");
  const double step = 2.0 * half_width / static_cast<double>(count);
  return Axis(-static_cast<double>(count / 2) * step, step, count);
}

Axis linspace(double first, double last, std::size_t count) {
  if (count < 2) throw std::invalid_argument("linspace: count must be at least 2");
  if (!(last > first)) throw std::invalid_argument("linspace: last must exceed first");
  return Axis(first, (last - first) / static_cast<double>(count - 1), count);
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

namespace {

void check_shape(const Axis& r, const Axis& c, Eigen::Index rows, Eigen::Index cols) {
  if (static_cast<std::size_t>(rows) != r.count() || static_cast<std::size_t>(cols) != c.count())
    throw std::invalid_argument("grid: value array shape does not match axes");
}

}  // namespace

Grid2::Grid2(Axis axis_row, Axis axis_col, Eigen::MatrixXcd values)
    : axis_row_(axis_row), axis_col_(axis_col), values_(std::move(values)) {
  check_shape(axis_row_, axis_col_, values_.rows(), values_.cols());
  if (!values_.allFinite()) throw std::invalid_argument("grid: non-finite entries");
}

RealGrid2::RealGrid2(Axis axis_row, Axis axis_col, Eigen::MatrixXd values)
    : axis_row_(axis_row), axis_col_(axis_col), values_(std::move(values)) {
  check_shape(axis_row_, axis_col_, values_.rows(), values_.cols());
  if (!values_.allFinite()) throw std::invalid_argument("grid: non-finite entries");
}

Eigen::VectorXd trapezoid_weights(const Axis& axis) {
  Eigen::VectorXd w = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(axis.count()), axis.step());
  w(0) *= 0.5;
  w(w.size() - 1) *= 0.5;
  return w;
}

double integrate1(const Axis& axis, std::span<const double> values) {
  if (values.size() != axis.count()) throw std::invalid_argument("integrate1: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw std::invalid_argument("integrate1: non-finite sample");
    const double w = (i == 0 || i + 1 == values.size()) ? 0.5 : 1.0;
    s += w * values[i];
  }
  return s * axis.step();
}

double integrate2(const RealGrid2& grid) {
  const Eigen::VectorXd wr = trapezoid_weights(grid.axis_row());
  const Eigen::VectorXd wc = trapezoid_weights(grid.axis_col());
  return wr.dot(grid.values() * wc);
}

namespace {

// The FFTW planner is not re-entrant; execution on distinct arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void dft2_inplace(Eigen::MatrixXcd& data, int fftw_sign) {
  // Eigen is column-major, so the column index is FFTW's slow dimension.
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  const int n0 = static_cast<int>(data.cols());
  const int n1 = static_cast<int>(data.rows());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_2d(n0, n1, ptr, ptr, fftw_sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

// Phase factors for one axis of the kernel exp(s*i*x*y), x = a + j*dx on the
// input axis and y = b + k*dy on the output axis, with dx*dy*N = 2pi:
//   exp(s*i*x*y) = exp(s*i*a*y_k) * exp(s*i*j*dx*b) * exp(s*2pi*i*j*k/N).
struct AxisPhases {
  Eigen::VectorXcd pre;
  Eigen::VectorXcd post;
};

AxisPhases axis_phases(const Axis& in, const Axis& out, double s) {
  const auto n = static_cast<Eigen::Index>(in.count());
  AxisPhases p{Eigen::VectorXcd(n), Eigen::VectorXcd(n)};
  for (Eigen::Index j = 0; j < n; ++j) {
    const double jd = static_cast<double>(j);
    p.pre(j) = std::polar(1.0, s * jd * in.step() * out.start());
    p.post(j) = std::polar(1.0, s * in.start() * out.value(static_cast<std::size_t>(j)));
  }
  return p;
}

}  // namespace

Grid2 fft2(const Grid2& grid, FftSign sign) {
  const auto nr = grid.axis_row().count();
  const auto nc = grid.axis_col().count();
  const double step_r = kTwoPi / (static_cast<double>(nr) * grid.axis_row().step());
  const double step_c = kTwoPi / (static_cast<double>(nc) * grid.axis_col().step());
  return fft2(grid, sign, -static_cast<double>(nr / 2) * step_r, -static_cast<double>(nc / 2) * step_c);
}

Grid2 fft2(const Grid2& grid, FftSign sign, double out_start_row, double out_start_col) {
  const Axis& ar = grid.axis_row();
  const Axis& ac = grid.axis_col();
  if (!is_power_of_two(ar.count()) || !is_power_of_two(ac.count()))
    throw std::invalid_argument("fft2: axis counts must be powers of two");
  const Axis out_r(out_start_row, kTwoPi / (static_cast<double>(ar.count()) * ar.step()), ar.count());
  const Axis out_c(out_start_col, kTwoPi / (static_cast<double>(ac.count()) * ac.step()), ac.count());

  const double s = sign == FftSign::forward ? -1.0 : 1.0;
  const AxisPhases pr = axis_phases(ar, out_r, s);
  const AxisPhases pc = axis_phases(ac, out_c, s);

  Eigen::MatrixXcd data = pr.pre.asDiagonal() * grid.values() * pc.pre.asDiagonal();
  dft2_inplace(data, sign == FftSign::forward ? FFTW_FORWARD : FFTW_BACKWARD);
  const double scale = ar.step() * ac.step() / kTwoPi;
  data = (pr.post * scale).asDiagonal() * data * pc.post.asDiagonal();
  return Grid2(out_r, out_c, std::move(data));
}

double grid_energy(const Grid2& grid) {
  return grid.values().squaredNorm() * grid.axis_row().step() * grid.axis_col().step();
}

SvdResult svd(const Eigen::MatrixXcd& m) {
  if (!m.allFinite()) throw std::invalid_argument("svd: non-finite entries");
  Eigen::BDCSVD<Eigen::MatrixXcd> dec(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {dec.singularValues(), dec.matrixU(), dec.matrixV()};
}

}  // namespace qinterf
