#include "dpbn/linop.hpp"

#include <cmath>
#include <stdexcept>

namespace dpbn {

Eigen::MatrixXd dct_matrix(int len) {
  Eigen::MatrixXd d(len, len);
  const double scale0 = std::sqrt(1.0 / len);
  const double scale = std::sqrt(2.0 / len);
  for (int k = 0; k < len; ++k)
    for (int n = 0; n < len; ++n)
      d(k, n) = (k == 0 ? scale0 : scale) * std::cos(M_PI * (n + 0.5) * k / len);
  return d;
}

LinearMap LinearMap::dense(Eigen::MatrixXd w) {
  if (w.rows() < 1 || w.cols() < 1) throw std::invalid_argument("LinearMap: empty matrix");
  return LinearMap(Dense{std::move(w)});
}

LinearMap LinearMap::identity(int n) {
  return dense(Eigen::MatrixXd::Identity(n, n));
}

LinearMap LinearMap::truncated_dct2d(int height, int width, int keep_h, int keep_w) {
  if (height < 1 || width < 1 || keep_h < 1 || keep_w < 1 || keep_h > height || keep_w > width)
    throw std::invalid_argument("LinearMap: bad truncated-DCT shape");
  TruncatedDct2d t{height, width, keep_h, keep_w,
                   dct_matrix(height).topRows(keep_h), dct_matrix(width).topRows(keep_w)};
  return LinearMap(std::move(t));
}

int LinearMap::n_in() const {
  if (auto* d = std::get_if<Dense>(&backing_)) return int(d->w.rows());
  const auto& t = std::get<TruncatedDct2d>(backing_);
  return t.height * t.width;
}

int LinearMap::n_out() const {
  if (auto* d = std::get_if<Dense>(&backing_)) return int(d->w.cols());
  const auto& t = std::get<TruncatedDct2d>(backing_);
  return t.keep_h * t.keep_w;
}

const Eigen::MatrixXd& LinearMap::matrix() const {
  if (auto* d = std::get_if<Dense>(&backing_)) return d->w;
  throw std::logic_error("LinearMap::matrix: not a dense map");
}

Eigen::MatrixXd& LinearMap::matrix() {
  if (auto* d = std::get_if<Dense>(&backing_)) return d->w;
  throw std::logic_error("LinearMap::matrix: not a dense map");
}

Eigen::VectorXd LinearMap::forward(const Eigen::VectorXd& x) const {
  if (x.size() != n_in()) throw std::invalid_argument("LinearMap::forward: length mismatch");
  if (auto* d = std::get_if<Dense>(&backing_)) return d->w.transpose() * x;
  const auto& t = std::get<TruncatedDct2d>(backing_);
  // Row-major image; coefficient block C = Dh * X * Dw'.
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> img(
      x.data(), t.height, t.width);
  Eigen::MatrixXd coef = t.basis_rows * img * t.basis_cols.transpose();
  Eigen::VectorXd out(n_out());
  for (int i = 0; i < t.keep_h; ++i)
    for (int j = 0; j < t.keep_w; ++j) out(i * t.keep_w + j) = coef(i, j);
  return out;
}

Eigen::VectorXd LinearMap::adjoint(const Eigen::VectorXd& u) const {
  if (u.size() != n_out()) throw std::invalid_argument("LinearMap::adjoint: length mismatch");
  if (auto* d = std::get_if<Dense>(&backing_)) return d->w * u;
  const auto& t = std::get<TruncatedDct2d>(backing_);
  Eigen::MatrixXd coef(t.keep_h, t.keep_w);
  for (int i = 0; i < t.keep_h; ++i)
    for (int j = 0; j < t.keep_w; ++j) coef(i, j) = u(i * t.keep_w + j);
  Eigen::MatrixXd img = t.basis_rows.transpose() * coef * t.basis_cols;
  Eigen::VectorXd out(n_in());
  for (int r = 0; r < t.height; ++r)
    for (int c = 0; c < t.width; ++c) out(r * t.width + c) = img(r, c);
  return out;
}

Eigen::MatrixXd LinearMap::materialize(std::uint64_t max_entries) const {
  const std::uint64_t entries = std::uint64_t(n_in()) * std::uint64_t(n_out());
  if (entries > max_entries) throw std::length_error("LinearMap::materialize: cap exceeded");
  if (auto* d = std::get_if<Dense>(&backing_)) return d->w;
  Eigen::MatrixXd w(n_in(), n_out());
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n_out());
  for (int j = 0; j < n_out(); ++j) {
    e(j) = 1.0;
    w.col(j) = adjoint(e);
    e(j) = 0.0;
  }
  return w;
}

}  // namespace dpbn
