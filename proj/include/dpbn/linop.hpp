#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <variant>

namespace dpbn {

// Dimension-reducing linear operator W (n_in x n_out). forward applies
// W'x (feature extraction), adjoint applies W u (back-projection).
class LinearMap {
 public:
  struct Dense {
    Eigen::MatrixXd w;  // n_in x n_out
  };
  // Keeps the lowest-frequency keep_h x keep_w block of the orthonormal
  // 2-D DCT-II of an h x w image, coefficients in row-major block order.
  // Applied separably; the n_in x n_out form is never stored.
  struct TruncatedDct2d {
    int height, width, keep_h, keep_w;
    Eigen::MatrixXd basis_rows;  // keep_h x height, orthonormal 1-D DCT rows
    Eigen::MatrixXd basis_cols;  // keep_w x width
  };

  static LinearMap dense(Eigen::MatrixXd w);
  static LinearMap truncated_dct2d(int height, int width, int keep_h, int keep_w);
  static LinearMap identity(int n);

  int n_in() const;   // N
  int n_out() const;  // M

  Eigen::VectorXd forward(const Eigen::VectorXd& x) const;  // W'x, length M
  Eigen::VectorXd adjoint(const Eigen::VectorXd& u) const;  // W u, length N

  // Dense n_in x n_out matrix agreeing with forward/adjoint. Guarded by
  // an entry-count cap since the DCT form is otherwise never expanded.
  Eigen::MatrixXd materialize(std::uint64_t max_entries = kDefaultMaterializeCap) const;

  bool is_dense() const { return std::holds_alternative<Dense>(backing_); }
  const Eigen::MatrixXd& matrix() const;  // dense backing only
  Eigen::MatrixXd& matrix();

  static constexpr std::uint64_t kDefaultMaterializeCap = uint64_t(1) << 26;

 private:
  explicit LinearMap(std::variant<Dense, TruncatedDct2d> b) : backing_(std::move(b)) {}
  std::variant<Dense, TruncatedDct2d> backing_;
};

// Orthonormal 1-D DCT-II matrix: row k, column n holds
// c_k cos(pi (n + 1/2) k / len) with c_0 = sqrt(1/len), c_k = sqrt(2/len).
Eigen::MatrixXd dct_matrix(int len);

}  // namespace dpbn
