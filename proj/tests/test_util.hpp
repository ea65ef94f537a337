#pragma once

// Test-side oracles, kept independent of the library's computation paths.

#include "qree/types.hpp"

#include <Eigen/Eigenvalues>

#include <string>
#include <unistd.h>
#include <vector>

namespace qree::test {

inline std::string temp_file_path() {
  std::string path = "/tmp/qree_test_XXXXXX";
  const int fd = ::mkstemp(path.data());
  if (fd >= 0) ::close(fd);
  return path;
}

inline std::vector<int> index_digits(int index, const std::vector<int>& dims) {
  std::vector<int> digits(dims.size());
  for (std::size_t p = dims.size(); p-- > 0;) {
    digits[p] = index % dims[p];
    index /= dims[p];
  }
  return digits;
}

inline int flatten_digits(const std::vector<int>& digits, const std::vector<int>& dims) {
  int index = 0;
  for (std::size_t p = 0; p < dims.size(); ++p) {
    index = index * dims[p] + digits[p];
  }
  return index;
}

// Partial trace by brute-force contraction over all full-index pairs.
inline Matrix brute_force_partial_trace(const Matrix& m, const std::vector<int>& dims,
                                        const std::vector<int>& keep) {
  const int d_total = static_cast<int>(m.rows());
  std::vector<bool> kept(dims.size(), false);
  std::vector<int> kept_dims;
  for (int p : keep) kept[p] = true;
  for (int p : keep) kept_dims.push_back(dims[p]);
  int d_keep = 1;
  for (int d : kept_dims) d_keep *= d;

  Matrix out = Matrix::Zero(d_keep, d_keep);
  for (int i = 0; i < d_total; ++i) {
    const auto di = index_digits(i, dims);
    for (int j = 0; j < d_total; ++j) {
      const auto dj = index_digits(j, dims);
      bool traced_match = true;
      for (std::size_t p = 0; p < dims.size(); ++p) {
        if (!kept[p] && di[p] != dj[p]) {
          traced_match = false;
          break;
        }
      }
      if (!traced_match) continue;
      std::vector<int> ri, rj;
      for (int p : keep) {
        ri.push_back(di[p]);
        rj.push_back(dj[p]);
      }
      out(flatten_digits(ri, kept_dims), flatten_digits(rj, kept_dims)) += m(i, j);
    }
  }
  return out;
}

// Partial transpose on the listed parties.
inline Matrix partial_transpose(const Matrix& m, const std::vector<int>& dims,
                                const std::vector<int>& transposed) {
  const int d_total = static_cast<int>(m.rows());
  std::vector<bool> flip(dims.size(), false);
  for (int p : transposed) flip[p] = true;

  Matrix out(d_total, d_total);
  for (int i = 0; i < d_total; ++i) {
    auto di = index_digits(i, dims);
    for (int j = 0; j < d_total; ++j) {
      auto dj = index_digits(j, dims);
      std::vector<int> ri = di, rj = dj;
      for (std::size_t p = 0; p < dims.size(); ++p) {
        if (flip[p]) std::swap(ri[p], rj[p]);
      }
      out(flatten_digits(ri, dims), flatten_digits(rj, dims)) = m(i, j);
    }
  }
  return out;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline double min_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace qree::test
