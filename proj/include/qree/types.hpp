#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace qree {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Ordered list of local dimensions, one per party. Party 0 owns the most
/// significant digit of a flat basis index, so |abc> maps to
/// a*d_B*d_C + b*d_C + c, matching the usual kron order.
class PartyStructure {
 public:
  explicit PartyStructure(std::vector<int> dims);

  int parties() const { return static_cast<int>(dims_.size()); }
  int dim(int party) const;
  const std::vector<int>& dims() const { return dims_; }
  int total_dim() const { return total_; }

  // Stride of a party's digit inside a flat basis index.
  int stride(int party) const;
  int digit(int index, int party) const {
    return (index / strides_[static_cast<std::size_t>(party)]) %
           dims_[static_cast<std::size_t>(party)];
  }

  /// Structure restricted to the given parties (indices ascending).
  PartyStructure restricted(std::span<const int> keep) const;

  bool operator==(const PartyStructure& other) const { return dims_ == other.dims_; }

 private:
  std::vector<int> dims_;
  std::vector<int> strides_;
  int total_ = 1;
};

/// Entropic quantity in base-2 units (ebits). The distinguished infinite
/// value marks relative entropy between states of mismatched support.
/// Finite values must stay above -1e-9; sub-1e-9 negatives from floating
/// point are clamped to zero on read.
class Bits {
 public:
  Bits() = default;
  explicit Bits(double v);

  static Bits infinity() {
    Bits b;
    b.v_ = std::numeric_limits<double>::infinity();
    return b;
  }

  bool is_finite() const { return v_ < std::numeric_limits<double>::infinity(); }

  /// Value with tiny floating-point negatives clamped to 0.
  double value() const { return v_ < 0.0 ? 0.0 : v_; }

 private:
  double v_ = 0.0;
};

}  // namespace qree
