#include "qree/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qree {

PartyStructure::PartyStructure(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) {
    throw std::invalid_argument("PartyStructure: needs at least one party");
  }
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (dims_[i] < 2) {
      throw std::invalid_argument("PartyStructure: dims[" + std::to_string(i) +
                                  "] = " + std::to_string(dims_[i]) + ", must be >= 2");
    }
  }
  strides_.assign(dims_.size(), 1);
  for (int p = static_cast<int>(dims_.size()) - 2; p >= 0; --p) {
    strides_[p] = strides_[p + 1] * dims_[p + 1];
    if (strides_[p] > (1 << 24)) {
      throw std::invalid_argument("PartyStructure: total dimension too large");
    }
  }
  total_ = strides_[0] * dims_[0];
}

int PartyStructure::dim(int party) const {
  if (party < 0 || party >= parties()) {
    throw std::invalid_argument("PartyStructure: party index " + std::to_string(party) +
                                " out of range");
  }
  return dims_[static_cast<std::size_t>(party)];
}

int PartyStructure::stride(int party) const {
  if (party < 0 || party >= parties()) {
    throw std::invalid_argument("PartyStructure: party index " + std::to_string(party) +
                                " out of range");
  }
  return strides_[static_cast<std::size_t>(party)];
}

PartyStructure PartyStructure::restricted(std::span<const int> keep) const {
  if (keep.empty()) {
    throw std::invalid_argument("PartyStructure: keep set must be nonempty");
  }
  std::vector<int> sub;
  sub.reserve(keep.size());
  int prev = -1;
  for (int p : keep) {
    if (p <= prev) {
      throw std::invalid_argument("PartyStructure: keep indices must be strictly ascending");
    }
    sub.push_back(dim(p));
    prev = p;
  }
  return PartyStructure(std::move(sub));
}

Bits::Bits(double v) : v_(v) {
  if (std::isnan(v)) {
    throw std::invalid_argument("Bits: NaN");
  }
  if (v < -1e-9) {
    throw std::invalid_argument("Bits: negative entropic value " + std::to_string(v));
  }
}

}  // namespace qree
