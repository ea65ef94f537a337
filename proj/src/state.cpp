#include "qree/state.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace qree {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kStateTol = 1e-10;

void check_state_invariants(const PartyStructure& structure, const Matrix& m) {
  const int d = structure.total_dim();
  if (m.rows() != d || m.cols() != d) {
    throw std::invalid_argument("QuantumState: matrix is " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + ", structure needs " +
                                std::to_string(d) + "x" + std::to_string(d));
  }
  const double herm_err = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm_err >= kStateTol) {
    throw std::invalid_argument("QuantumState: not hermitian (max deviation " +
                                std::to_string(herm_err) + ")");
  }
  const double trace_err = std::abs(m.trace() - Complex(1.0, 0.0));
  if (trace_err > kStateTol) {
    throw std::invalid_argument("QuantumState: trace off by " + std::to_string(trace_err));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()),
                                           Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig <= -kStateTol) {
    throw std::invalid_argument("QuantumState: not positive semidefinite (min eigenvalue " +
                                std::to_string(min_eig) + ")");
  }
}

}  // namespace

PureState::PureState(PartyStructure structure, Vector amplitudes)
    : structure_(std::move(structure)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != structure_.total_dim()) {
    throw std::invalid_argument("PureState: amplitude vector has length " +
                                std::to_string(amplitudes_.size()) + ", structure needs " +
                                std::to_string(structure_.total_dim()));
  }
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > kNormTol) {
    throw std::invalid_argument("PureState: norm " + std::to_string(norm) + " is not 1");
  }
}

QuantumState::QuantumState(PartyStructure structure, Matrix matrix)
    : structure_(std::move(structure)), matrix_(std::move(matrix)) {
  check_state_invariants(structure_, matrix_);
}

QuantumState from_pure(const PureState& psi) {
  Matrix projector = psi.amplitudes() * psi.amplitudes().adjoint();
  return QuantumState(psi.structure(), std::move(projector));
}

QuantumState partial_trace(const QuantumState& rho, std::span<const int> keep) {
  const PartyStructure& st = rho.structure();
  const PartyStructure kept_structure = st.restricted(keep);  // validates keep
  if (static_cast<int>(keep.size()) == st.parties()) {
    return rho;
  }

  std::vector<int> traced;
  {
    std::vector<bool> is_kept(st.parties(), false);
    for (int p : keep) is_kept[p] = true;
    for (int p = 0; p < st.parties(); ++p) {
      if (!is_kept[p]) traced.push_back(p);
    }
  }

  int traced_dim = 1;
  for (int p : traced) traced_dim *= st.dim(p);
  const int kept_dim = kept_structure.total_dim();

  // Flat index of the full system from a kept index and a traced index.
  auto compose = [&](int kept_index, int traced_index) {
    int full = 0;
    for (std::size_t i = 0; i < keep.size(); ++i) {
      full += kept_structure.digit(kept_index, static_cast<int>(i)) * st.stride(keep[i]);
    }
    int rest = traced_index;
    for (std::size_t i = traced.size(); i-- > 0;) {
      full += (rest % st.dim(traced[i])) * st.stride(traced[i]);
      rest /= st.dim(traced[i]);
    }
    return full;
  };

  Matrix out = Matrix::Zero(kept_dim, kept_dim);
  for (int r = 0; r < kept_dim; ++r) {
    for (int c = 0; c < kept_dim; ++c) {
      Complex sum(0.0, 0.0);
      for (int t = 0; t < traced_dim; ++t) {
        sum += rho.matrix()(compose(r, t), compose(c, t));
      }
      out(r, c) = sum;
    }
  }
  return QuantumState(kept_structure, std::move(out));
}

QuantumState tensor_product(const QuantumState& a, const QuantumState& b) {
  std::vector<int> dims = a.structure().dims();
  dims.insert(dims.end(), b.structure().dims().begin(), b.structure().dims().end());
  const int da = a.structure().total_dim();
  const int db = b.structure().total_dim();
  Matrix out(da * db, da * db);
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < da; ++j) {
      out.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
    }
  }
  return QuantumState(PartyStructure(std::move(dims)), std::move(out));
}

Vector product_vector(const PartyStructure& structure, const std::vector<Vector>& factors) {
  if (static_cast<int>(factors.size()) != structure.parties()) {
    throw std::invalid_argument("product_vector: expected one factor per party");
  }
  Vector out = Vector::Ones(1);
  for (int p = 0; p < structure.parties(); ++p) {
    const Vector& f = factors[p];
    if (f.size() != structure.dim(p)) {
      throw std::invalid_argument("product_vector: factor " + std::to_string(p) +
                                  " has length " + std::to_string(f.size()) + ", party dim is " +
                                  std::to_string(structure.dim(p)));
    }
    Vector next(out.size() * f.size());
    for (Eigen::Index i = 0; i < out.size(); ++i) {
      next.segment(i * f.size(), f.size()) = out(i) * f;
    }
    out.swap(next);
  }
  return out;
}

namespace {

PureState embed_qubit_state(const Vector& base, int base_parties,
                            const PartyStructure& embedding, const char* name) {
  if (embedding.parties() < base_parties) {
    throw std::invalid_argument(std::string(name) + ": embedding needs at least " +
                                std::to_string(base_parties) + " parties");
  }
  for (int p = 0; p < base_parties; ++p) {
    if (embedding.dim(p) != 2) {
      throw std::invalid_argument(std::string(name) + ": embedding party " + std::to_string(p) +
                                  " must be a qubit");
    }
  }
  int pad_dim = 1;
  for (int p = base_parties; p < embedding.parties(); ++p) pad_dim *= embedding.dim(p);
  Vector amps = Vector::Zero(embedding.total_dim());
  // Extra trailing parties sit in their local |0>, stride pad_dim per base index.
  for (Eigen::Index i = 0; i < base.size(); ++i) {
    amps(i * pad_dim) = base(i);
  }
  return PureState(embedding, std::move(amps));
}

}  // namespace

PureState make_named_state(const NamedStateSpec& spec, const PartyStructure& embedding) {
  switch (spec.family) {
    case NamedStateSpec::Family::epr: {
      Vector base = Vector::Zero(4);
      base(0) = base(3) = Complex(1.0 / std::sqrt(2.0), 0.0);
      return embed_qubit_state(base, 2, embedding, "epr");
    }
    case NamedStateSpec::Family::ghz: {
      const double alpha_sq = std::norm(spec.alpha);
      if (alpha_sq > 1.0 + 1e-12) {
        throw std::invalid_argument("ghz: |alpha| must be <= 1");
      }
      const double beta = std::sqrt(std::max(0.0, 1.0 - alpha_sq));
      Vector base = Vector::Zero(8);
      base(0) = spec.alpha;
      base(7) = Complex(beta, 0.0);
      base /= base.norm();
      return embed_qubit_state(base, 3, embedding, "ghz");
    }
    case NamedStateSpec::Family::w: {
      Vector base = Vector::Zero(8);
      const Complex amp(1.0 / std::sqrt(3.0), 0.0);
      base(1) = base(2) = base(4) = amp;
      return embed_qubit_state(base, 3, embedding, "w");
    }
    case NamedStateSpec::Family::psi_eff: {
      const double norm_sq = std::norm(spec.e) + 2.0 * std::norm(spec.f);
      if (std::abs(norm_sq - 1.0) > 1e-9) {
        throw std::invalid_argument("psieff: |e|^2 + 2|f|^2 = " + std::to_string(norm_sq) +
                                    ", must be 1 within 1e-9");
      }
      Vector base = Vector::Zero(8);
      base(4) = spec.e;  // |100>
      base(2) = spec.f;  // |010>
      base(1) = spec.f;  // |001>
      base /= base.norm();
      return embed_qubit_state(base, 3, embedding, "psieff");
    }
  }
  throw std::invalid_argument("make_named_state: unknown family");
}

PureState make_epr() {
  return make_named_state({.family = NamedStateSpec::Family::epr}, PartyStructure({2, 2}));
}

PureState make_ghz(Complex alpha) {
  return make_named_state({.family = NamedStateSpec::Family::ghz, .alpha = alpha},
                          PartyStructure({2, 2, 2}));
}

PureState make_w() {
  return make_named_state({.family = NamedStateSpec::Family::w}, PartyStructure({2, 2, 2}));
}

PureState make_psi_eff(Complex e, Complex f) {
  return make_named_state({.family = NamedStateSpec::Family::psi_eff, .e = e, .f = f},
                          PartyStructure({2, 2, 2}));
}

}  // namespace qree
