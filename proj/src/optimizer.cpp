#include "qree/optimizer.hpp"

#include "qree/entropy.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace qree {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kWeightPruneTol = 1e-12;

struct Term {
  double weight = 0.0;
  std::vector<Vector> factors;
  Vector prod;  // cached product of the factors
};

// f(rho) = S(sigma || (1-eps) rho + (eps/D) I), in bits.
struct Objective {
  const Matrix& sigma;
  double tr_sigma_log_sigma;
  double eps;
  int dim;

  Matrix regularize(const Matrix& rho) const {
    Matrix reg = (1.0 - eps) * rho;
    reg.diagonal().array() += eps / dim;
    return reg;
  }

  double value_at_reg(const Matrix& rho_reg) const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho_reg);
    const Matrix sv = sigma * es.eigenvectors();
    const double floor = 0.25 * eps / dim;  // reg(rho) >= (eps/D) I up to noise
    double tr_sigma_log_rho = 0.0;
    for (int j = 0; j < dim; ++j) {
      const double w = std::real(es.eigenvectors().col(j).dot(sv.col(j)));
      const double mu = std::max(es.eigenvalues()(j), floor);
      tr_sigma_log_rho += w * std::log2(mu);
    }
    return tr_sigma_log_sigma - tr_sigma_log_rho;
  }

  double value(const Matrix& rho) const { return value_at_reg(regularize(rho)); }
};

double trace_sigma_log2_sigma(const Matrix& sigma) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma, Eigen::EigenvaluesOnly);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lambda = es.eigenvalues()(i);
    if (lambda > 1e-15) {
      sum += lambda * std::log2(lambda);
    }
  }
  return sum;
}

// Gradient of f at rho. With rho_reg = V diag(mu) V^dag and A = V^dag sigma V,
// the Frechet derivative of log is self-adjoint, so
//   grad = -(1-eps)/ln2 * V (L o A) V^dag
// with L the difference quotients of ln at the eigenvalues. Hermitian and
// negative semidefinite (L is PSD since ln is operator monotone).
Matrix objective_gradient(const Objective& obj, const Matrix& rho_reg) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_reg);
  const double floor = 0.25 * obj.eps / obj.dim;
  Eigen::VectorXd mu = es.eigenvalues().cwiseMax(floor);
  const Matrix& v = es.eigenvectors();
  const Matrix a = v.adjoint() * obj.sigma * v;

  const int d = obj.dim;
  Matrix inner(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) {
      double quotient;
      if (std::abs(mu(i) - mu(j)) <= 1e-12 * std::max(mu(i), mu(j))) {
        quotient = 2.0 / (mu(i) + mu(j));
      } else {
        quotient = (std::log(mu(i)) - std::log(mu(j))) / (mu(i) - mu(j));
      }
      inner(i, j) = a(i, j) * quotient;
      inner(j, i) = a(j, i) * quotient;
    }
  }
  Matrix g = -(1.0 - obj.eps) / kLn2 * (v * inner * v.adjoint());
  g = 0.5 * (g + g.adjoint());
  return g;
}

struct ProductCandidate {
  std::vector<Vector> factors;
  Vector prod;
  double value = std::numeric_limits<double>::infinity();
};

std::vector<Vector> random_product_factors(const PartyStructure& st, Rng& rng) {
  std::vector<Vector> factors(st.parties());
  for (int p = 0; p < st.parties(); ++p) {
    Vector f(st.dim(p));
    for (Eigen::Index i = 0; i < f.size(); ++i) {
      f(i) = rng.complex_normal();
    }
    f /= f.norm();
    factors[p] = std::move(f);
  }
  return factors;
}

// min_phi <phi|G|phi> over product states by alternating per-party
// eigenvector updates from multiple starts. Heuristic: the subproblem is
// nonconvex for three or more parties.
ProductCandidate best_product_state(const Matrix& g, const PartyStructure& st, int starts,
                                    Rng& rng, const std::vector<Vector>* warm) {
  const int n = st.parties();
  const int d_total = st.total_dim();

  std::vector<std::vector<int>> digits(n, std::vector<int>(d_total));
  for (int p = 0; p < n; ++p) {
    for (int i = 0; i < d_total; ++i) {
      digits[p][i] = st.digit(i, p);
    }
  }

  ProductCandidate best;
  Vector weights(d_total);
  Matrix m;
  const int total_starts = starts + (warm != nullptr ? 1 : 0);
  for (int s = 0; s < total_starts; ++s) {
    std::vector<Vector> factors =
        (warm != nullptr && s == 0) ? *warm : random_product_factors(st, rng);
    double val = std::numeric_limits<double>::infinity();
    for (int sweep = 0; sweep < 8; ++sweep) {
      const double prev = val;
      for (int p = 0; p < n; ++p) {
        for (int i = 0; i < d_total; ++i) {
          Complex w(1.0, 0.0);
          for (int k = 0; k < n; ++k) {
            if (k != p) w *= factors[k](digits[k][i]);
          }
          weights(i) = w;
        }
        const int d_p = st.dim(p);
        m = Matrix::Zero(d_p, d_p);
        for (int i = 0; i < d_total; ++i) {
          const int row = digits[p][i];
          const Complex wi = std::conj(weights(i));
          for (int j = 0; j < d_total; ++j) {
            m(row, digits[p][j]) += wi * g(i, j) * weights(j);
          }
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
        factors[p] = es.eigenvectors().col(0);
        val = es.eigenvalues()(0);
      }
      if (std::abs(prev - val) <= 1e-12 * (1.0 + std::abs(val))) break;
    }
    if (val < best.value) {
      best.value = val;
      best.factors = std::move(factors);
    }
  }
  best.prod = product_vector(st, best.factors);
  // quadratic form with the exact product vector, not the sweep estimate
  best.value = std::real(best.prod.dot(g * best.prod));
  return best;
}

// Exact line search on the segment toward omega; the objective is convex in
// t, so golden section applies. The regularizer is linear, so the moving
// matrix is a single axpy on precomputed endpoints. Returns (t, f(t)).
std::pair<double, double> golden_line_search(const Objective& obj, const Matrix& rho,
                                             const Matrix& omega, double f_at_zero) {
  const Matrix base_reg = obj.regularize(rho);
  const Matrix diff_reg = obj.regularize(omega) - base_reg;
  Matrix moving(base_reg.rows(), base_reg.cols());
  const auto eval = [&](double t) {
    moving = base_reg + t * diff_reg;
    return obj.value_at_reg(moving);
  };
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;

  double best_t = 0.0;
  double best_f = f_at_zero;
  const auto consider = [&](double t, double f) {
    if (f < best_f) {
      best_f = f;
      best_t = t;
    }
  };
  consider(1.0, eval(1.0));

  double a = 0.0, b = 1.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = eval(c), fd = eval(d);
  consider(c, fc);
  consider(d, fd);
  for (int i = 0; i < 24; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = eval(c);
      consider(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = eval(d);
      consider(d, fd);
    }
  }
  return {best_t, best_f};
}

Matrix rho_from_terms(const std::vector<Term>& terms, int dim) {
  Matrix rho = Matrix::Zero(dim, dim);
  for (const Term& term : terms) {
    rho.noalias() += term.weight * (term.prod * term.prod.adjoint());
  }
  return 0.5 * (rho + rho.adjoint());
}

void renormalize_weights(std::vector<Term>& terms) {
  double sum = 0.0;
  for (const Term& t : terms) sum += t.weight;
  for (Term& t : terms) t.weight /= sum;
}

void prune_and_cap(std::vector<Term>& terms, int cap) {
  std::erase_if(terms, [](const Term& t) { return t.weight < kWeightPruneTol; });
  // Merge terms whose projectors nearly coincide: the lighter one folds its
  // weight into the heavier.
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].weight == 0.0) continue;
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      if (terms[j].weight == 0.0) continue;
      const double overlap = std::norm(terms[i].prod.dot(terms[j].prod));
      if (overlap > 1.0 - 1e-9) {
        if (terms[j].weight > terms[i].weight) std::swap(terms[i], terms[j]);
        terms[i].weight += terms[j].weight;
        terms[j].weight = 0.0;
      }
    }
  }
  std::erase_if(terms, [](const Term& t) { return t.weight == 0.0; });
  if (static_cast<int>(terms.size()) > cap) {
    std::vector<std::size_t> order(terms.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return terms[a].weight < terms[b].weight;
    });
    std::vector<bool> drop(terms.size(), false);
    for (std::size_t i = 0; i < terms.size() - static_cast<std::size_t>(cap); ++i) {
      drop[order[i]] = true;
    }
    std::vector<Term> kept;
    kept.reserve(static_cast<std::size_t>(cap));
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (!drop[i]) kept.push_back(std::move(terms[i]));
    }
    terms.swap(kept);
  }
  renormalize_weights(terms);
}

// Weights-only convex subproblem over the current terms: exponentiated
// gradient with a step-size search along each multiplicative direction.
// Runs until an accepted step moves no weight by more than 1e-10.
void reoptimize_weights(std::vector<Term>& terms, const Objective& obj, Matrix& rho,
                        double& f_curr, int max_iters = 100) {
  const int k = static_cast<int>(terms.size());
  if (k <= 1) return;

  Matrix vmat(obj.dim, k);
  Eigen::VectorXd w(k);
  for (int i = 0; i < k; ++i) {
    vmat.col(i) = terms[i].prod;
    w(i) = terms[i].weight;
  }
  const auto build_rho = [&](const Eigen::VectorXd& p) -> Matrix {
    Matrix r = vmat * p.asDiagonal() * vmat.adjoint();
    return 0.5 * (r + r.adjoint());
  };

  rho = build_rho(w);
  double f = obj.value(rho);
  double eta = 1.0;
  Eigen::VectorXd q(k), best_q(k);
  for (int it = 0; it < max_iters; ++it) {
    const Matrix g = objective_gradient(obj, obj.regularize(rho));
    const Matrix gv = g * vmat;
    Eigen::VectorXd grad(k);
    for (int i = 0; i < k; ++i) {
      grad(i) = std::real(vmat.col(i).dot(gv.col(i)));
    }
    grad.array() -= grad.minCoeff();

    // Multiplicative step w .* exp(-eta grad); search eta by expanding from
    // the last accepted value and keep the best trial.
    const auto try_eta = [&](double e, double& f_trial) -> bool {
      q = w.array() * (-e * grad.array()).exp();
      const double z = q.sum();
      if (z <= 0.0 || !std::isfinite(z)) return false;
      q /= z;
      f_trial = obj.value(build_rho(q));
      return true;
    };

    double best_f = f;
    double best_eta = 0.0;
    double f_trial = 0.0;
    double e = eta;
    int shrink = 0;
    while (shrink < 40) {
      if (try_eta(e, f_trial) && f_trial < best_f) {
        best_f = f_trial;
        best_eta = e;
        best_q = q;
        // expand while it keeps paying off
        double e_up = e * 3.0;
        while (try_eta(e_up, f_trial) && f_trial < best_f) {
          best_f = f_trial;
          best_eta = e_up;
          best_q = q;
          e_up *= 3.0;
        }
        break;
      }
      e *= 0.25;
      ++shrink;
      if (e < 1e-12) break;
    }
    if (best_eta == 0.0) break;

    const double improvement = f - best_f;
    const double step = (best_q - w).cwiseAbs().maxCoeff();
    w = best_q;
    rho = build_rho(w);
    f = best_f;
    eta = best_eta;
    if (step < 1e-10 || improvement < 1e-14) break;
  }

  for (int i = 0; i < k; ++i) {
    terms[i].weight = w(i);
  }
  f_curr = f;
}

struct RunOutput {
  double value = 0.0;
  double gap = 0.0;
  int iterations = 0;
  std::vector<Term> terms;
};

RunOutput run_once(const Matrix& sigma, const PartyStructure& st, const OptimizerConfig& cfg,
                   int cap, std::uint64_t run_seed, bool basis_init) {
  Rng rng(run_seed);
  const int dim = st.total_dim();
  const Objective obj{sigma, trace_sigma_log2_sigma(sigma), cfg.support_floor, dim};

  std::vector<Term> terms;
  terms.reserve(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    Term term;
    term.weight = 1.0 / dim;
    if (basis_init) {
      term.factors.resize(st.parties());
      for (int p = 0; p < st.parties(); ++p) {
        Vector f = Vector::Zero(st.dim(p));
        f(st.digit(i, p)) = Complex(1.0, 0.0);
        term.factors[p] = std::move(f);
      }
    } else {
      term.factors = random_product_factors(st, rng);
    }
    term.prod = product_vector(st, term.factors);
    terms.push_back(std::move(term));
  }

  Matrix rho = rho_from_terms(terms, dim);
  double f = obj.value(rho);
  std::vector<double> history{f};
  std::vector<Vector> warm;
  int used = cfg.max_outer_iterations;

  for (int it = 1; it <= cfg.max_outer_iterations; ++it) {
    const Matrix g = objective_gradient(obj, obj.regularize(rho));
    ProductCandidate cand =
        best_product_state(g, st, cfg.inner_starts, rng, warm.empty() ? nullptr : &warm);
    warm = cand.factors;

    // Step onto an existing vertex when it already minimizes the linear
    // model; a weight transfer beats adding a near-duplicate atom.
    {
      double best_existing = std::numeric_limits<double>::infinity();
      std::size_t best_idx = 0;
      for (std::size_t i = 0; i < terms.size(); ++i) {
        const double v = std::real(terms[i].prod.dot(g * terms[i].prod));
        if (v < best_existing) {
          best_existing = v;
          best_idx = i;
        }
      }
      if (best_existing <= cand.value + 1e-12 * (1.0 + std::abs(cand.value))) {
        cand.factors = terms[best_idx].factors;
        cand.prod = terms[best_idx].prod;
        cand.value = best_existing;
      }
    }

    const Matrix omega = cand.prod * cand.prod.adjoint();
    const auto [t, f_t] = golden_line_search(obj, rho, omega, f);
    if (t > 0.0) {
      for (Term& term : terms) term.weight *= (1.0 - t);
      terms.push_back(Term{t, std::move(cand.factors), std::move(cand.prod)});
      f = f_t;
    }
    prune_and_cap(terms, cap);
    rho = rho_from_terms(terms, dim);

    if (it % 10 == 0) {
      reoptimize_weights(terms, obj, rho, f);
      prune_and_cap(terms, cap);
      rho = rho_from_terms(terms, dim);
    }
    f = obj.value(rho);

    history.push_back(f);
    if (std::getenv("QREE_TRACE") != nullptr && it % 10 == 0) {
      const double tr_g_rho = std::real(g.cwiseProduct(rho.transpose()).sum());
      std::cerr << "it " << it << " f " << f << " gap " << tr_g_rho - cand.value << " terms "
                << terms.size() << "\n";
    }
    if (it >= 10 && history[static_cast<std::size_t>(it - 10)] - f < cfg.value_tolerance) {
      used = it;
      break;
    }
  }

  reoptimize_weights(terms, obj, rho, f, 500);
  prune_and_cap(terms, cap);
  rho = rho_from_terms(terms, dim);

  RunOutput out;
  out.value = obj.value(rho);
  out.iterations = used;
  out.terms = std::move(terms);

  // Duality gap at the final iterate: tr(G rho) - min_omega tr(G omega),
  // with the min over the heuristic subproblem.
  const Matrix g = objective_gradient(obj, obj.regularize(rho));
  const ProductCandidate cand = best_product_state(g, st, cfg.inner_starts, rng, &warm);
  const double tr_g_rho = std::real(g.cwiseProduct(rho.transpose()).sum());
  out.gap = std::max(0.0, tr_g_rho - cand.value);
  if (std::getenv("QREE_TRACE") != nullptr) {
    std::cerr << "run value " << out.value << " gap " << out.gap << " iters " << out.iterations
              << " terms " << out.terms.size() << "\n";
  }
  return out;
}

void validate_config(const OptimizerConfig& cfg) {
  if (cfg.max_outer_iterations < 1) {
    throw std::invalid_argument("OptimizerConfig: max_outer_iterations must be >= 1");
  }
  if (cfg.value_tolerance <= 0.0) {
    throw std::invalid_argument("OptimizerConfig: value_tolerance must be > 0");
  }
  if (cfg.restarts < 1) {
    throw std::invalid_argument("OptimizerConfig: restarts must be >= 1");
  }
  if (cfg.inner_starts < 1) {
    throw std::invalid_argument("OptimizerConfig: inner_starts must be >= 1");
  }
  if (cfg.support_floor <= 0.0 || cfg.support_floor >= 1.0) {
    throw std::invalid_argument("OptimizerConfig: support_floor must lie in (0, 1)");
  }
  if (cfg.ensemble_size < 0) {
    throw std::invalid_argument("OptimizerConfig: ensemble_size must be >= 0");
  }
}

}  // namespace

OptimizerConfig with_derived_seed(const OptimizerConfig& cfg, std::uint64_t counter) {
  OptimizerConfig derived = cfg;
  derived.seed = derive_seed(cfg.seed, counter);
  return derived;
}

ReeResult relative_entropy_of_entanglement(const QuantumState& sigma,
                                           const OptimizerConfig& cfg) {
  validate_config(cfg);
  const PartyStructure& st = sigma.structure();
  if (st.parties() < 2) {
    throw std::invalid_argument(
        "relative_entropy_of_entanglement: needs at least two parties");
  }
  const int dim = st.total_dim();
  const int cap = cfg.ensemble_size == 0 ? 4 * dim : cfg.ensemble_size;
  if (cap < dim) {
    std::cerr << "qree: ensemble_size " << cap << " is below the total dimension " << dim
              << "; the separable optimum may be unreachable\n";
  }

  std::vector<RunOutput> runs;
  runs.reserve(static_cast<std::size_t>(cfg.restarts));
  for (int r = 0; r < cfg.restarts; ++r) {
    runs.push_back(run_once(sigma.matrix(), st, cfg, cap, derive_seed(cfg.seed, r), r == 0));
  }

  // Minimum value wins; exact ties prefer the smaller gap, then the leaner
  // ensemble, then the earlier restart.
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].value < runs[best].value) {
      best = r;
    } else if (runs[r].value == runs[best].value &&
               (runs[r].gap < runs[best].gap ||
                (runs[r].gap == runs[best].gap &&
                 runs[r].terms.size() < runs[best].terms.size()))) {
      best = r;
    }
  }

  const double agree_tol = std::max(1e-6, 10.0 * cfg.value_tolerance);
  int agreeing = 0;
  for (const RunOutput& run : runs) {
    if (run.value - runs[best].value <= agree_tol) ++agreeing;
  }

  std::vector<ProductTerm> closest_terms;
  closest_terms.reserve(runs[best].terms.size());
  double weight_sum = 0.0;
  for (const Term& t : runs[best].terms) weight_sum += t.weight;
  for (Term& t : runs[best].terms) {
    closest_terms.push_back(ProductTerm{t.weight / weight_sum, std::move(t.factors)});
  }

  // Worst-case objective shift from the support floor.
  const double eps = cfg.support_floor;
  const double floor_correction = eps * std::log2(static_cast<double>(dim)) + binary_entropy(eps);

  ReeResult result{
      .value = Bits(std::max(runs[best].value, 0.0)),
      .closest = SeparableEnsemble(st, std::move(closest_terms)),
      .gap_estimate = runs[best].gap + floor_correction,
      .iterations_used = runs[best].iterations,
      .restarts_agreeing = agreeing,
  };
  return result;
}

Bits pure_state_ree_oracle(const PureState& psi, const Bipartition& cut) {
  const PartyStructure& st = psi.structure();
  const int n = st.parties();
  std::vector<int> seen(n, 0);
  for (int p : cut.block_a) {
    if (p < 0 || p >= n) throw std::invalid_argument("pure_state_ree_oracle: bad party index");
    ++seen[p];
  }
  for (int p : cut.block_b) {
    if (p < 0 || p >= n) throw std::invalid_argument("pure_state_ree_oracle: bad party index");
    ++seen[p];
  }
  if (cut.block_a.empty() || cut.block_b.empty() ||
      std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) {
    throw std::invalid_argument(
        "pure_state_ree_oracle: cut must split the parties into two nonempty blocks");
  }
  std::vector<int> keep = cut.block_a;
  std::sort(keep.begin(), keep.end());
  return von_neumann_entropy(partial_trace(from_pure(psi), keep));
}

}  // namespace qree
