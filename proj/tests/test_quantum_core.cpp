#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qree/entropy.hpp"
#include "qree/random.hpp"
#include "qree/state.hpp"
#include "qree/types.hpp"
#include "test_util.hpp"

#include <cmath>
#include <vector>

using namespace qree;

namespace {

const double kLog2Of3 = std::log2(3.0);

PureState basis_state(const PartyStructure& st, int index) {
  Vector v = Vector::Zero(st.total_dim());
  v(index) = Complex(1.0, 0.0);
  return PureState(st, std::move(v));
}

}  // namespace

TEST_CASE("party structure validates and indexes") {
  CHECK_THROWS_AS(PartyStructure({}), std::invalid_argument);
  CHECK_THROWS_AS(PartyStructure({2, 1}), std::invalid_argument);

  const PartyStructure st({2, 3, 2});
  CHECK(st.total_dim() == 12);
  CHECK(st.stride(0) == 6);
  CHECK(st.stride(1) == 2);
  CHECK(st.stride(2) == 1);
  // index 9 = |1,1,1>
  CHECK(st.digit(9, 0) == 1);
  CHECK(st.digit(9, 1) == 1);
  CHECK(st.digit(9, 2) == 1);

  const std::vector<int> keep{0, 2};
  CHECK(st.restricted(keep).dims() == std::vector<int>{2, 2});
  const std::vector<int> bad{2, 0};
  CHECK_THROWS_AS(st.restricted(bad), std::invalid_argument);
}

TEST_CASE("bits clamps float noise and rejects real negatives") {
  CHECK(Bits(0.5).value() == 0.5);
  CHECK(Bits(-1e-12).value() == 0.0);
  CHECK_THROWS_AS(Bits(-1e-3), std::invalid_argument);
  CHECK(!Bits::infinity().is_finite());
  CHECK(Bits(1.0).is_finite());
}

TEST_CASE("from_pure expands projectors") {
  const QuantumState zero = from_pure(basis_state(PartyStructure({2}), 0));
  CHECK(zero.matrix()(0, 0) == Complex(1.0, 0.0));
  CHECK(zero.matrix()(1, 1) == Complex(0.0, 0.0));

  const QuantumState epr = from_pure(make_epr());
  for (int i : {0, 3}) {
    for (int j : {0, 3}) {
      CHECK(std::abs(epr.matrix()(i, j) - Complex(0.5, 0.0)) < 1e-12);
    }
  }
  CHECK(std::abs(epr.matrix()(1, 1)) < 1e-15);
  CHECK(std::abs(epr.matrix()(0, 1)) < 1e-15);

  const QuantumState w = from_pure(make_w());
  for (int i : {1, 2, 4}) {
    for (int j : {1, 2, 4}) {
      CHECK(std::abs(w.matrix()(i, j) - Complex(1.0 / 3.0, 0.0)) < 1e-12);
    }
  }
  CHECK(std::abs(w.matrix()(0, 0)) < 1e-15);
  CHECK(std::abs(w.matrix()(7, 7)) < 1e-15);
}

TEST_CASE("partial trace of GHZ and W match hand expansions") {
  const QuantumState ghz = from_pure(make_ghz(Complex(1.0 / std::sqrt(2.0), 0.0)));
  const std::vector<int> keep_ab{0, 1};
  const QuantumState ghz_ab = partial_trace(ghz, keep_ab);
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = expected(3, 3) = Complex(0.5, 0.0);
  CHECK(test::max_abs_diff(ghz_ab.matrix(), expected) < 1e-12);

  // tr_C W = (1/3)|00><00| + (2/3)|psi+><psi+|: 1/3 on {(0,0),(1,1),(1,2),(2,1),(2,2)}
  const QuantumState w_ab = partial_trace(from_pure(make_w()), keep_ab);
  Matrix expected_w = Matrix::Zero(4, 4);
  expected_w(0, 0) = Complex(1.0 / 3.0, 0.0);
  for (int i : {1, 2}) {
    for (int j : {1, 2}) {
      expected_w(i, j) = Complex(1.0 / 3.0, 0.0);
    }
  }
  CHECK(test::max_abs_diff(w_ab.matrix(), expected_w) < 1e-12);
  CHECK(test::max_abs_diff(
            w_ab.matrix(),
            test::brute_force_partial_trace(from_pure(make_w()).matrix(), {2, 2, 2}, {0, 1})) <
        1e-12);
}

TEST_CASE("partial trace of a product state recovers the factor") {
  Rng rng(11);
  const QuantumState a = random_density(PartyStructure({2}), 2, rng);
  const QuantumState b = random_density(PartyStructure({3}), 3, rng);
  const QuantumState ab = tensor_product(a, b);
  const std::vector<int> keep_a{0};
  CHECK(test::max_abs_diff(partial_trace(ab, keep_a).matrix(), a.matrix()) < 1e-12);
  const std::vector<int> keep_b{1};
  CHECK(test::max_abs_diff(partial_trace(ab, keep_b).matrix(), b.matrix()) < 1e-12);
}

TEST_CASE("partial trace rejects an empty keep set and keeps everything intact") {
  const QuantumState ghz = from_pure(make_ghz(Complex(0.6, 0.0)));
  const std::vector<int> empty{};
  CHECK_THROWS_AS(partial_trace(ghz, empty), std::invalid_argument);
  const std::vector<int> all{0, 1, 2};
  CHECK(test::max_abs_diff(partial_trace(ghz, all).matrix(), ghz.matrix()) < 1e-15);
}

TEST_CASE("tracing parties one at a time commutes with tracing them jointly") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    Rng rng(seed);
    const PartyStructure st({2, 2, 2});
    const QuantumState rho = random_density(st, 8, rng);
    const std::vector<int> keep_ab{0, 1}, keep_a{0};
    const QuantumState two_step = partial_trace(partial_trace(rho, keep_ab), keep_a);
    const QuantumState one_step = partial_trace(rho, keep_a);
    CHECK(test::max_abs_diff(two_step.matrix(), one_step.matrix()) < 1e-12);
    CHECK(test::max_abs_diff(
              one_step.matrix(),
              test::brute_force_partial_trace(rho.matrix(), {2, 2, 2}, {0})) < 1e-12);
  }
}

TEST_CASE("pure tripartite reductions have matching Schmidt entropies") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const PureState psi = haar_random_pure(PartyStructure({2, 2, 2}), 100 + seed);
    const QuantumState full = from_pure(psi);
    const std::vector<int> keep_ab{0, 1}, keep_c{2};
    const double s_ab = von_neumann_entropy(partial_trace(full, keep_ab)).value();
    const double s_c = von_neumann_entropy(partial_trace(full, keep_c)).value();
    CHECK(std::abs(s_ab - s_c) < 1e-9);
  }
}

TEST_CASE("entropy basics") {
  CHECK(von_neumann_entropy(from_pure(make_w())).value() < 1e-10);

  Matrix mixed = 0.5 * Matrix::Identity(2, 2);
  CHECK(von_neumann_entropy(QuantumState(PartyStructure({2}), mixed)).value() ==
        doctest::Approx(1.0).epsilon(1e-12));

  // single-party reduction of W has eigenvalues {1/3, 2/3}
  const std::vector<int> keep_a{0};
  const double s = von_neumann_entropy(partial_trace(from_pure(make_w()), keep_a)).value();
  CHECK(s == doctest::Approx(kLog2Of3 - 2.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("entropy is additive over tensor products") {
  Rng rng(21);
  const QuantumState a = random_density(PartyStructure({2}), 2, rng);
  const QuantumState b = random_density(PartyStructure({2, 2}), 3, rng);
  const double lhs = von_neumann_entropy(tensor_product(a, b)).value();
  const double rhs = von_neumann_entropy(a).value() + von_neumann_entropy(b).value();
  CHECK(std::abs(lhs - rhs) < 1e-9);
}

TEST_CASE("relative entropy identities and support handling") {
  Rng rng(31);
  const QuantumState rho = random_density(PartyStructure({2, 2}), 4, rng);
  CHECK(quantum_relative_entropy(rho, rho).value() < 1e-10);

  const PartyStructure qubit({2});
  const QuantumState zero = from_pure(basis_state(qubit, 0));
  const QuantumState one = from_pure(basis_state(qubit, 1));
  const QuantumState mixed(qubit, 0.5 * Matrix::Identity(2, 2));
  CHECK(quantum_relative_entropy(zero, mixed).value() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(!quantum_relative_entropy(zero, one).is_finite());

  CHECK_THROWS_AS(quantum_relative_entropy(zero, rho), std::invalid_argument);
}

TEST_CASE("relative entropy is nonnegative, zero only at equal states") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(200 + seed);
    const PartyStructure st({2, 2});
    const QuantumState sigma = random_density(st, 4, rng);
    const QuantumState rho = random_density(st, 4, rng);
    const double value = quantum_relative_entropy(sigma, rho).value();
    CHECK(value >= 0.0);
    if (test::max_abs_diff(sigma.matrix(), rho.matrix()) > 1e-8) {
      CHECK(value > 0.0);
    }
  }
}

TEST_CASE("named states") {
  const PureState ghz = make_ghz(Complex(1.0 / std::sqrt(2.0), 0.0));
  CHECK(std::abs(ghz.amplitudes()(0) - Complex(1.0 / std::sqrt(2.0), 0.0)) < 1e-12);
  CHECK(std::abs(ghz.amplitudes()(7) - Complex(1.0 / std::sqrt(2.0), 0.0)) < 1e-12);
  for (int i = 1; i < 7; ++i) CHECK(std::abs(ghz.amplitudes()(i)) == 0.0);

  const PureState w = make_w();
  for (int i : {1, 2, 4}) {
    CHECK(std::abs(w.amplitudes()(i) - Complex(1.0 / std::sqrt(3.0), 0.0)) < 1e-12);
  }

  // psi_eff(1, 0) degenerates to the product state |100>
  const PureState product = make_psi_eff(Complex(1.0, 0.0), Complex(0.0, 0.0));
  CHECK(std::abs(product.amplitudes()(4) - Complex(1.0, 0.0)) < 1e-12);

  CHECK_THROWS_AS(make_ghz(Complex(1.5, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(make_psi_eff(Complex(1.0, 0.0), Complex(0.5, 0.0)), std::invalid_argument);

  // epr embedded into three parties pads C with |0>
  const PureState epr3 = make_named_state({.family = NamedStateSpec::Family::epr},
                                          PartyStructure({2, 2, 2}));
  CHECK(std::abs(epr3.amplitudes()(0) - Complex(1.0 / std::sqrt(2.0), 0.0)) < 1e-12);
  CHECK(std::abs(epr3.amplitudes()(6) - Complex(1.0 / std::sqrt(2.0), 0.0)) < 1e-12);
  CHECK(std::abs(epr3.amplitudes()(7)) == 0.0);
}

TEST_CASE("haar sampling is deterministic and normalized") {
  const PartyStructure st({2, 2, 2});
  const PureState a = haar_random_pure(st, 77);
  const PureState b = haar_random_pure(st, 77);
  CHECK((a.amplitudes() - b.amplitudes()).norm() == 0.0);
  CHECK(std::abs(a.amplitudes().norm() - 1.0) < 1e-12);
  const PureState c = haar_random_pure(st, 78);
  CHECK((a.amplitudes() - c.amplitudes()).norm() > 1e-3);
}

TEST_CASE("haar single-party purity matches the known moment") {
  // E[tr rho_A^2] = (d_A + d_B)/(d_A d_B + 1) = 4/5 on two qubits.
  const PartyStructure st({2, 2});
  const std::vector<int> keep_a{0};
  Rng rng(1234);
  double sum = 0.0;
  const int samples = 10000;
  for (int i = 0; i < samples; ++i) {
    const PureState psi = haar_random_pure(st, rng);
    const Matrix red = partial_trace(from_pure(psi), keep_a).matrix();
    sum += std::real((red * red).trace());
  }
  CHECK(std::abs(sum / samples - 0.8) < 0.02);
}

TEST_CASE("state invariants are enforced") {
  const PartyStructure st({2});
  Matrix not_hermitian(2, 2);
  not_hermitian << Complex(0.5, 0.0), Complex(0.1, 0.0), Complex(0.3, 0.0), Complex(0.5, 0.0);
  CHECK_THROWS_AS(QuantumState(st, not_hermitian), std::invalid_argument);

  Matrix bad_trace = 0.7 * Matrix::Identity(2, 2);
  CHECK_THROWS_AS(QuantumState(st, bad_trace), std::invalid_argument);

  Matrix not_psd(2, 2);
  not_psd << Complex(1.2, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0), Complex(-0.2, 0.0);
  CHECK_THROWS_AS(QuantumState(st, not_psd), std::invalid_argument);

  Vector unnormalized = Vector::Ones(2);
  CHECK_THROWS_AS(PureState(st, unnormalized), std::invalid_argument);
}
