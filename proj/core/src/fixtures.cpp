#include "semigroup_lab/fixtures.hpp"

namespace semigroup_lab {

namespace {

// splitmix64; the same scheme as the operator-norm start vectors so fixture
// bytes do not depend on the standard library.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-52 - 1.0; }
  Complex entry(Field field) {
    const double re = uniform();
    return field == Field::Real ? Complex(re, 0.0) : Complex(re, uniform());
  }
};

}  // namespace

LinearMap laplacian_1d(int k, Boundary) {
  if (k < 2) throw InputError("laplacian_1d: need k >= 2 interior points");
  const double scale = static_cast<double>(k + 1) * (k + 1);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    m(i, i) = -2.0 * scale;
    if (i + 1 < k) {
      m(i, i + 1) = scale;
      m(i + 1, i) = scale;
    }
  }
  return LinearMap::from_real(m);
}

LinearMap multiplication_operator(const std::vector<double>& samples) {
  if (samples.empty()) throw InputError("multiplication_operator: samples must be nonempty");
  return LinearMap::diagonal(samples);
}

LinearMap multiplication_operator(const std::vector<Complex>& samples) {
  if (samples.empty()) throw InputError("multiplication_operator: samples must be nonempty");
  return LinearMap::diagonal(samples);
}

SplitPair nilpotent_pair() {
  Eigen::MatrixXd c(2, 2);
  c << 0.0, 1.0, 0.0, 0.0;
  return SplitPair(LinearMap::from_real(c), LinearMap::from_real(c.transpose()));
}

SplitPair skew_hermitian_pair(int size, std::uint64_t seed) {
  if (size < 1) throw InputError("skew_hermitian_pair: size must be >= 1");
  auto skew = [size](std::uint64_t s) {
    SplitMix64 rng(s);
    Eigen::MatrixXcd g(size, size);
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j < size; ++j) g(i, j) = Complex(rng.uniform(), rng.uniform());
    }
    Eigen::MatrixXcd k = 0.5 * (g - g.adjoint().eval());
    return LinearMap(std::move(k), Field::Complex);
  };
  return SplitPair(skew(seed), skew(seed + 0x517b));
}

LinearMap random_map(int size, std::uint64_t seed, Field field) {
  if (size < 1) throw InputError("random_map: size must be >= 1");
  SplitMix64 rng(seed);
  Eigen::MatrixXcd m(size, size);
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) m(i, j) = rng.entry(field);
  }
  return LinearMap(std::move(m), field);
}

VectorState random_state(int size, std::uint64_t seed, Field field) {
  if (size < 1) throw InputError("random_state: size must be >= 1");
  SplitMix64 rng(seed);
  Eigen::VectorXcd v(size);
  for (int i = 0; i < size; ++i) v(i) = rng.entry(field);
  return VectorState(std::move(v), field);
}

bool is_pair_fixture(FixtureKind kind) {
  return kind == FixtureKind::nilpotent_pair || kind == FixtureKind::skew_pair;
}

LinearMap make_fixture(const FixtureDescriptor& d) {
  switch (d.kind) {
    case FixtureKind::laplacian1d:
      return laplacian_1d(d.size, d.boundary);
    case FixtureKind::multiplication:
      return multiplication_operator(d.samples);
    case FixtureKind::random:
      return random_map(d.size, d.seed, d.field);
    case FixtureKind::nilpotent_pair:
    case FixtureKind::skew_pair:
      throw InputError("make_fixture: pair fixture requires make_split_pair");
  }
  throw InputError("make_fixture: unknown fixture kind");
}

SplitPair make_split_pair(const FixtureDescriptor& d) {
  switch (d.kind) {
    case FixtureKind::nilpotent_pair:
      return nilpotent_pair();
    case FixtureKind::skew_pair:
      return skew_hermitian_pair(d.size, d.seed);
    default:
      throw InputError("make_split_pair: not a pair fixture");
  }
}

}  // namespace semigroup_lab
