#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semigroup_lab/trotter.hpp"

namespace semigroup_lab {

enum class Boundary { dirichlet };

/// (k+1)^2 tridiag(1, -2, 1) on the k interior points of [0, 1]: the
/// Dirichlet Laplacian with mesh-width scaling baked in, symmetric negative
/// definite. Requires k >= 2.
LinearMap laplacian_1d(int k, Boundary bc = Boundary::dirichlet);

/// Diagonal operator of the given samples (a discretized potential).
LinearMap multiplication_operator(const std::vector<double>& samples);
LinearMap multiplication_operator(const std::vector<Complex>& samples);

/// The canonical 2x2 nilpotent splitting: C = [[0,1],[0,0]], D = C^T.
/// C + D is the symmetric exchange matrix, whose exponential has the
/// cosh/sinh closed form.
SplitPair nilpotent_pair();

/// Seeded pair of skew-Hermitian maps over the complex field; every
/// exp(tC), exp(tD) is unitary.
SplitPair skew_hermitian_pair(int size, std::uint64_t seed);

/// Seeded dense map with entries in [-1, 1) (complex entries when the field
/// is Complex). Bit-reproducible: the generator is fixed by this library,
/// not the standard library's distributions.
LinearMap random_map(int size, std::uint64_t seed, Field field = Field::Real);

/// Seeded state with entries in [-1, 1), same reproducibility contract.
VectorState random_state(int size, std::uint64_t seed, Field field = Field::Real);

enum class FixtureKind { laplacian1d, multiplication, nilpotent_pair, skew_pair, random };

/// Parsed fixture description from the experiment configuration format.
struct FixtureDescriptor {
  FixtureKind kind = FixtureKind::random;
  int size = 1;
  Boundary boundary = Boundary::dirichlet;
  std::vector<Complex> samples;
  std::uint64_t seed = 0;
  Field field = Field::Real;
};

/// Materializes a single-operator fixture. Pair fixtures (nilpotent_pair,
/// skew_pair) must go through make_split_pair instead.
LinearMap make_fixture(const FixtureDescriptor& descriptor);

/// Materializes a pair fixture.
SplitPair make_split_pair(const FixtureDescriptor& descriptor);

bool is_pair_fixture(FixtureKind kind);

}  // namespace semigroup_lab
