#pragma once

#include <Eigen/Dense>
#include <complex>
#include <iosfwd>
#include <vector>

#include "semigroup_lab/errors.hpp"

namespace semigroup_lab {

using Complex = std::complex<double>;

/// Scalar field the problem lives over. Real-field objects keep exactly
/// zero imaginary parts, so a Real tag is preserved under arithmetic.
enum class Field { Real, Complex };

/// Field of the result of combining two operands.
constexpr Field combine(Field a, Field b) {
  return (a == Field::Real && b == Field::Real) ? Field::Real : Field::Complex;
}

/// Element of the state space (and, via the bilinear pairing, of its dual).
///
/// Entries must be finite; NaN/Inf are rejected at construction so no public
/// operation ever sees them.
class VectorState {
 public:
  VectorState(Eigen::VectorXcd entries, Field field);

  static VectorState zero(Eigen::Index dim, Field field = Field::Real);
  static VectorState basis(Eigen::Index dim, Eigen::Index i, Field field = Field::Real);
  static VectorState from_real(const std::vector<double>& entries);
  static VectorState from_complex(const std::vector<Complex>& entries);

  Eigen::Index dim() const { return entries_.size(); }
  Field field() const { return field_; }
  const Eigen::VectorXcd& entries() const { return entries_; }
  Complex operator[](Eigen::Index i) const { return entries_(i); }

  /// Euclidean norm, sqrt(sum |x_i|^2).
  double norm() const { return entries_.norm(); }

 private:
  Eigen::VectorXcd entries_;
  Field field_;
};

VectorState operator+(const VectorState& x, const VectorState& y);
VectorState operator-(const VectorState& x, const VectorState& y);
VectorState operator*(Complex alpha, const VectorState& x);
VectorState operator*(double alpha, const VectorState& x);

/// Duality pairing (x, phi) = sum_i x_i * phi_i. Bilinear in both arguments
/// (no conjugation): phi plays the role of a functional, not of an inner
/// product partner. The dual of the space is identified with the space
/// itself through this pairing.
Complex pairing(const VectorState& x, const VectorState& phi);

/// Distance ||x - y||.
double distance(const VectorState& x, const VectorState& y);

/// Dense bounded linear operator on the state space.
class LinearMap {
 public:
  LinearMap(Eigen::MatrixXcd matrix, Field field);

  static LinearMap identity(Eigen::Index dim, Field field = Field::Real);
  static LinearMap zero(Eigen::Index dim, Field field = Field::Real);
  static LinearMap from_real(const Eigen::MatrixXd& matrix);
  static LinearMap scalar(Complex value);           // 1x1 map
  static LinearMap scalar(double value);            // 1x1 map over R
  static LinearMap diagonal(const std::vector<Complex>& entries);
  static LinearMap diagonal(const std::vector<double>& entries);

  Eigen::Index dim() const { return matrix_.rows(); }
  Field field() const { return field_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return matrix_(i, j); }

  double one_norm() const;        // max column sum, used for exp scaling
  double frobenius_norm() const;

 private:
  Eigen::MatrixXcd matrix_;
  Field field_;
};

/// Matrix-vector product A x.
VectorState apply(const LinearMap& a, const VectorState& x);

/// Operator composition: (compose(A, B)) x = A (B x).
LinearMap compose(const LinearMap& a, const LinearMap& b);

/// m-fold composition of A with itself; power(A, 0) is the identity.
LinearMap power(const LinearMap& a, int m);

/// Adjoint with respect to the bilinear duality pairing, i.e. the transpose:
/// pairing(A x, phi) == pairing(x, adjoint_map(A) phi) for all x, phi.
LinearMap adjoint_map(const LinearMap& a);

/// Entrywise conjugate transpose (Hermitian adjoint). Coincides with
/// adjoint_map over the real field.
LinearMap conjugate_transpose(const LinearMap& a);

LinearMap operator+(const LinearMap& a, const LinearMap& b);
LinearMap operator-(const LinearMap& a, const LinearMap& b);
LinearMap operator*(const LinearMap& a, const LinearMap& b);  // compose
LinearMap operator*(Complex alpha, const LinearMap& a);
LinearMap operator*(double alpha, const LinearMap& a);

/// exp(A) by scaling-and-squaring with a fixed-order diagonal rational
/// (Pade) approximant. exp(0) = I exactly. Throws OverflowError when the
/// result leaves the representable range.
LinearMap matrix_exponential(const LinearMap& a);

/// Implicit-Euler one-step operator (I - hA)^{-1}.
/// Throws SingularityError carrying h when I - hA is singular.
LinearMap resolvent_step(const LinearMap& a, double h);

/// Spectral norm ||A||_2 within relative error tol, by power iteration on
/// the Gram operator A^H A from a fixed seed start vector, with
/// deterministic restarts. Throws ConvergenceError when the iteration cap
/// is exhausted.
double operator_norm(const LinearMap& a, double tol);

/// Plain-text matrix serialization.
///
/// Format: a header line "dim k field R|C" followed by k rows of k
/// whitespace-separated entries; complex entries are written as "re+imi"
/// (e.g. "1.5-2i"). Real-field matrices carry bare reals.
void write_matrix(std::ostream& out, const LinearMap& a);
LinearMap read_matrix(std::istream& in);

}  // namespace semigroup_lab
