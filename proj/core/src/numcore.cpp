#include "semigroup_lab/numcore.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace semigroup_lab {

namespace {

bool all_finite(const Eigen::MatrixXcd& m) {
  return m.real().allFinite() && m.imag().allFinite();
}

void require_finite(const Eigen::MatrixXcd& m, const char* what) {
  if (!all_finite(m)) throw InputError(std::string(what) + ": non-finite entry");
}

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// VectorState

VectorState::VectorState(Eigen::VectorXcd entries, Field field)
    : entries_(std::move(entries)), field_(field) {
  if (entries_.size() == 0) throw InputError("VectorState: dimension must be positive");
  require_finite(entries_, "VectorState");
  if (field_ == Field::Real && entries_.imag().cwiseAbs().maxCoeff() != 0.0) {
    throw InputError("VectorState: real field with nonzero imaginary part");
  }
}

VectorState VectorState::zero(Eigen::Index dim, Field field) {
  return VectorState(Eigen::VectorXcd::Zero(dim), field);
}

VectorState VectorState::basis(Eigen::Index dim, Eigen::Index i, Field field) {
  if (i < 0 || i >= dim) throw InputError("VectorState::basis: index out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(i) = 1.0;
  return VectorState(std::move(v), field);
}

VectorState VectorState::from_real(const std::vector<double>& entries) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(entries.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = entries[static_cast<size_t>(i)];
  return VectorState(std::move(v), Field::Real);
}

VectorState VectorState::from_complex(const std::vector<Complex>& entries) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(entries.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = entries[static_cast<size_t>(i)];
  return VectorState(std::move(v), Field::Complex);
}

VectorState operator+(const VectorState& x, const VectorState& y) {
  require_same_dim(x.dim(), y.dim(), "VectorState+");
  return VectorState(x.entries() + y.entries(), combine(x.field(), y.field()));
}

VectorState operator-(const VectorState& x, const VectorState& y) {
  require_same_dim(x.dim(), y.dim(), "VectorState-");
  return VectorState(x.entries() - y.entries(), combine(x.field(), y.field()));
}

VectorState operator*(Complex alpha, const VectorState& x) {
  Field f = (alpha.imag() == 0.0) ? x.field() : Field::Complex;
  return VectorState(alpha * x.entries(), f);
}

VectorState operator*(double alpha, const VectorState& x) {
  return VectorState(alpha * x.entries(), x.field());
}

Complex pairing(const VectorState& x, const VectorState& phi) {
  require_same_dim(x.dim(), phi.dim(), "pairing");
  // Bilinear: no conjugation on either argument.
  return x.entries().cwiseProduct(phi.entries()).sum();
}

double distance(const VectorState& x, const VectorState& y) {
  require_same_dim(x.dim(), y.dim(), "distance");
  return (x.entries() - y.entries()).norm();
}

// ---------------------------------------------------------------------------
// LinearMap

LinearMap::LinearMap(Eigen::MatrixXcd matrix, Field field)
    : matrix_(std::move(matrix)), field_(field) {
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
    throw InputError("LinearMap: matrix must be square with positive dimension");
  }
  require_finite(matrix_, "LinearMap");
  if (field_ == Field::Real && matrix_.imag().cwiseAbs().maxCoeff() != 0.0) {
    throw InputError("LinearMap: real field with nonzero imaginary part");
  }
}

LinearMap LinearMap::identity(Eigen::Index dim, Field field) {
  return LinearMap(Eigen::MatrixXcd::Identity(dim, dim), field);
}

LinearMap LinearMap::zero(Eigen::Index dim, Field field) {
  return LinearMap(Eigen::MatrixXcd::Zero(dim, dim), field);
}

LinearMap LinearMap::from_real(const Eigen::MatrixXd& matrix) {
  return LinearMap(matrix.cast<Complex>(), Field::Real);
}

LinearMap LinearMap::scalar(Complex value) {
  Eigen::MatrixXcd m(1, 1);
  m(0, 0) = value;
  return LinearMap(std::move(m), value.imag() == 0.0 ? Field::Real : Field::Complex);
}

LinearMap LinearMap::scalar(double value) { return scalar(Complex(value, 0.0)); }

LinearMap LinearMap::diagonal(const std::vector<Complex>& entries) {
  const auto n = static_cast<Eigen::Index>(entries.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  Field f = Field::Real;
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = entries[static_cast<size_t>(i)];
    if (m(i, i).imag() != 0.0) f = Field::Complex;
  }
  return LinearMap(std::move(m), f);
}

LinearMap LinearMap::diagonal(const std::vector<double>& entries) {
  std::vector<Complex> c(entries.begin(), entries.end());
  return diagonal(c);
}

double LinearMap::one_norm() const {
  return matrix_.cwiseAbs().colwise().sum().maxCoeff();
}

double LinearMap::frobenius_norm() const { return matrix_.norm(); }

VectorState apply(const LinearMap& a, const VectorState& x) {
  require_same_dim(a.dim(), x.dim(), "apply");
  return VectorState(a.matrix() * x.entries(), combine(a.field(), x.field()));
}

LinearMap compose(const LinearMap& a, const LinearMap& b) {
  require_same_dim(a.dim(), b.dim(), "compose");
  return LinearMap(a.matrix() * b.matrix(), combine(a.field(), b.field()));
}

LinearMap power(const LinearMap& a, int m) {
  if (m < 0) throw InputError("power: exponent must be nonnegative");
  LinearMap result = LinearMap::identity(a.dim(), a.field());
  for (int i = 0; i < m; ++i) result = compose(result, a);
  return result;
}

LinearMap adjoint_map(const LinearMap& a) {
  return LinearMap(a.matrix().transpose(), a.field());
}

LinearMap conjugate_transpose(const LinearMap& a) {
  return LinearMap(a.matrix().adjoint(), a.field());
}

LinearMap operator+(const LinearMap& a, const LinearMap& b) {
  require_same_dim(a.dim(), b.dim(), "LinearMap+");
  return LinearMap(a.matrix() + b.matrix(), combine(a.field(), b.field()));
}

LinearMap operator-(const LinearMap& a, const LinearMap& b) {
  require_same_dim(a.dim(), b.dim(), "LinearMap-");
  return LinearMap(a.matrix() - b.matrix(), combine(a.field(), b.field()));
}

LinearMap operator*(const LinearMap& a, const LinearMap& b) { return compose(a, b); }

LinearMap operator*(Complex alpha, const LinearMap& a) {
  Field f = (alpha.imag() == 0.0) ? a.field() : Field::Complex;
  return LinearMap(alpha * a.matrix(), f);
}

LinearMap operator*(double alpha, const LinearMap& a) {
  return LinearMap(alpha * a.matrix(), a.field());
}

// ---------------------------------------------------------------------------
// Matrix exponential
//
// Diagonal Pade approximant of fixed order 13 with scaling and squaring.
// The order is never adapted; only the scaling exponent depends on ||A||_1.

namespace {

constexpr double kPadeTheta13 = 5.371920351148152;

const std::array<double, 14> kPadeCoeffs = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

Eigen::MatrixXcd pade13(const Eigen::MatrixXcd& a) {
  const auto n = a.rows();
  const Eigen::MatrixXcd ident = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd a2 = a * a;
  const Eigen::MatrixXcd a4 = a2 * a2;
  const Eigen::MatrixXcd a6 = a2 * a4;
  const auto& b = kPadeCoeffs;

  Eigen::MatrixXcd u =
      a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 +
           b[1] * ident);
  Eigen::MatrixXcd v =
      a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 +
      b[0] * ident;
  return (v - u).partialPivLu().solve(v + u);
}

}  // namespace

LinearMap matrix_exponential(const LinearMap& a) {
  const double norm1 = a.one_norm();
  if (norm1 == 0.0) return LinearMap::identity(a.dim(), a.field());

  int squarings = 0;
  Eigen::MatrixXcd scaled = a.matrix();
  if (norm1 > kPadeTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / kPadeTheta13)));
    scaled /= std::pow(2.0, squarings);
  }

  Eigen::MatrixXcd result = pade13(scaled);
  for (int i = 0; i < squarings; ++i) result = result * result;

  if (!all_finite(result)) {
    throw OverflowError("matrix_exponential: result overflowed (||A||_1 = " +
                        std::to_string(norm1) + ")");
  }
  return LinearMap(std::move(result), a.field());
}

// ---------------------------------------------------------------------------
// Resolvent step

LinearMap resolvent_step(const LinearMap& a, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw InputError("resolvent_step: h must be positive");
  const auto n = a.dim();
  Eigen::MatrixXcd lhs = Eigen::MatrixXcd::Identity(n, n) - h * a.matrix();
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(lhs);
  if (!lu.isInvertible()) {
    throw SingularityError("resolvent_step: I - hA is singular at h = " + std::to_string(h), h);
  }
  Eigen::MatrixXcd inv = lu.solve(Eigen::MatrixXcd::Identity(n, n));
  if (!all_finite(inv)) {
    throw SingularityError("resolvent_step: I - hA is numerically singular at h = " +
                           std::to_string(h), h);
  }
  return LinearMap(std::move(inv), a.field());
}

// ---------------------------------------------------------------------------
// Operator norm
//
// Power iteration on the Hermitian Gram operator A^H A. The start vector is
// derived from a fixed seed so results are reproducible; on stagnation the
// iteration restarts from the next deterministic seed.

namespace {

// Small deterministic generator (splitmix64) so the start vector does not
// depend on the standard library's distribution implementation.
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
  // Uniform in [-1, 1).
  double uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-52 - 1.0;
  }
};

Eigen::VectorXcd seeded_unit_vector(Eigen::Index dim, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = Complex(rng.uniform(), rng.uniform());
  const double n = v.norm();
  if (n == 0.0) {
    v.setZero();
    v(0) = 1.0;
    return v;
  }
  return v / n;
}

}  // namespace

double operator_norm(const LinearMap& a, double tol) {
  if (!(tol > 0.0)) throw InputError("operator_norm: tol must be positive");
  constexpr int kMaxIterations = 10000;
  constexpr int kMaxRestarts = 3;
  constexpr std::uint64_t kBaseSeed = 0x5eedull;

  const Eigen::MatrixXcd gram = a.matrix().adjoint() * a.matrix();
  const double gram_scale = gram.cwiseAbs().maxCoeff();
  if (gram_scale == 0.0) return 0.0;

  for (int restart = 0; restart < kMaxRestarts; ++restart) {
    Eigen::VectorXcd v = seeded_unit_vector(a.dim(), kBaseSeed + static_cast<std::uint64_t>(restart));
    double lambda = 0.0;
    for (int it = 0; it < kMaxIterations; ++it) {
      Eigen::VectorXcd w = gram * v;
      const double wnorm = w.norm();
      if (wnorm == 0.0) break;  // v landed in the kernel; restart elsewhere
      lambda = std::real(v.dot(w));
      const double residual = (w - lambda * v).norm();
      if (residual <= tol * std::max(lambda, gram_scale * 1e-300)) {
        return std::sqrt(std::max(lambda, 0.0));
      }
      v = w / wnorm;
    }
  }
  throw ConvergenceError("operator_norm: power iteration did not converge");
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

void write_complex(std::ostream& out, Complex z) {
  out.precision(17);
  out << z.real();
  if (z.imag() >= 0.0 || std::isnan(z.imag())) out << '+';
  out << z.imag() << 'i';
}

Complex parse_complex(const std::string& token) {
  if (token.empty() || token.back() != 'i') {
    throw FormatError("read_matrix: expected complex entry 're+imi', got '" + token + "'");
  }
  const std::string body = token.substr(0, token.size() - 1);
  // Split at the sign that separates real and imaginary parts: the last
  // '+'/'-' not preceded by an exponent marker and not at position 0.
  size_t split = std::string::npos;
  for (size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) {
    throw FormatError("read_matrix: malformed complex entry '" + token + "'");
  }
  try {
    const double re = std::stod(body.substr(0, split));
    const double im = std::stod(body.substr(split));
    return Complex(re, im);
  } catch (const std::exception&) {
    throw FormatError("read_matrix: malformed complex entry '" + token + "'");
  }
}

}  // namespace

void write_matrix(std::ostream& out, const LinearMap& a) {
  out << "dim " << a.dim() << " field " << (a.field() == Field::Real ? 'R' : 'C') << '\n';
  out.precision(17);
  for (Eigen::Index i = 0; i < a.dim(); ++i) {
    for (Eigen::Index j = 0; j < a.dim(); ++j) {
      if (j > 0) out << ' ';
      if (a.field() == Field::Real) {
        out << a(i, j).real();
      } else {
        write_complex(out, a(i, j));
      }
    }
    out << '\n';
  }
}

LinearMap read_matrix(std::istream& in) {
  std::string kw_dim, kw_field, field_tag;
  Eigen::Index dim = 0;
  if (!(in >> kw_dim >> dim >> kw_field >> field_tag) || kw_dim != "dim" || kw_field != "field") {
    throw FormatError("read_matrix: bad header, expected 'dim k field R|C'");
  }
  if (dim <= 0) throw FormatError("read_matrix: dimension must be positive");
  Field field;
  if (field_tag == "R") {
    field = Field::Real;
  } else if (field_tag == "C") {
    field = Field::Complex;
  } else {
    throw FormatError("read_matrix: unknown field tag '" + field_tag + "'");
  }

  Eigen::MatrixXcd m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      if (field == Field::Real) {
        double x = 0.0;
        if (!(in >> x)) throw FormatError("read_matrix: truncated real entry list");
        m(i, j) = x;
      } else {
        std::string token;
        if (!(in >> token)) throw FormatError("read_matrix: truncated complex entry list");
        m(i, j) = parse_complex(token);
      }
    }
  }
  return LinearMap(std::move(m), field);
}

}  // namespace semigroup_lab
