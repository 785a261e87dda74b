#pragma once

#include <functional>
#include <string>
#include <variant>

#include "semigroup_lab/numcore.hpp"

namespace semigroup_lab {

/// Candidate generator Z attached to a family: the operator the family's
/// derivative at zero is expected to match on the whole space.
struct GeneratorSpec {
  LinearMap map;
  std::string label;
};

/// Recipes for building a family t -> LinearMap.
struct ExactSemigroupRecipe {
  LinearMap generator;
};
struct ImplicitEulerRecipe {
  LinearMap generator;
};
struct LieTrotterRecipe {
  LinearMap c, d;
};
struct StrangRecipe {
  LinearMap c, d;
};
struct CustomRecipe {
  std::function<LinearMap(double)> evaluate;
};

using FamilyRecipe =
    std::variant<ExactSemigroupRecipe, ImplicitEulerRecipe, LieTrotterRecipe, StrangRecipe,
                 CustomRecipe>;

/// A family F: [0, infinity) -> L(X) with F(0) = I and a declared candidate
/// generator. Immutable; evaluations at distinct t are independent.
class ChernoffFamily {
 public:
  ChernoffFamily(FamilyRecipe recipe, GeneratorSpec generator, std::string name,
                 bool extension = false);

  /// F(t) = exp(tA); generator A.
  static ChernoffFamily exact_semigroup(LinearMap a);
  /// F(t) = (I - tA)^{-1}; generator A.
  static ChernoffFamily implicit_euler(LinearMap a);
  /// F(t) = exp(tC) exp(tD); generator C + D.
  static ChernoffFamily lie_trotter(LinearMap c, LinearMap d);
  /// F(t) = exp(tC/2) exp(tD) exp(tC/2); generator C + D. Not part of the
  /// core family set; flagged as an extension in reports.
  static ChernoffFamily strang(LinearMap c, LinearMap d);
  /// Arbitrary evaluator with an explicitly declared generator. The library
  /// never infers generators from evaluators.
  static ChernoffFamily custom(std::function<LinearMap(double)> evaluate,
                               GeneratorSpec generator, std::string name = "custom");

  /// F(t). Every recipe returns the bit-exact identity at t = 0.
  LinearMap evaluate(double t) const;

  const GeneratorSpec& generator() const { return generator_; }
  const FamilyRecipe& recipe() const { return recipe_; }
  Eigen::Index dim() const { return generator_.map.dim(); }
  const std::string& name() const { return name_; }
  bool is_extension() const { return extension_; }

 private:
  FamilyRecipe recipe_;
  GeneratorSpec generator_;
  std::string name_;
  bool extension_;
};

/// The family t -> F(t)^* together with the adjoint generator, per the
/// pairing identity (F(t) x, phi) = (x, F^*(t) phi). Structure is preserved:
/// the adjoint of a split recipe is again a split recipe with transposed
/// constituents (and reversed order for Lie-Trotter).
ChernoffFamily adjoint_family(const ChernoffFamily& f);

/// Result of the derivative-at-zero extrapolation.
struct DerivativeAtZero {
  VectorState value;
  double error_estimate;
  double observed_order;
};

/// Extrapolated limit of (F(h)f - f)/h over h = h0 / 2^j, j = 0..levels-1,
/// by Richardson extrapolation with an observed order estimated from the
/// quotient residuals. Throws ExtrapolationError when the residuals grow
/// instead of shrinking (the family is not differentiable at 0 along f).
DerivativeAtZero derivative_at_zero(const ChernoffFamily& f, const VectorState& x,
                                    double h0 = 1e-2, int levels = 5);

}  // namespace semigroup_lab
