#include "semigroup_lab/chernoff.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace semigroup_lab {

namespace {

void require_split_dims(const LinearMap& c, const LinearMap& d) {
  if (c.dim() != d.dim()) {
    throw DimensionError("ChernoffFamily: split constituents must share a dimension");
  }
}

}  // namespace

ChernoffFamily::ChernoffFamily(FamilyRecipe recipe, GeneratorSpec generator, std::string name,
                               bool extension)
    : recipe_(std::move(recipe)),
      generator_(std::move(generator)),
      name_(std::move(name)),
      extension_(extension) {}

ChernoffFamily ChernoffFamily::exact_semigroup(LinearMap a) {
  GeneratorSpec gen{a, "exact_semigroup generator"};
  return ChernoffFamily(ExactSemigroupRecipe{std::move(a)}, std::move(gen), "exact_semigroup");
}

ChernoffFamily ChernoffFamily::implicit_euler(LinearMap a) {
  GeneratorSpec gen{a, "implicit_euler generator"};
  return ChernoffFamily(ImplicitEulerRecipe{std::move(a)}, std::move(gen), "implicit_euler");
}

ChernoffFamily ChernoffFamily::lie_trotter(LinearMap c, LinearMap d) {
  require_split_dims(c, d);
  GeneratorSpec gen{c + d, "lie_trotter generator C+D"};
  return ChernoffFamily(LieTrotterRecipe{std::move(c), std::move(d)}, std::move(gen),
                        "lie_trotter");
}

ChernoffFamily ChernoffFamily::strang(LinearMap c, LinearMap d) {
  require_split_dims(c, d);
  GeneratorSpec gen{c + d, "strang generator C+D"};
  return ChernoffFamily(StrangRecipe{std::move(c), std::move(d)}, std::move(gen), "strang",
                        /*extension=*/true);
}

ChernoffFamily ChernoffFamily::custom(std::function<LinearMap(double)> evaluate,
                                      GeneratorSpec generator, std::string name) {
  return ChernoffFamily(CustomRecipe{std::move(evaluate)}, std::move(generator),
                        std::move(name));
}

LinearMap ChernoffFamily::evaluate(double t) const {
  if (t < 0.0 || !std::isfinite(t)) throw InputError("ChernoffFamily: t must be nonnegative");
  if (t == 0.0) {
    // Def.-level contract: F(0) is the identity, bit-exact, for every recipe.
    return LinearMap::identity(dim(), generator_.map.field());
  }
  return std::visit(
      [t](const auto& recipe) -> LinearMap {
        using R = std::decay_t<decltype(recipe)>;
        if constexpr (std::is_same_v<R, ExactSemigroupRecipe>) {
          return matrix_exponential(t * recipe.generator);
        } else if constexpr (std::is_same_v<R, ImplicitEulerRecipe>) {
          return resolvent_step(recipe.generator, t);
        } else if constexpr (std::is_same_v<R, LieTrotterRecipe>) {
          return matrix_exponential(t * recipe.c) * matrix_exponential(t * recipe.d);
        } else if constexpr (std::is_same_v<R, StrangRecipe>) {
          const LinearMap half = matrix_exponential((0.5 * t) * recipe.c);
          return half * matrix_exponential(t * recipe.d) * half;
        } else {
          return recipe.evaluate(t);
        }
      },
      recipe_);
}

ChernoffFamily adjoint_family(const ChernoffFamily& f) {
  GeneratorSpec adj_gen{adjoint_map(f.generator().map), f.generator().label + "*"};
  const std::string name = f.name() + "*";
  return std::visit(
      [&](const auto& recipe) -> ChernoffFamily {
        using R = std::decay_t<decltype(recipe)>;
        if constexpr (std::is_same_v<R, ExactSemigroupRecipe>) {
          return ChernoffFamily(ExactSemigroupRecipe{adjoint_map(recipe.generator)},
                                std::move(adj_gen), name, f.is_extension());
        } else if constexpr (std::is_same_v<R, ImplicitEulerRecipe>) {
          return ChernoffFamily(ImplicitEulerRecipe{adjoint_map(recipe.generator)},
                                std::move(adj_gen), name, f.is_extension());
        } else if constexpr (std::is_same_v<R, LieTrotterRecipe>) {
          // (exp(tC) exp(tD))^* = exp(tD^*) exp(tC^*): order reverses.
          return ChernoffFamily(LieTrotterRecipe{adjoint_map(recipe.d), adjoint_map(recipe.c)},
                                std::move(adj_gen), name, f.is_extension());
        } else if constexpr (std::is_same_v<R, StrangRecipe>) {
          // Symmetric product: order is preserved under transposition.
          return ChernoffFamily(StrangRecipe{adjoint_map(recipe.c), adjoint_map(recipe.d)},
                                std::move(adj_gen), name, f.is_extension());
        } else {
          auto base = recipe.evaluate;
          return ChernoffFamily(
              CustomRecipe{[base](double t) { return adjoint_map(base(t)); }},
              std::move(adj_gen), name, f.is_extension());
        }
      },
      f.recipe());
}

DerivativeAtZero derivative_at_zero(const ChernoffFamily& f, const VectorState& x, double h0,
                                    int levels) {
  if (!(h0 > 0.0)) throw InputError("derivative_at_zero: h0 must be positive");
  if (levels < 2) throw InputError("derivative_at_zero: need at least 2 levels");
  if (f.dim() != x.dim()) throw DimensionError("derivative_at_zero: dimension mismatch");

  // Difference quotients on the geometric sequence h_j = h0 / 2^j.
  std::vector<VectorState> quotients;
  quotients.reserve(static_cast<size_t>(levels));
  double h = h0;
  for (int j = 0; j < levels; ++j, h *= 0.5) {
    quotients.push_back((1.0 / h) * (apply(f.evaluate(h), x) - x));
  }

  // Residuals between consecutive quotients; their decay rate gives the
  // observed order 2^{-p} per halving.
  const double scale = std::max(1.0, x.norm());
  std::vector<double> residuals;
  for (int j = 0; j + 1 < levels; ++j) {
    residuals.push_back(distance(quotients[static_cast<size_t>(j) + 1],
                                 quotients[static_cast<size_t>(j)]));
  }

  const double floor_tol = 1e-13 * scale;
  const double last = residuals.back();
  if (last <= floor_tol) {
    // Quotients already agree to roundoff: the last one is the limit.
    return DerivativeAtZero{quotients.back(), last, std::numeric_limits<double>::infinity()};
  }

  // Residual growth along the tail signals a non-differentiable family.
  if (residuals.size() >= 2 && residuals[residuals.size() - 1] > residuals[residuals.size() - 2] &&
      residuals[residuals.size() - 2] > floor_tol) {
    throw ExtrapolationError("derivative_at_zero: difference-quotient residuals non-decreasing");
  }

  // Observed order from the last usable residual pair.
  double order = 1.0;
  const size_t r = residuals.size();
  if (r >= 2 && residuals[r - 2] > floor_tol && residuals[r - 1] > 0.0) {
    order = std::log2(residuals[r - 2] / residuals[r - 1]);
  }

  // One Richardson step at the observed order.
  const double factor = std::pow(2.0, order) - 1.0;
  VectorState correction = (1.0 / factor) * (quotients[quotients.size() - 1] -
                                             quotients[quotients.size() - 2]);
  VectorState value = quotients.back() + correction;
  return DerivativeAtZero{std::move(value), correction.norm(), order};
}

}  // namespace semigroup_lab
