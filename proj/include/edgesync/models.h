#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>

#include "edgesync/numerics.h"

namespace edgesync {

using StateMap = std::function<Vector(std::span<const double>)>;
using JacobianMap = std::function<Matrix(std::span<const double>)>;
/// Scalar feedback primitive α : ℝⁿ → ℝ.
using Feedback = std::function<double(std::span<const double>)>;

/// Single-input control-affine agent ẋ = f(x) + g(x)u with the feedback
/// primitive α used by the diffusive coupling. Immutable value type.
struct AgentModel {
  std::string name;
  std::size_t state_dim = 0;
  StateMap drift;              // f
  StateMap input;              // g
  JacobianMap drift_jacobian;  // ∂f/∂x
  JacobianMap input_jacobian;  // ∂g/∂x
  Feedback alpha;              // α
  std::map<std::string, double> parameters;
};

/// Linear feedback α(x) = K x for a 1 x n gain.
Feedback LinearFeedback(const Matrix& gain);

/// ẋ = A x + B u with α(x) = K x. B must be n x 1 and K must be 1 x n.
AgentModel LinearModel(const Matrix& a, const Matrix& b, const Matrix& k);

/// ẋ = A x + γ tanh(x) + B u, componentwise tanh; g = B is constant and
/// α(x) = K x, so the Killing and integrability conditions hold exactly.
AgentModel TanhPerturbedModel(const Matrix& a, const Matrix& b, double gamma,
                              const Matrix& k);

/// Lorenz-type agent with the control vector field g(x) = (1, 2 + sin x₁, 0):
///   ẋ₁ = a(x₂ − x₁) + u
///   ẋ₂ = x₁(b − x₃) − x₂ + (2 + sin x₁)u
///   ẋ₃ = x₁x₂ − c x₃
/// The defaults are a = 10, b = 8/3, c = 28. With b in
/// the x₁ factor and c damping x₃, the chaotic regime is b = 28, c = 8/3.
struct LorenzParameters {
  double a = 10.0;
  double b = 8.0 / 3.0;
  double c = 28.0;

  static LorenzParameters Published() { return {}; }
  static LorenzParameters Chaotic() { return {10.0, 28.0, 8.0 / 3.0}; }
};

AgentModel LorenzModel(const LorenzParameters& params, Feedback alpha);

}  // namespace edgesync
