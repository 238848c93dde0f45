#include "edgesync/models.h"

#include <cmath>
#include <sstream>

#include "edgesync/error.h"

namespace edgesync {
namespace {

void CheckLinearShapes(const char* who, const Matrix& a, const Matrix& b,
                       const Matrix& k) {
  std::ostringstream os;
  if (!a.square() || a.rows() == 0) {
    os << who << ": A must be square and non-empty";
  } else if (b.rows() != a.rows() || b.cols() != 1) {
    os << who << ": B must be " << a.rows() << "x1 (single input), got "
       << b.rows() << "x" << b.cols();
  } else if (k.rows() != 1 || k.cols() != a.rows()) {
    os << who << ": K must be 1x" << a.rows() << ", got " << k.rows() << "x"
       << k.cols();
  } else {
    return;
  }
  throw Error(ErrorCode::kDimensionMismatch, os.str());
}

}  // namespace

Feedback LinearFeedback(const Matrix& gain) {
  if (gain.rows() != 1) {
    throw Error(ErrorCode::kDimensionMismatch,
                "LinearFeedback: gain must have exactly one row");
  }
  return [row = Vector(gain.row(0).begin(), gain.row(0).end())](
             std::span<const double> x) { return Dot(row, x); };
}

AgentModel LinearModel(const Matrix& a, const Matrix& b, const Matrix& k) {
  CheckLinearShapes("LinearModel", a, b, k);
  const std::size_t n = a.rows();
  AgentModel m;
  m.name = "linear";
  m.state_dim = n;
  m.drift = [a](std::span<const double> x) { return a * x; };
  m.input = [g = b.col(0)](std::span<const double>) { return g; };
  m.drift_jacobian = [a](std::span<const double>) { return a; };
  m.input_jacobian = [n](std::span<const double>) { return Matrix(n, n); };
  m.alpha = LinearFeedback(k);
  return m;
}

AgentModel TanhPerturbedModel(const Matrix& a, const Matrix& b, double gamma,
                              const Matrix& k) {
  CheckLinearShapes("TanhPerturbedModel", a, b, k);
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorCode::kInvalidArgument,
                "TanhPerturbedModel: gamma must be finite and >= 0");
  }
  const std::size_t n = a.rows();
  AgentModel m;
  m.name = "tanh";
  m.state_dim = n;
  m.drift = [a, gamma](std::span<const double> x) {
    Vector y = a * x;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += gamma * std::tanh(x[i]);
    return y;
  };
  m.input = [g = b.col(0)](std::span<const double>) { return g; };
  m.drift_jacobian = [a, gamma](std::span<const double> x) {
    Matrix j = a;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double sech = 1.0 / std::cosh(x[i]);
      j(i, i) += gamma * sech * sech;
    }
    return j;
  };
  m.input_jacobian = [n](std::span<const double>) { return Matrix(n, n); };
  m.alpha = LinearFeedback(k);
  m.parameters["gamma"] = gamma;
  return m;
}

AgentModel LorenzModel(const LorenzParameters& p, Feedback alpha) {
  if (!alpha) {
    throw Error(ErrorCode::kInvalidArgument,
                "LorenzModel: a feedback evaluator is required");
  }
  AgentModel m;
  m.name = "lorenz";
  m.state_dim = 3;
  m.drift = [p](std::span<const double> x) {
    return Vector{p.a * (x[1] - x[0]), x[0] * (p.b - x[2]) - x[1],
                  x[0] * x[1] - p.c * x[2]};
  };
  m.input = [](std::span<const double> x) {
    return Vector{1.0, 2.0 + std::sin(x[0]), 0.0};
  };
  m.drift_jacobian = [p](std::span<const double> x) {
    return Matrix{{-p.a, p.a, 0.0},
                  {p.b - x[2], -1.0, -x[0]},
                  {x[1], x[0], -p.c}};
  };
  m.input_jacobian = [](std::span<const double> x) {
    Matrix j(3, 3);
    j(1, 0) = std::cos(x[0]);
    return j;
  };
  m.alpha = std::move(alpha);
  m.parameters = {{"a", p.a}, {"b", p.b}, {"c", p.c}};
  return m;
}

}  // namespace edgesync
