#include "edgesync/lorenz_design.h"

namespace edgesync {

LorenzFeedbackDesign DesignLorenzFeedback(const LorenzParameters& params,
                                          double rho, double mu) {
  // Placeholder α only used to evaluate f, g and their Jacobians at 0.
  const AgentModel open_loop =
      LorenzModel(params, [](std::span<const double>) { return 0.0; });
  const Vector origin(3, 0.0);
  const Matrix a = open_loop.drift_jacobian(origin);
  const Matrix b = Matrix::Column(open_loop.input(origin));

  LorenzFeedbackDesign out{SolveAri(a, b, rho, mu), {}};
  out.design.certificate.approximate = true;
  out.alpha = LinearFeedback(out.design.gain);
  return out;
}

Feedback DefaultLorenzAlpha(const LorenzParameters& params, double rho,
                            double mu) {
  return DesignLorenzFeedback(params, rho, mu).alpha;
}

}  // namespace edgesync
