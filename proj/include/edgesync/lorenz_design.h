#pragma once

#include "edgesync/models.h"
#include "edgesync/riccati.h"

namespace edgesync {

/// Reproducible stand-in for a learned Lorenz feedback: the drift is
/// linearized at the origin, g is frozen at g(0) = (1, 2, 0)ᵀ, and the Riccati
/// design on that pair gives α(x) = Bᵀ P x. The certificate is marked
/// approximate because it only certifies the linearization.
struct LorenzFeedbackDesign {
  LinearDesign design;
  Feedback alpha;
};

LorenzFeedbackDesign DesignLorenzFeedback(const LorenzParameters& params,
                                          double rho, double mu);

/// Convenience wrapper returning only α.
Feedback DefaultLorenzAlpha(const LorenzParameters& params, double rho,
                            double mu);

}  // namespace edgesync
