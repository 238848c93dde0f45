#include "edgesync/upsilon.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "edgesync/error.h"

namespace edgesync {
namespace {

constexpr int kMuSearchExponent = 40;

Matrix KernelProjector(const Matrix& basis) {
  return basis * basis.transpose();
}

}  // namespace

double UpsilonMargin(const Matrix& weights, const Matrix& upsilon) {
  return MinSymEigenvalue(weights * upsilon);
}

Matrix BuildOmega(const GraphMatrices& m, const Matrix& upsilon) {
  const Matrix abs_et = m.incidence.transpose().abs();
  return 0.5 * (abs_et * m.laplacian - upsilon * abs_et);
}

UpsilonResult BuildUpsilon(const GraphMatrices& m) {
  const Matrix& e = m.incidence;
  const Matrix et = e.transpose();
  UpsilonResult out;
  out.kernel_basis = NullspaceSymPsd(et * e);
  out.kernel_dim = static_cast<int>(out.kernel_basis.cols());

  const double floor = 1e-10 * m.weights.max_abs();
  if (out.kernel_dim == 0) {
    out.upsilon = m.edge_laplacian;
    out.mu = 0.0;
    out.pd_margin = UpsilonMargin(m.weights, out.upsilon);
  } else {
    const Matrix projector = KernelProjector(out.kernel_basis);
    const double mu0 =
        SmallestNonzeroEigenvalue(SymEig(m.laplacian).eigenvalues);
    // ℓ > 0 implies a cycle, hence at least one nonzero Laplacian eigenvalue.
    const double base = mu0 > 0.0 ? mu0 : 1.0;

    std::vector<double> schedule{base};
    for (int j = 1; j <= kMuSearchExponent; ++j) {
      schedule.push_back(base * std::ldexp(1.0, -j));
      schedule.push_back(base * std::ldexp(1.0, j));
    }
    bool found = false;
    for (double mu : schedule) {
      Matrix candidate = m.edge_laplacian + mu * projector;
      const double margin = UpsilonMargin(m.weights, candidate);
      if (margin > floor) {
        out.upsilon = std::move(candidate);
        out.mu = mu;
        out.pd_margin = margin;
        found = true;
        break;
      }
    }
    if (!found) {
      std::ostringstream os;
      os << "BuildUpsilon: no mu in " << base << " * 2^[-" << kMuSearchExponent
         << ", " << kMuSearchExponent << "] makes W*Upsilon + Upsilon^T*W "
         << "positive definite";
      throw Error(ErrorCode::kMuSearchFailed, os.str());
    }
  }
  if (!(out.pd_margin > floor)) {
    // Only reachable for ℓ = 0, where L_e W-similarity guarantees positivity.
    throw Error(ErrorCode::kMuSearchFailed,
                "BuildUpsilon: edge Laplacian is not positive definite");
  }
  out.omega = BuildOmega(m, out.upsilon);
  out.residual = MaxAbsDiff(out.upsilon * et, et * m.laplacian);
  return out;
}

EndpointResiduals VerifyEndpointIdentities(const GraphMatrices& m,
                                           const UpsilonResult& u) {
  const Matrix ekt = m.initial.transpose();
  const Matrix elt = m.terminal.transpose();
  EndpointResiduals r;
  r.initial = MaxAbsDiff(ekt * m.laplacian, u.upsilon * ekt + u.omega);
  r.terminal = MaxAbsDiff(elt * m.laplacian, u.upsilon * elt + u.omega);
  return r;
}

}  // namespace edgesync
