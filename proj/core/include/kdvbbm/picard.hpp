#pragma once

#include <vector>

#include "kdvbbm/dynamics.hpp"

namespace kdvbbm {

/// c_s / (|eta0|_{H^s} (1 + |eta0|_{H^s})), the local existence scale.
double local_existence_time(const Spectrum& eta0, SobolevIndex s, double c_s);

struct PicardOptions {
  double horizon = 0.1;     // T
  int mesh = 16;            // initial number of time intervals on [0, T]
  double tol = 1e-10;       // sup-over-mesh H^1 stopping tolerance
  int max_iter = 50;
  /// Double the mesh until the sup-H^1 change between meshes is < tol/10.
  bool refine = true;
  int max_refinements = 12;
  Dealias dealias = Dealias::pad_double;
  /// When > 0, require T <= local_existence_time(eta0, 1, constant).
  double existence_constant = 0.0;
};

struct PicardResult {
  /// Snapshots at every mesh time t_i = i T / mesh.
  TrajectoryLedger ledger;
  /// sup_i |eta^{j+1}(t_i) - eta^j(t_i)|_{H^1} for each iteration j.
  std::vector<double> defects;
  int iterations = 0;
  int mesh = 0;
  /// sup-H^1 change from the previous mesh (0 when refinement is off).
  double mesh_change = 0.0;

  /// Ratios of consecutive defects, the empirical contraction factors.
  std::vector<double> contraction_factors() const;
};

/// Fixed-point iteration of the Duhamel map
///   eta(t) = S(t) eta0 - i int_0^t S(t - t') F(eta(t')) dt'
/// written for w(t) = S(-t) eta(t), with the integral evaluated by the
/// cumulative trapezoid rule on a uniform mesh. Throws ContractionFailure
/// when max_iter iterations do not bring the defect below tol, and
/// AccuracyError when mesh refinement does not settle.
PicardResult picard_solve(const Spectrum& eta0, const PicardOptions& options,
                          const ModelParams& params, NonlinearTerms terms = {});
PicardResult picard_solve(const Field& eta0, double horizon, int mesh, double tol,
                          int max_iter, const ModelParams& params);

}  // namespace kdvbbm
