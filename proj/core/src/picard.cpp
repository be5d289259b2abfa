#include "kdvbbm/picard.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kdvbbm/errors.hpp"

namespace kdvbbm {

double local_existence_time(const Spectrum& eta0, SobolevIndex s, double c_s) {
  const double norm = sobolev_norm(eta0, s);
  if (norm == 0.0) return std::numeric_limits<double>::infinity();
  return c_s / (norm * (1.0 + norm));
}

std::vector<double> PicardResult::contraction_factors() const {
  std::vector<double> out;
  for (std::size_t j = 1; j < defects.size(); ++j) {
    if (defects[j - 1] > 0.0) out.push_back(defects[j] / defects[j - 1]);
  }
  return out;
}

namespace {

struct MeshSolution {
  std::vector<Spectrum> states;
  std::vector<double> defects;
  int iterations = 0;
};

double sup_h1_difference(const std::vector<Spectrum>& a,
                         const std::vector<Spectrum>& b, std::size_t stride_b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst,
                     sobolev_norm(a[i] - b[i * stride_b], SobolevIndex(1.0)));
  }
  return worst;
}

MeshSolution solve_on_mesh(const Spectrum& eta0, double horizon, int mesh,
                           double tol, int max_iter, const ModelParams& params,
                           const NonlinearOperator& nonlinear) {
  const PeriodicGrid& grid = eta0.grid;
  const std::size_t n = grid.size();
  const std::size_t points = static_cast<std::size_t>(mesh) + 1;
  const double h = horizon / mesh;

  // Phase factors exp(-i phi t_i).
  std::vector<std::vector<complex>> phase(points, std::vector<complex>(n));
  for (std::size_t i = 0; i < points; ++i) {
    const double t = h * static_cast<double>(i);
    for (std::size_t k = 0; k < n; ++k) {
      phase[i][k] = std::polar(1.0, -symbol_phi(params, grid.frequency(k)) * t);
    }
  }

  const Spectrum data = without_nyquist(eta0);
  MeshSolution sol;
  sol.states.assign(points, data);
  for (std::size_t i = 0; i < points; ++i) {
    for (std::size_t k = 0; k < n; ++k) sol.states[i].coeffs[k] *= phase[i][k];
  }

  const complex minus_i(0.0, -1.0);
  std::vector<Spectrum> next(points, Spectrum(grid));
  std::vector<Spectrum> integrand(points, Spectrum(grid));
  for (int iter = 1; iter <= max_iter; ++iter) {
    // g_i = S(-t_i) F(eta_i)
    for (std::size_t i = 0; i < points; ++i) {
      integrand[i] = nonlinear.F(sol.states[i]);
      for (std::size_t k = 0; k < n; ++k) {
        integrand[i].coeffs[k] *= std::conj(phase[i][k]);
      }
    }
    std::vector<complex> running(n, complex(0.0));
    for (std::size_t i = 0; i < points; ++i) {
      if (i > 0) {
        for (std::size_t k = 0; k < n; ++k) {
          running[k] += 0.5 * h * (integrand[i - 1].coeffs[k] + integrand[i].coeffs[k]);
        }
      }
      for (std::size_t k = 0; k < n; ++k) {
        next[i].coeffs[k] = phase[i][k] * (data.coeffs[k] + minus_i * running[k]);
      }
    }
    const double defect = sup_h1_difference(next, sol.states, 1);
    sol.defects.push_back(defect);
    std::swap(sol.states, next);
    sol.iterations = iter;
    for (const auto& s : sol.states) {
      if (!all_finite(s)) throw ContractionFailure(iter, defect);
    }
    if (defect < tol) return sol;
  }
  throw ContractionFailure(max_iter, sol.defects.back());
}

}  // namespace

PicardResult picard_solve(const Spectrum& eta0, const PicardOptions& options,
                          const ModelParams& params, NonlinearTerms terms) {
  if (!(options.horizon > 0.0) || options.mesh < 1 || !(options.tol > 0.0) ||
      options.max_iter < 1) {
    throw InvalidParameter(
        "picard_solve needs T > 0, mesh >= 1, tol > 0 and max_iter >= 1");
  }
  if (options.existence_constant > 0.0) {
    const double limit =
        local_existence_time(eta0, SobolevIndex(1.0), options.existence_constant);
    if (options.horizon > limit) {
      std::ostringstream os;
      os << "T = " << options.horizon << " exceeds the local existence scale "
         << limit;
      throw InvalidParameter(os.str());
    }
  }
  const NonlinearOperator nonlinear(eta0.grid, params, options.dealias, terms);

  int mesh = options.mesh;
  MeshSolution current = solve_on_mesh(eta0, options.horizon, mesh, options.tol,
                                       options.max_iter, params, nonlinear);
  double change = 0.0;
  if (options.refine) {
    bool settled = false;
    for (int r = 0; r < options.max_refinements; ++r) {
      MeshSolution finer = solve_on_mesh(eta0, options.horizon, 2 * mesh,
                                         options.tol, options.max_iter, params,
                                         nonlinear);
      change = sup_h1_difference(current.states, finer.states, 2);
      mesh *= 2;
      current = std::move(finer);
      if (change < options.tol / 10.0) {
        settled = true;
        break;
      }
    }
    if (!settled) {
      std::ostringstream os;
      os << "Picard mesh refinement did not settle (last change " << change
         << " at mesh " << mesh << ")";
      throw AccuracyError(os.str());
    }
  }

  PicardResult result{TrajectoryLedger{}, current.defects, current.iterations,
                      mesh, change};
  const double h = options.horizon / mesh;
  for (std::size_t i = 0; i < current.states.size(); ++i) {
    result.ledger.record(h * static_cast<double>(i), current.states[i], params,
                         true);
  }
  result.ledger.final_state = current.states.back();
  return result;
}

PicardResult picard_solve(const Field& eta0, double horizon, int mesh, double tol,
                          int max_iter, const ModelParams& params) {
  PicardOptions options;
  options.horizon = horizon;
  options.mesh = mesh;
  options.tol = tol;
  options.max_iter = max_iter;
  return picard_solve(transform(eta0), options, params);
}

}  // namespace kdvbbm
