#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kdvbbm/grid.hpp"
#include "kdvbbm/params.hpp"
#include "kdvbbm/spectral.hpp"

namespace kdvbbm {

/// Treatment of pointwise products on the grid.
///  - none: products on the n-point grid (aliased).
///  - two_thirds: inputs and outputs truncated to |k| < n/3 (exact for
///    quadratic terms only).
///  - pad_double: products on a 2n-point grid, then truncated back (exact for
///    every term up to cubic).
enum class Dealias { none, two_thirds, pad_double };

std::string to_string(Dealias d);
/// Throws InvalidParameter for an unknown name.
Dealias dealias_from_string(const std::string& name);

/// Switches for the three nonlinear terms; all enabled by default.
struct NonlinearTerms {
  bool quadratic = true;        // tau(D) u^2
  bool cubic = true;            // -1/8 psi(D) u^3
  bool gradient_square = true;  // -7/48 psi(D) (u_x)^2

  static NonlinearTerms all() { return {}; }
  static NonlinearTerms linear() { return {false, false, false}; }
  bool any() const { return quadratic || cubic || gradient_square; }
};

/// Spectral evaluation of the nonlinearity
///   F(u) = tau(D) u^2 - 1/8 psi(D) u^3 - 7/48 psi(D) (u_x)^2
/// and of the difference F(u + v) - F(u) in its expanded form. Products are
/// formed in physical space, derivatives and multipliers in spectral space.
/// Outputs never carry a Nyquist component.
class NonlinearOperator {
 public:
  NonlinearOperator(const PeriodicGrid& grid, const ModelParams& params,
                    Dealias dealias = Dealias::pad_double,
                    NonlinearTerms terms = {});

  Spectrum F(const Spectrum& u) const;

  /// tau(D)(v^2 + 2uv) - 1/8 psi(D)(3u^2 v + 3u v^2 + v^3)
  ///   - 7/48 psi(D)(2 u_x v_x + v_x^2)
  Spectrum G(const Spectrum& u, const Spectrum& v) const;

  const PeriodicGrid& grid() const noexcept { return grid_; }
  const ModelParams& params() const noexcept { return params_; }
  Dealias dealias() const noexcept { return dealias_; }
  NonlinearTerms terms() const noexcept { return terms_; }

 private:
  struct Physical {
    std::vector<double> value;
    std::vector<double> slope;
  };

  Physical to_physical(const Spectrum& s) const;
  Spectrum assemble(const std::vector<double>& quadratic,
                    const std::vector<double>& psi_part) const;
  Spectrum to_grid(const std::vector<double>& product) const;

  PeriodicGrid grid_;
  PeriodicGrid product_grid_;
  ModelParams params_;
  Dealias dealias_;
  NonlinearTerms terms_;
  long cutoff_;  // largest |k| kept in inputs and outputs
  std::vector<double> tau_;
  std::vector<double> psi_;
};

Spectrum nonlinearity_F(const Field& u, const ModelParams& params,
                        Dealias dealias = Dealias::pad_double,
                        NonlinearTerms terms = {});

/// Throws ShapeError when u and v live on different grids.
Spectrum difference_nonlinearity_G(const Field& u, const Field& v,
                                   const ModelParams& params,
                                   Dealias dealias = Dealias::pad_double,
                                   NonlinearTerms terms = {});

/// c_k <- exp(-i phi(xi_k) t) c_k.
Spectrum semigroup(const Spectrum& spectrum, double t, const ModelParams& params);
Field semigroup(const Field& field, double t, const ModelParams& params);

/// Integrating-factor (Lawson) RK4 for i eta_t = phi(D) eta + N(eta), i.e.
/// RK4 on w = exp(i phi t) eta. The linear part is propagated exactly.
///
/// The state is a list of spectra sharing the dispersion relation; the right
/// side maps all components at one stage to all nonlinear terms at that
/// stage, so coupled systems see each other's stage values.
class IntegratingFactorRK4 {
 public:
  using State = std::vector<Spectrum>;
  using Rhs = std::function<State(const State&)>;

  /// Throws InvalidParameter unless dt > 0.
  IntegratingFactorRK4(const PeriodicGrid& grid, const ModelParams& params,
                       double dt);

  double dt() const noexcept { return dt_; }

  /// Throws DivergenceError naming step_index if the result is not finite.
  State step(const State& state, const Rhs& rhs, std::size_t step_index = 0,
             double time = 0.0) const;
  Spectrum step(const Spectrum& state,
                const std::function<Spectrum(const Spectrum&)>& rhs,
                std::size_t step_index = 0, double time = 0.0) const;

 private:
  PeriodicGrid grid_;
  double dt_;
  std::vector<complex> half_;  // exp(-i phi dt/2)
  std::vector<complex> full_;  // exp(-i phi dt)
};

Spectrum step_ifrk4(const Spectrum& state, double dt, const ModelParams& params,
                    const std::function<Spectrum(const Spectrum&)>& rhs,
                    std::size_t step_index = 0);

struct EvolutionConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  Dealias dealias = Dealias::pad_double;
  std::size_t record_every = 1;
  /// H^s norms recorded besides s = 0, 1, 2.
  std::vector<double> extra_sobolev;
  bool store_snapshots = false;

  /// Throws InvalidParameter on dt <= 0, dt >= t_end or record_every == 0.
  void validate() const;
  /// Number of steps; throws InvalidParameter unless t_end/dt is an integer
  /// up to 1e-9 relative rounding.
  std::size_t steps() const;
};

/// Norms and energy sampled along a trajectory.
struct TrajectoryLedger {
  std::vector<double> times;
  std::vector<double> energy;
  std::map<double, std::vector<double>> hs_norms;
  std::vector<Spectrum> snapshots;
  std::optional<Spectrum> final_state;

  explicit TrajectoryLedger(std::vector<double> sobolev_indices = {});

  void record(double t, const Spectrum& state, const ModelParams& params,
              bool keep_snapshot);
  std::size_t size() const noexcept { return times.size(); }
  /// max_j |E_j - E_0| / E_0, or the absolute drift when E_0 == 0.
  double relative_energy_drift() const;
};

/// Time steps i eta_t = phi(D) eta + F(eta) with IF-RK4 from eta0, recording
/// norms and energy every cfg.record_every steps and at t_end. The Nyquist
/// coefficient of the initial data is dropped.
TrajectoryLedger evolve(const Spectrum& eta0, const EvolutionConfig& cfg,
                        const ModelParams& params, NonlinearTerms terms = {});
TrajectoryLedger evolve(const Field& eta0, const EvolutionConfig& cfg,
                        const ModelParams& params, NonlinearTerms terms = {});

/// Spectrum with its Nyquist coefficient removed.
Spectrum without_nyquist(Spectrum s);

}  // namespace kdvbbm
