#include "kdvbbm/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kdvbbm/errors.hpp"

namespace kdvbbm {

std::string to_string(Dealias d) {
  switch (d) {
    case Dealias::none: return "none";
    case Dealias::two_thirds: return "two_thirds";
    case Dealias::pad_double: return "pad_double";
  }
  return "unknown";
}

Dealias dealias_from_string(const std::string& name) {
  if (name == "none") return Dealias::none;
  if (name == "two_thirds") return Dealias::two_thirds;
  if (name == "pad_double") return Dealias::pad_double;
  throw InvalidParameter("unknown dealias mode '" + name + "'");
}

Spectrum without_nyquist(Spectrum s) {
  s.coeffs[s.grid.size() / 2] = 0.0;
  return s;
}

// ---------------------------------------------------------------------------

NonlinearOperator::NonlinearOperator(const PeriodicGrid& grid,
                                     const ModelParams& params, Dealias dealias,
                                     NonlinearTerms terms)
    : grid_(grid),
      product_grid_(dealias == Dealias::pad_double ? grid.resized(2 * grid.size())
                                                    : grid),
      params_(params),
      dealias_(dealias),
      terms_(terms),
      cutoff_(dealias == Dealias::two_thirds
                  ? static_cast<long>(grid.size()) / 3
                  : static_cast<long>(grid.size()) / 2 - 1),
      tau_(grid.size()),
      psi_(grid.size()) {
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double xi = grid.frequency(k);
    tau_[k] = symbol_tau(params, xi);
    psi_[k] = symbol_psi(params, xi);
  }
}

NonlinearOperator::Physical NonlinearOperator::to_physical(const Spectrum& s) const {
  require_same_grid(grid_, s.grid);
  Spectrum padded(product_grid_);
  Spectrum padded_x(product_grid_);
  for (long k = -cutoff_; k <= cutoff_; ++k) {
    const complex c = s.coeffs[grid_.index_of(k)];
    const std::size_t j = product_grid_.index_of(k);
    padded.coeffs[j] = c;
    padded_x.coeffs[j] = complex(0.0, grid_.frequency_spacing() * k) * c;
  }
  Physical out;
  out.value = inverse(padded).samples;
  out.slope = inverse(padded_x).samples;
  return out;
}

Spectrum NonlinearOperator::to_grid(const std::vector<double>& product) const {
  const Spectrum full = transform(Field(product_grid_, product));
  Spectrum out(grid_);
  for (long k = -cutoff_; k <= cutoff_; ++k) {
    out.coeffs[grid_.index_of(k)] = full.coeffs[product_grid_.index_of(k)];
  }
  return out;
}

Spectrum NonlinearOperator::assemble(const std::vector<double>& quadratic,
                                     const std::vector<double>& psi_part) const {
  Spectrum out(grid_);
  if (terms_.quadratic) {
    const Spectrum q = to_grid(quadratic);
    for (std::size_t k = 0; k < grid_.size(); ++k) out.coeffs[k] += tau_[k] * q.coeffs[k];
  }
  if (terms_.cubic || terms_.gradient_square) {
    const Spectrum r = to_grid(psi_part);
    for (std::size_t k = 0; k < grid_.size(); ++k) out.coeffs[k] += psi_[k] * r.coeffs[k];
  }
  return out;
}

Spectrum NonlinearOperator::F(const Spectrum& u) const {
  if (!terms_.any()) {
    require_same_grid(grid_, u.grid);
    return Spectrum(grid_);
  }
  const Physical p = to_physical(u);
  const std::size_t m = p.value.size();
  std::vector<double> quadratic(m), psi_part(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double a = p.value[j];
    const double ax = p.slope[j];
    quadratic[j] = a * a;
    double r = 0.0;
    if (terms_.cubic) r -= a * a * a / 8.0;
    if (terms_.gradient_square) r -= 7.0 / 48.0 * ax * ax;
    psi_part[j] = r;
  }
  return assemble(quadratic, psi_part);
}

Spectrum NonlinearOperator::G(const Spectrum& u, const Spectrum& v) const {
  require_same_grid(u.grid, v.grid);
  if (!terms_.any()) {
    require_same_grid(grid_, u.grid);
    return Spectrum(grid_);
  }
  const Physical pu = to_physical(u);
  const Physical pv = to_physical(v);
  const std::size_t m = pu.value.size();
  std::vector<double> quadratic(m), psi_part(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double a = pu.value[j];
    const double ax = pu.slope[j];
    const double b = pv.value[j];
    const double bx = pv.slope[j];
    quadratic[j] = b * b + 2.0 * a * b;
    double r = 0.0;
    if (terms_.cubic) r -= (3.0 * a * a * b + 3.0 * a * b * b + b * b * b) / 8.0;
    if (terms_.gradient_square) r -= 7.0 / 48.0 * (2.0 * ax * bx + bx * bx);
    psi_part[j] = r;
  }
  return assemble(quadratic, psi_part);
}

Spectrum nonlinearity_F(const Field& u, const ModelParams& params,
                        Dealias dealias, NonlinearTerms terms) {
  return NonlinearOperator(u.grid, params, dealias, terms).F(transform(u));
}

Spectrum difference_nonlinearity_G(const Field& u, const Field& v,
                                   const ModelParams& params, Dealias dealias,
                                   NonlinearTerms terms) {
  require_same_grid(u.grid, v.grid);
  return NonlinearOperator(u.grid, params, dealias, terms)
      .G(transform(u), transform(v));
}

// ---------------------------------------------------------------------------

Spectrum semigroup(const Spectrum& spectrum, double t, const ModelParams& params) {
  return apply_multiplier(spectrum, [&](double xi) {
    return std::polar(1.0, -symbol_phi(params, xi) * t);
  });
}

Field semigroup(const Field& field, double t, const ModelParams& params) {
  return inverse(semigroup(transform(field), t, params));
}

IntegratingFactorRK4::IntegratingFactorRK4(const PeriodicGrid& grid,
                                           const ModelParams& params, double dt)
    : grid_(grid), dt_(dt), half_(grid.size()), full_(grid.size()) {
  if (!(std::isfinite(dt) && dt > 0.0)) {
    throw InvalidParameter("time step must be positive");
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double phi = symbol_phi(params, grid.frequency(k));
    half_[k] = std::polar(1.0, -0.5 * phi * dt);
    full_[k] = std::polar(1.0, -phi * dt);
  }
}

IntegratingFactorRK4::State IntegratingFactorRK4::step(const State& state,
                                                       const Rhs& rhs,
                                                       std::size_t step_index,
                                                       double time) const {
  const std::size_t parts = state.size();
  const std::size_t n = grid_.size();
  const complex minus_i(0.0, -1.0);
  const double h = dt_;

  // k_j hold -i N(stage j).
  auto slopes = [&](const State& stage) {
    State k = rhs(stage);
    if (k.size() != parts) throw ShapeError("right side returned wrong state size");
    for (auto& s : k) {
      require_same_grid(grid_, s.grid);
      for (auto& c : s.coeffs) c *= minus_i;
    }
    return k;
  };

  const State k1 = slopes(state);
  State stage = state;
  for (std::size_t p = 0; p < parts; ++p) {
    require_same_grid(grid_, state[p].grid);
    for (std::size_t k = 0; k < n; ++k) {
      stage[p].coeffs[k] = half_[k] * (state[p].coeffs[k] + 0.5 * h * k1[p].coeffs[k]);
    }
  }
  const State k2 = slopes(stage);
  for (std::size_t p = 0; p < parts; ++p) {
    for (std::size_t k = 0; k < n; ++k) {
      stage[p].coeffs[k] = half_[k] * state[p].coeffs[k] + 0.5 * h * k2[p].coeffs[k];
    }
  }
  const State k3 = slopes(stage);
  for (std::size_t p = 0; p < parts; ++p) {
    for (std::size_t k = 0; k < n; ++k) {
      stage[p].coeffs[k] =
          full_[k] * state[p].coeffs[k] + h * half_[k] * k3[p].coeffs[k];
    }
  }
  const State k4 = slopes(stage);

  State next = state;
  for (std::size_t p = 0; p < parts; ++p) {
    for (std::size_t k = 0; k < n; ++k) {
      next[p].coeffs[k] =
          full_[k] * state[p].coeffs[k] +
          h / 6.0 *
              (full_[k] * k1[p].coeffs[k] +
               2.0 * half_[k] * (k2[p].coeffs[k] + k3[p].coeffs[k]) +
               k4[p].coeffs[k]);
    }
    if (!all_finite(next[p])) throw DivergenceError(step_index, time + h, p);
  }
  return next;
}

Spectrum IntegratingFactorRK4::step(
    const Spectrum& state, const std::function<Spectrum(const Spectrum&)>& rhs,
    std::size_t step_index, double time) const {
  State single{state};
  State out = step(
      single,
      [&rhs](const State& s) { return State{rhs(s.front())}; }, step_index,
      time);
  return std::move(out.front());
}

Spectrum step_ifrk4(const Spectrum& state, double dt, const ModelParams& params,
                    const std::function<Spectrum(const Spectrum&)>& rhs,
                    std::size_t step_index) {
  return IntegratingFactorRK4(state.grid, params, dt).step(state, rhs, step_index);
}

// ---------------------------------------------------------------------------

void EvolutionConfig::validate() const {
  if (!(std::isfinite(dt) && dt > 0.0)) throw InvalidParameter("dt must be > 0");
  if (!(std::isfinite(t_end) && t_end > 0.0)) {
    throw InvalidParameter("t_end must be > 0");
  }
  if (!(dt < t_end) && std::abs(dt - t_end) > 1e-12 * t_end) {
    throw InvalidParameter("dt must not exceed t_end");
  }
  if (record_every == 0) throw InvalidParameter("record_every must be >= 1");
  for (double s : extra_sobolev) {
    if (!std::isfinite(s)) throw InvalidParameter("Sobolev indices must be finite");
  }
}

std::size_t EvolutionConfig::steps() const {
  validate();
  const double ratio = t_end / dt;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
    std::ostringstream os;
    os << "t_end/dt = " << ratio << " is not an integer";
    throw InvalidParameter(os.str());
  }
  return static_cast<std::size_t>(rounded);
}

TrajectoryLedger::TrajectoryLedger(std::vector<double> sobolev_indices) {
  hs_norms[0.0];
  hs_norms[1.0];
  hs_norms[2.0];
  for (double s : sobolev_indices) hs_norms[s];
}

void TrajectoryLedger::record(double t, const Spectrum& state,
                              const ModelParams& params, bool keep_snapshot) {
  times.push_back(t);
  energy.push_back(kdvbbm::energy(state, params));
  for (auto& [s, values] : hs_norms) values.push_back(sobolev_norm(state, SobolevIndex(s)));
  if (keep_snapshot) snapshots.push_back(state);
}

double TrajectoryLedger::relative_energy_drift() const {
  if (energy.empty()) return 0.0;
  double worst = 0.0;
  for (double e : energy) worst = std::max(worst, std::abs(e - energy.front()));
  return energy.front() > 0.0 ? worst / energy.front() : worst;
}

TrajectoryLedger evolve(const Spectrum& eta0, const EvolutionConfig& cfg,
                        const ModelParams& params, NonlinearTerms terms) {
  const std::size_t steps = cfg.steps();
  const NonlinearOperator nonlinear(eta0.grid, params, cfg.dealias, terms);
  const IntegratingFactorRK4 stepper(eta0.grid, params, cfg.dt);
  const auto rhs = [&nonlinear](const Spectrum& s) { return nonlinear.F(s); };

  TrajectoryLedger ledger(cfg.extra_sobolev);
  Spectrum state = without_nyquist(eta0);
  ledger.record(0.0, state, params, cfg.store_snapshots);
  for (std::size_t step = 1; step <= steps; ++step) {
    const double t_prev = cfg.dt * static_cast<double>(step - 1);
    state = stepper.step(state, rhs, step, t_prev);
    if (step % cfg.record_every == 0 || step == steps) {
      ledger.record(cfg.dt * static_cast<double>(step), state, params,
                    cfg.store_snapshots);
    }
  }
  ledger.final_state = std::move(state);
  return ledger;
}

TrajectoryLedger evolve(const Field& eta0, const EvolutionConfig& cfg,
                        const ModelParams& params, NonlinearTerms terms) {
  return evolve(transform(eta0), cfg, params, terms);
}

}  // namespace kdvbbm
