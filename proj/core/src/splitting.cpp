#include "kdvbbm/splitting.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace kdvbbm {

SplitStepError::SplitStepError(const std::string& subsystem,
                               const std::string& what, SplitLedger partial)
    : Error(subsystem + "-subsystem: " + what),
      subsystem_(subsystem),
      partial_(std::move(partial)) {}

double SplitLedger::max_energy_increment() const {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& r : records) worst = std::max(worst, r.energy_increment);
  return worst;
}

double SplitLedger::max_h_h2() const {
  double worst = 0.0;
  for (const auto& r : records) worst = std::max(worst, r.h_h2);
  return worst;
}

double SplitLedger::sup_deviation(double horizon) const {
  double worst = 0.0;
  const double slack = 1e-9 * (1.0 + horizon);
  for (const auto& c : checkpoints) {
    if (c.time <= horizon + slack) worst = std::max(worst, c.deviation);
  }
  return worst;
}

std::pair<Spectrum, Spectrum> split_spectrum(const Spectrum& eta0, double cutoff) {
  if (!(cutoff > 0.0) || cutoff > eta0.grid.max_frequency()) {
    std::ostringstream os;
    os << "cutoff N = " << cutoff << " outside (0, " << eta0.grid.max_frequency()
       << "]";
    throw InvalidCutoff(os.str());
  }
  Spectrum low(eta0.grid);
  Spectrum high(eta0.grid);
  for (std::size_t k = 0; k < eta0.grid.size(); ++k) {
    if (std::abs(eta0.grid.frequency(k)) <= cutoff) {
      low.coeffs[k] = eta0.coeffs[k];
    } else {
      high.coeffs[k] = eta0.coeffs[k];
    }
  }
  return {std::move(low), std::move(high)};
}

std::pair<Field, Field> split_data(const Field& eta0, double cutoff) {
  auto [low, high] = split_spectrum(transform(eta0), cutoff);
  return {inverse(low), inverse(high)};
}

SplitState make_split_state(const Spectrum& eta0, double cutoff, double t0,
                            double s) {
  if (!(t0 > 0.0)) throw InvalidParameter("split step length t0 must be > 0");
  auto [low, high] = split_spectrum(without_nyquist(eta0), cutoff);
  SplitState state{low, high, low, 0, 0.0, cutoff, t0, s, SplitLedger{}};
  state.ledger.cutoff = cutoff;
  state.ledger.t0 = t0;
  state.ledger.s = s;
  state.ledger.checkpoints.push_back({0.0, 0.0});
  return state;
}

double energy_increment_expansion(const Spectrum& u, const Spectrum& h,
                                  const ModelParams& params) {
  require_same_grid(u.grid, h.grid);
  double uh = 0.0, hh = 0.0, uh1 = 0.0, hh1 = 0.0, uh2 = 0.0, hh2 = 0.0;
  for (std::size_t k = 0; k < u.grid.size(); ++k) {
    const double xi2 = u.grid.frequency(k) * u.grid.frequency(k);
    const double cross = (std::conj(u.coeffs[k]) * h.coeffs[k]).real();
    const double self = std::norm(h.coeffs[k]);
    uh += cross;
    hh += self;
    uh1 += xi2 * cross;
    hh1 += xi2 * self;
    uh2 += xi2 * xi2 * cross;
    hh2 += xi2 * xi2 * self;
  }
  const double L = u.grid.length();
  return L * ((uh + 0.5 * hh) + params.gamma1() * (uh1 + 0.5 * hh1) +
              params.delta1() * (uh2 + 0.5 * hh2));
}

SplitState coevolve_step(SplitState state, const EvolutionConfig& cfg,
                         const ModelParams& params, NonlinearTerms terms) {
  if (!(state.t0 > 0.0)) throw InvalidParameter("split step length t0 must be > 0");
  if (!(cfg.dt > 0.0)) throw InvalidParameter("dt must be > 0");
  require_same_grid(state.u.grid, state.v.grid);
  const auto wall_start = std::chrono::steady_clock::now();

  const double ratio = state.t0 / cfg.dt;
  const auto substeps =
      static_cast<std::size_t>(std::max(1.0, std::ceil(ratio - 1e-9 * ratio)));
  const double h = state.t0 / static_cast<double>(substeps);

  const NonlinearOperator nonlinear(state.u.grid, params, cfg.dealias, terms);
  const IntegratingFactorRK4 stepper(state.u.grid, params, h);
  const auto rhs = [&nonlinear](const IntegratingFactorRK4::State& s) {
    return IntegratingFactorRK4::State{nonlinear.F(s[0]), nonlinear.G(s[0], s[1])};
  };

  SplitRecord record;
  record.step = state.k;
  record.energy_u = energy(state.u, params);
  record.u_h2 = sobolev_norm(state.u, SobolevIndex(2.0));
  record.v_hs = sobolev_norm(state.v, SobolevIndex(state.s));

  const Spectrum v_start = state.v;
  IntegratingFactorRK4::State pair{state.u, state.v};
  double max_variation = 0.0;
  for (std::size_t j = 1; j <= substeps; ++j) {
    const double tau_prev = h * static_cast<double>(j - 1);
    try {
      pair = stepper.step(pair, rhs, j, state.time + tau_prev);
    } catch (const DivergenceError& e) {
      throw SplitStepError(e.component() == 0 ? "u" : "v", e.what(), state.ledger);
    }
    const double tau = h * static_cast<double>(j);
    const double t = state.time + tau;
    if (record.energy_u > 0.0) {
      max_variation = std::max(
          max_variation,
          std::abs(energy(pair[0], params) - record.energy_u) / record.energy_u);
    }
    // eta(t) - S(t) eta0 = u(tau) - S(t) u0 + h(tau)
    Spectrum tail = pair[1] - semigroup(v_start, tau, params);
    Spectrum deviation = pair[0] - semigroup(state.u_initial, t, params);
    deviation += tail;
    state.ledger.checkpoints.push_back({t, sobolev_norm(deviation, SobolevIndex(2.0))});
  }

  Spectrum v_linear = semigroup(v_start, state.t0, params);
  Spectrum tail = pair[1] - v_linear;
  record.energy_u_evolved = energy(pair[0], params);
  record.h_h1 = sobolev_norm(tail, SobolevIndex(1.0));
  record.h_h2 = sobolev_norm(tail, SobolevIndex(2.0));
  record.u_energy_variation = max_variation;

  state.u = pair[0] + tail;
  state.v = std::move(v_linear);
  record.energy_increment = energy(state.u, params) - record.energy_u_evolved;
  state.time += state.t0;
  record.time = state.time;
  ++state.k;
  record.wall_seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - wall_start)
                            .count();
  state.ledger.records.push_back(record);
  return state;
}

double split_step_length(double cutoff, double s, double step_constant) {
  return step_constant * std::pow(cutoff, -2.0 * (2.0 - s));
}

SplitLedger run_global(const Spectrum& eta0, double s, double horizon,
                       double cutoff, const EvolutionConfig& cfg,
                       const ModelParams& params, GlobalRunOptions options,
                       NonlinearTerms terms) {
  if (!options.allow_non_hamiltonian) {
    if (!params.hamiltonian()) {
      throw InvalidParameter("run_global requires the hamiltonian case gamma = 7/48");
    }
    if (!(s >= 1.0 && s < 2.0)) throw InvalidParameter("run_global requires 1 <= s < 2");
  }
  if (!(horizon > 0.0)) throw InvalidParameter("horizon T must be > 0");
  if (!(options.step_constant > 0.0)) {
    throw InvalidParameter("step constant must be > 0");
  }
  const double t0 = split_step_length(cutoff, s, options.step_constant);
  const double ratio = horizon / t0;
  const auto steps =
      static_cast<std::size_t>(std::max(1.0, std::ceil(ratio - 1e-9 * ratio)));

  SplitState state = make_split_state(eta0, cutoff, t0, s);
  for (std::size_t k = 0; k < steps; ++k) {
    state = coevolve_step(std::move(state), cfg, params, terms);
  }
  return std::move(state.ledger);
}

double deviation_norm(const SplitLedger& ledger, double t) {
  const double slack = 1e-9 * (1.0 + std::abs(t));
  const DeviationCheckpoint* best = nullptr;
  for (const auto& c : ledger.checkpoints) {
    if (std::abs(c.time - t) <= slack &&
        (best == nullptr || std::abs(c.time - t) < std::abs(best->time - t))) {
      best = &c;
    }
  }
  if (best == nullptr) {
    std::ostringstream os;
    os << "no deviation checkpoint at t = " << t;
    throw LookupError(os.str());
  }
  return best->deviation;
}

}  // namespace kdvbbm
