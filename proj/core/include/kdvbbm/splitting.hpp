#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "kdvbbm/dynamics.hpp"
#include "kdvbbm/errors.hpp"

namespace kdvbbm {

/// One completed step of the low/high frequency iteration.
struct SplitRecord {
  std::size_t step = 0;
  double time = 0.0;           // time at the end of the step
  double energy_u = 0.0;       // E(u_k) at the start of the step
  double energy_u_evolved = 0.0;  // E(u(t0))
  double energy_increment = 0.0;  // X_k = E(u(t0) + h(t0)) - E(u(t0))
  double u_energy_variation = 0.0;  // max relative change of E(u(t)) in the step
  double h_h1 = 0.0;
  double h_h2 = 0.0;
  double u_h2 = 0.0;           // |u_k|_{H^2}
  double v_hs = 0.0;           // |v_k|_{H^s}
  double wall_seconds = 0.0;
};

/// |eta(t) - S(t) eta0|_{H^2} at one time of the mesh.
struct DeviationCheckpoint {
  double time;
  double deviation;
};

struct SplitLedger {
  std::vector<SplitRecord> records;
  std::vector<DeviationCheckpoint> checkpoints;
  double cutoff = 0.0;  // N
  double t0 = 0.0;
  double s = 0.0;

  std::size_t size() const noexcept { return records.size(); }
  double max_energy_increment() const;
  double max_h_h2() const;
  /// sup over checkpoints with time <= horizon (plus rounding slack).
  double sup_deviation(double horizon) const;
};

/// u: low-frequency part evolved by the full equation; v: high-frequency
/// part evolved by the difference equation.
struct SplitState {
  Spectrum u;
  Spectrum v;
  Spectrum u_initial;  // u_0, used by the deviation identity
  std::size_t k = 0;
  double time = 0.0;
  double cutoff = 0.0;
  double t0 = 0.0;
  double s = 1.0;
  SplitLedger ledger;
};

/// A step that failed; carries the ledger up to the failure.
class SplitStepError : public Error {
 public:
  SplitStepError(const std::string& subsystem, const std::string& what,
                 SplitLedger partial);

  const std::string& subsystem() const noexcept { return subsystem_; }
  const SplitLedger& partial_ledger() const noexcept { return partial_; }

 private:
  std::string subsystem_;
  SplitLedger partial_;
};

/// u0 = eta0 restricted to |xi| <= cutoff, v0 = the rest, so u0 + v0 == eta0
/// coefficient by coefficient. Throws InvalidCutoff unless
/// 0 < cutoff <= max grid frequency.
std::pair<Spectrum, Spectrum> split_spectrum(const Spectrum& eta0, double cutoff);
std::pair<Field, Field> split_data(const Field& eta0, double cutoff);

/// Builds the initial state of the iteration.
SplitState make_split_state(const Spectrum& eta0, double cutoff, double t0,
                            double s);

/// Advances u and v over one interval of length t0 in lockstep on the same
/// mesh (step count ceil(t0/cfg.dt)), v driven by G(u, v) at u's stage
/// values. Then h = v(t0) - S(t0) v_k, u_{k+1} = u(t0) + h, v_{k+1} = S(t0) v_k
/// and a record is appended. Throws SplitStepError tagged "u" or "v".
SplitState coevolve_step(SplitState state, const EvolutionConfig& cfg,
                         const ModelParams& params, NonlinearTerms terms = {});

struct GlobalRunOptions {
  double step_constant = 1.0;  // t0 = c N^{-2(2-s)}
  /// Skip the gamma = 7/48 and 1 <= s < 2 preconditions.
  bool allow_non_hamiltonian = false;
};

/// t0 = c N^{-2(2-s)}.
double split_step_length(double cutoff, double s, double step_constant);

/// Runs ceil(T/t0) steps of coevolve_step from the split of eta0 and records
/// the deviation |eta(t) - S(t) eta0|_{H^2} at every substep via
/// u(tau) - S(t) u0 + h(tau). Throws InvalidParameter unless the model is
/// hamiltonian and 1 <= s < 2 (see GlobalRunOptions); step failures
/// propagate as SplitStepError with the partial ledger.
SplitLedger run_global(const Spectrum& eta0, double s, double horizon,
                       double cutoff, const EvolutionConfig& cfg,
                       const ModelParams& params, GlobalRunOptions options = {},
                       NonlinearTerms terms = {});

/// Deviation at time t from the ledger's checkpoints (nearest within
/// 1e-9 (1 + t)). Throws LookupError if no checkpoint matches.
double deviation_norm(const SplitLedger& ledger, double t);

/// E(u + h) - E(u) written as the bilinear expansion
///   int u h + 1/2 h^2 + g1 (u_x h_x + 1/2 h_x^2) + d1 (u_xx h_xx + 1/2 h_xx^2).
double energy_increment_expansion(const Spectrum& u, const Spectrum& h,
                                  const ModelParams& params);

}  // namespace kdvbbm
