#include "kdvbbm/errors.hpp"

#include <sstream>

namespace kdvbbm {

namespace {

std::string divergence_message(std::size_t step, double time) {
  std::ostringstream os;
  os << "non-finite state at step " << step << " (t = " << time << ")";
  return os.str();
}

std::string contraction_message(int iterations, double defect) {
  std::ostringstream os;
  os << "fixed-point iteration did not converge after " << iterations
     << " iterations (last defect " << defect << ")";
  return os.str();
}

}  // namespace

DivergenceError::DivergenceError(std::size_t step, double time,
                                 std::size_t component)
    : Error(divergence_message(step, time)),
      step_(step),
      time_(time),
      component_(component) {}

ContractionFailure::ContractionFailure(int iterations, double last_defect)
    : Error(contraction_message(iterations, last_defect)),
      iterations_(iterations),
      last_defect_(last_defect) {}

}  // namespace kdvbbm
