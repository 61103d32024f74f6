#pragma once

#include <memory>
#include <stdexcept>
#include <string>

namespace effham {

struct AdaTrajectory;

// Numerical guard violations and run-level failures that the CLI maps to
// distinct exit codes.

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown by the adaptive step search when not even tau_min keeps both
// densities in tolerance. The driver rethrows it with the 1-based index of
// the failing step and everything accepted so far attached.
struct StepNotFound : std::runtime_error {
  int step_index;
  std::shared_ptr<const AdaTrajectory> partial;

  explicit StepNotFound(int step,
                        std::shared_ptr<const AdaTrajectory> sofar = nullptr)
      : std::runtime_error("no admissible Trotter step at step index " +
                           std::to_string(step)),
        step_index(step),
        partial(std::move(sofar)) {}
};

struct OptimizerFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BranchAmbiguity : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonHermitian : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EigensolverFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace effham
