#pragma once

#include <string>
#include <vector>

#include "asrpower/errors.hpp"

namespace asrpower {

// One observation: component size (millions of live parameters) vs word
// error rate in percent.
struct SizeWerPoint {
  double size_millions = 0.0;
  double wer_percent = 0.0;
};

// Fitted wer(size) = exp(a * size + b) + c, size in millions of parameters.
struct AccuracyCurve {
  double a = 0.0;  // per million params, typically < 0
  double b = 0.0;
  double c = 0.0;  // asymptotic WER floor, >= 0
  double adj_r2 = 0.0;
  int n_points = 0;
  bool converged = false;
  std::string size_unit = "millions_of_params";
};

class FitError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// Damped least squares (Gauss-Newton with adaptive damping) on the sum of
// squared residuals. Requires >= 4 points over >= 3 distinct sizes; points
// are sorted internally so the result is order independent. Non-convergence
// after 200 iterations returns the best parameters found, flagged.
AccuracyCurve fit_exponential(std::vector<SizeWerPoint> points);

double predict_wer(const AccuracyCurve& curve, double size_millions);

// |d wer / d size| at the given size; decreasing in size for a < 0.
double accuracy_sensitivity(const AccuracyCurve& curve, double size_millions);

}  // namespace asrpower
