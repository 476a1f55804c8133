#include "asrpower/curvefit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

namespace asrpower {

double predict_wer(const AccuracyCurve& curve, double size_millions) {
  return std::exp(curve.a * size_millions + curve.b) + curve.c;
}

double accuracy_sensitivity(const AccuracyCurve& curve, double size_millions) {
  return std::abs(curve.a) * std::exp(curve.a * size_millions + curve.b);
}

namespace {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

bool solve3(Mat3 a, Vec3 rhs, Vec3& out) {
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int row = col + 1; row < 3; ++row) {
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    }
    if (std::abs(a[pivot][col]) < 1e-300) return false;
    std::swap(a[col], a[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (int row = col + 1; row < 3; ++row) {
      const double factor = a[row][col] / a[col][col];
      for (int k = col; k < 3; ++k) a[row][k] -= factor * a[col][k];
      rhs[row] -= factor * rhs[col];
    }
  }
  for (int col = 2; col >= 0; --col) {
    double sum = rhs[col];
    for (int k = col + 1; k < 3; ++k) sum -= a[col][k] * out[k];
    out[col] = sum / a[col][col];
  }
  return true;
}

double sse_for(const Vec3& p, const std::vector<SizeWerPoint>& pts) {
  double sse = 0.0;
  for (const auto& pt : pts) {
    const double r = std::exp(p[0] * pt.size_millions + p[1]) + p[2] - pt.wer_percent;
    sse += r * r;
  }
  return sse;
}

// Log-linearized start: peel off 95% of the smallest WER as the floor and
// regress ln(wer - c0) on size for the exponent.
Vec3 initial_guess(const std::vector<SizeWerPoint>& pts) {
  double min_wer = pts.front().wer_percent;
  for (const auto& pt : pts) min_wer = std::min(min_wer, pt.wer_percent);
  const double c0 = 0.95 * min_wer;

  double sum_s = 0, sum_y = 0, sum_ss = 0, sum_sy = 0;
  int n = 0;
  for (const auto& pt : pts) {
    const double excess = pt.wer_percent - c0;
    if (excess <= 1e-12) continue;
    const double y = std::log(excess);
    sum_s += pt.size_millions;
    sum_y += y;
    sum_ss += pt.size_millions * pt.size_millions;
    sum_sy += pt.size_millions * y;
    ++n;
  }
  const double det = n * sum_ss - sum_s * sum_s;
  if (n < 2 || std::abs(det) < 1e-12) return {-0.1, 0.0, c0};
  const double a0 = (n * sum_sy - sum_s * sum_y) / det;
  const double b0 = (sum_y - a0 * sum_s) / n;
  return {a0, b0, c0};
}

}  // namespace

AccuracyCurve fit_exponential(std::vector<SizeWerPoint> points) {
  if (points.size() < 4) {
    throw FitError("insufficient points: the fit needs at least 4");
  }
  std::set<double> sizes;
  for (const auto& pt : points) {
    if (pt.size_millions <= 0) throw FitError("point sizes must be positive");
    if (pt.wer_percent < 0 || pt.wer_percent > 100) {
      throw FitError("wer values must lie in [0, 100]");
    }
    sizes.insert(pt.size_millions);
  }
  if (sizes.size() < 3) {
    throw FitError("degenerate data: the fit needs at least 3 distinct sizes");
  }
  std::sort(points.begin(), points.end(), [](const SizeWerPoint& x, const SizeWerPoint& y) {
    if (x.size_millions != y.size_millions) return x.size_millions < y.size_millions;
    return x.wer_percent < y.wer_percent;
  });

  Vec3 p = initial_guess(points);
  double sse = sse_for(p, points);
  Vec3 best_p = p;
  double best_sse = sse;
  double lambda = 1e-3;
  bool converged = false;

  for (int iter = 0; iter < 200 && !converged; ++iter) {
    if (sse < 1e-25) {
      converged = true;
      break;
    }
    Mat3 jtj{};
    Vec3 jtr{};
    for (const auto& pt : points) {
      const double e = std::exp(p[0] * pt.size_millions + p[1]);
      const double r = e + p[2] - pt.wer_percent;
      const Vec3 j{pt.size_millions * e, e, 1.0};
      for (int row = 0; row < 3; ++row) {
        for (int col = 0; col < 3; ++col) jtj[row][col] += j[row] * j[col];
        jtr[row] += j[row] * r;
      }
    }
    Mat3 damped = jtj;
    for (int d = 0; d < 3; ++d) damped[d][d] *= 1.0 + lambda;

    Vec3 step{};
    Vec3 neg_jtr{-jtr[0], -jtr[1], -jtr[2]};
    if (!solve3(damped, neg_jtr, step)) {
      lambda *= 10.0;
      continue;
    }
    Vec3 candidate{p[0] + step[0], p[1] + step[1], std::max(p[2] + step[2], 0.0)};
    const double candidate_sse = sse_for(candidate, points);
    if (candidate_sse < sse) {
      const double rel_change = (sse - candidate_sse) / sse;
      p = candidate;
      sse = candidate_sse;
      lambda /= 10.0;
      if (sse < best_sse) {
        best_p = p;
        best_sse = sse;
      }
      if (rel_change < 1e-10 || sse < 1e-25) converged = true;
    } else {
      lambda *= 10.0;
      // A stalled search (damping pushed until the step vanishes) has
      // reached the basin floor at working precision.
      const double step_norm =
          std::max({std::abs(step[0]), std::abs(step[1]), std::abs(step[2])});
      const double p_norm =
          std::max({std::abs(p[0]), std::abs(p[1]), std::abs(p[2]), 1.0});
      if (step_norm < 1e-12 * p_norm || lambda > 1e12) converged = true;
    }
  }

  const int n = static_cast<int>(points.size());
  double mean = 0.0;
  for (const auto& pt : points) mean += pt.wer_percent;
  mean /= n;
  double sst = 0.0;
  for (const auto& pt : points) {
    sst += (pt.wer_percent - mean) * (pt.wer_percent - mean);
  }
  const double r2 = sst > 0 ? 1.0 - best_sse / sst : (best_sse == 0 ? 1.0 : 0.0);

  AccuracyCurve curve;
  curve.a = best_p[0];
  curve.b = best_p[1];
  curve.c = best_p[2];
  curve.n_points = n;
  curve.converged = converged;
  // Adjusted R-squared needs n - p - 1 >= 1; at the 4-point minimum the
  // plain R-squared is reported instead.
  curve.adj_r2 = n > 4 ? 1.0 - (1.0 - r2) * (n - 1) / (n - 4) : r2;
  return curve;
}

}  // namespace asrpower
