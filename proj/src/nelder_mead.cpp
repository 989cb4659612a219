#include "monogamy/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "monogamy/error.hpp"

namespace monogamy {

namespace {

using Point = std::vector<double>;

struct Simplex {
  std::vector<Point> vertices;
  std::vector<double> values;
};

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0,
                             const NelderMeadOptions& options) {
  const std::size_t n = x0.size();
  if (n == 0) fail(ErrorKind::domain, "Nelder-Mead needs at least one parameter");

  // Adaptive coefficients (Gao & Han) keep the method effective in higher dimensions.
  const double dn = static_cast<double>(n);
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / dn;
  const double gamma = 0.75 - 1.0 / (2.0 * dn);
  const double delta = 1.0 - 1.0 / dn;

  NelderMeadResult result;
  auto eval = [&](const Point& x) {
    ++result.evaluations;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  Point best = std::move(x0);
  double best_value = eval(best);
  double step = options.initial_step;

  for (int rebuild = 0; rebuild <= options.max_rebuilds; ++rebuild) {
    Simplex s;
    s.vertices.push_back(best);
    s.values.push_back(best_value);
    for (std::size_t i = 0; i < n; ++i) {
      Point v = best;
      v[i] += step;
      s.values.push_back(eval(v));
      s.vertices.push_back(std::move(v));
    }

    std::vector<std::size_t> order(n + 1);
    Point centroid(n), trial(n), trial2(n);
    while (result.evaluations < options.max_evaluations) {
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(),
                [&](std::size_t a, std::size_t b) { return s.values[a] < s.values[b]; });
      const std::size_t lo = order.front();
      const std::size_t hi = order.back();
      const std::size_t second = order[n - 1];

      double diameter = 0.0;
      for (std::size_t k = 0; k <= n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
          diameter = std::max(diameter, std::abs(s.vertices[k][i] - s.vertices[lo][i]));
        }
      }
      if (s.values[hi] - s.values[lo] <= options.value_tolerance &&
          diameter <= options.step_tolerance) {
        break;
      }
      if (diameter <= options.step_tolerance * 1e-3) break;
      ++result.iterations;

      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t k = 0; k <= n; ++k) {
        if (k == hi) continue;
        for (std::size_t i = 0; i < n; ++i) centroid[i] += s.vertices[k][i];
      }
      for (double& c : centroid) c /= dn;

      for (std::size_t i = 0; i < n; ++i) trial[i] = centroid[i] + alpha * (centroid[i] - s.vertices[hi][i]);
      const double fr = eval(trial);

      if (fr < s.values[lo]) {
        for (std::size_t i = 0; i < n; ++i) trial2[i] = centroid[i] + beta * (trial[i] - centroid[i]);
        const double fe = eval(trial2);
        if (fe < fr) {
          s.vertices[hi] = trial2;
          s.values[hi] = fe;
        } else {
          s.vertices[hi] = trial;
          s.values[hi] = fr;
        }
        continue;
      }
      if (fr < s.values[second]) {
        s.vertices[hi] = trial;
        s.values[hi] = fr;
        continue;
      }
      // Contraction, outside if the reflection improved on the worst vertex.
      const bool outside = fr < s.values[hi];
      for (std::size_t i = 0; i < n; ++i) {
        trial2[i] = outside ? centroid[i] + gamma * (trial[i] - centroid[i])
                            : centroid[i] - gamma * (centroid[i] - s.vertices[hi][i]);
      }
      const double fc = eval(trial2);
      if (fc < (outside ? fr : s.values[hi])) {
        s.vertices[hi] = trial2;
        s.values[hi] = fc;
        continue;
      }
      // Shrink toward the best vertex.
      for (std::size_t k = 0; k <= n; ++k) {
        if (k == lo) continue;
        for (std::size_t i = 0; i < n; ++i) {
          s.vertices[k][i] = s.vertices[lo][i] + delta * (s.vertices[k][i] - s.vertices[lo][i]);
        }
        s.values[k] = eval(s.vertices[k]);
      }
    }

    const auto it = std::min_element(s.values.begin(), s.values.end());
    const std::size_t idx = static_cast<std::size_t>(it - s.values.begin());
    const double improvement = best_value - *it;
    if (*it <= best_value) {
      best = s.vertices[idx];
      best_value = *it;
    }
    if (result.evaluations >= options.max_evaluations) break;
    if (rebuild > 0 && !(improvement > options.value_tolerance)) break;
    step = std::max(options.initial_step * 0.1, 1e3 * options.step_tolerance);
  }

  result.x = std::move(best);
  result.value = best_value;
  return result;
}

}  // namespace monogamy
