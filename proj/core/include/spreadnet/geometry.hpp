#pragma once

#include <cmath>

namespace spreadnet {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

enum class DistanceModel { Torus, Bounded };

// |d| folded onto the torus: never more than side/2 per axis.
inline double torus_delta(double d, double side) {
  d = std::fabs(d);
  return d > 0.5 * side ? side - d : d;
}

inline double squared_distance(Vec2 a, Vec2 b, DistanceModel model,
                               double side) {
  double dx = a.x - b.x;
  double dy = a.y - b.y;
  if (model == DistanceModel::Torus) {
    dx = torus_delta(dx, side);
    dy = torus_delta(dy, side);
  }
  return dx * dx + dy * dy;
}

// Wraps x into [0, side); used for torus motion.
inline double wrap(double x, double side) {
  x = std::fmod(x, side);
  return x < 0.0 ? x + side : x;
}

// Folds x into [0, side] by specular reflection at both walls. The fold is
// the triangle wave of period 2*side, which composes any number of
// bounces in one step.
inline double reflect_fold(double x, double side) {
  x = std::fmod(x, 2.0 * side);
  if (x < 0.0) x += 2.0 * side;
  return x <= side ? x : 2.0 * side - x;
}

}  // namespace spreadnet
