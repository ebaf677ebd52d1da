#pragma once

#include <string>

namespace mpade {

/// Outcome of a residual check: the worst observed value against its bound.
struct CheckReport {
  std::string name;
  double value = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string detail;
};

inline CheckReport make_report(std::string name, double value, double tol, std::string detail = {}) {
  return CheckReport{std::move(name), value, tol, value <= tol, std::move(detail)};
}

}  // namespace mpade
