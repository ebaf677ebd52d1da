#pragma once

#include <stdexcept>
#include <string>

namespace mpade {

enum class Errc {
  SingularMatrix,
  NotHermitian,
  NotPositiveDefinite,
  PointOnSupport,
  PoleOnSupport,
  DuplicatePoints,
  NodeCollision,
  DegenerateStep,
  NonpositiveB,
  NumericFailure,
  PoleHit,
  ZeroDenominator,
  ChainTooShort,
  PoleOfConvergent,
  DegenerateMoment,
  InvariantViolated,
  DegenerateLeading,
  KappaDegenerate,
  XiUnit,
  SingularDelta,
  EqualPoles,
  RankDeficient,
  NormalCaseViolation,
  InvalidArgument,
};

const char* errc_name(Errc c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace mpade
