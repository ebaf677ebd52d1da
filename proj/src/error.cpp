#include "mpade/error.hpp"

namespace mpade {

const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NotPositiveDefinite: return "NotPositiveDefinite";
    case Errc::PointOnSupport: return "PointOnSupport";
    case Errc::PoleOnSupport: return "PoleOnSupport";
    case Errc::DuplicatePoints: return "DuplicatePoints";
    case Errc::NodeCollision: return "NodeCollision";
    case Errc::DegenerateStep: return "DegenerateStep";
    case Errc::NonpositiveB: return "NonpositiveB";
    case Errc::NumericFailure: return "NumericFailure";
    case Errc::PoleHit: return "PoleHit";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::ChainTooShort: return "ChainTooShort";
    case Errc::PoleOfConvergent: return "PoleOfConvergent";
    case Errc::DegenerateMoment: return "DegenerateMoment";
    case Errc::InvariantViolated: return "InvariantViolated";
    case Errc::DegenerateLeading: return "DegenerateLeading";
    case Errc::KappaDegenerate: return "KappaDegenerate";
    case Errc::XiUnit: return "XiUnit";
    case Errc::SingularDelta: return "SingularDelta";
    case Errc::EqualPoles: return "EqualPoles";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::NormalCaseViolation: return "NormalCaseViolation";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace mpade
