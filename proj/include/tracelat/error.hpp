#ifndef TRACELAT_ERROR_HPP
#define TRACELAT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace tracelat {

/// Failure categories raised by library operations.
enum class Errc {
  NonSquare,
  Singular,
  DimensionMismatch,
  NotIntegral,
  Reducible,
  DivisionByZero,
  ZeroParameter,
  NonzeroTrace,
  RationalInput,
  DependentBasis,
  RankTooLarge,
  AmbientMismatch,
  PointNotOnConic,
  DegenerateLambda,
  WrongGram,
  ZeroSlopePair,
  ZeroGenerator,
  NotPrime,
  TooLarge,
  NotMaximal,
  NotFound,
  TwoInert,
  NotPositiveDefinite,
  Parse,
};

constexpr std::string_view errc_name(Errc e) {
  switch (e) {
    case Errc::NonSquare: return "NonSquare";
    case Errc::Singular: return "Singular";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotIntegral: return "NotIntegral";
    case Errc::Reducible: return "Reducible";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::ZeroParameter: return "ZeroParameter";
    case Errc::NonzeroTrace: return "NonzeroTrace";
    case Errc::RationalInput: return "RationalInput";
    case Errc::DependentBasis: return "DependentBasis";
    case Errc::RankTooLarge: return "RankTooLarge";
    case Errc::AmbientMismatch: return "AmbientMismatch";
    case Errc::PointNotOnConic: return "PointNotOnConic";
    case Errc::DegenerateLambda: return "DegenerateLambda";
    case Errc::WrongGram: return "WrongGram";
    case Errc::ZeroSlopePair: return "ZeroSlopePair";
    case Errc::ZeroGenerator: return "ZeroGenerator";
    case Errc::NotPrime: return "NotPrime";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NotMaximal: return "NotMaximal";
    case Errc::NotFound: return "NotFound";
    case Errc::TwoInert: return "TwoInert";
    case Errc::NotPositiveDefinite: return "NotPositiveDefinite";
    case Errc::Parse: return "Parse";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace tracelat

#endif  // TRACELAT_ERROR_HPP
