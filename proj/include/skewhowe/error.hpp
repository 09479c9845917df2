#pragma once

#include <stdexcept>
#include <string>

namespace skewhowe {

enum class Errc {
  BoxViolation,
  InvalidFamily,
  OnBranchCut,
  TooLarge,
  ContourInfeasible,
  NoConvergence,
  NoSupport,
  RootFindFailure,
  AmbiguousRoots,
  DegenerateEdge,
  NotPearcey,
  DivergentIntegral,
  ShapeMismatch,
  CalibrationFailure,
  InvalidArgument,
};

const char* errc_name(Errc e);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }
  const char* name() const { return errc_name(code_); }

 private:
  Errc code_;
};

}  // namespace skewhowe
