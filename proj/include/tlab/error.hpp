#pragma once

#include <stdexcept>
#include <string>

namespace tlab {

/// Whether a failure is a problem with the caller's input or a negative
/// mathematical outcome (a hypothesis that does not hold, a solver that did
/// not converge). The CLI maps these to exit codes 2 and 1.
enum class ErrorCategory { input, math };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

#define TLAB_DEFINE_ERROR(Name, Category)                        \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& what = #Name)               \
        : Error(ErrorCategory::Category, #Name ": " + what) {}   \
  };

TLAB_DEFINE_ERROR(InvalidPolygon, input)
TLAB_DEFINE_ERROR(CenterOnPlane, input)
TLAB_DEFINE_ERROR(DuplicateHeights, input)
TLAB_DEFINE_ERROR(TooFewSections, input)
TLAB_DEFINE_ERROR(InvalidHeight, input)
TLAB_DEFINE_ERROR(AnchorCollision, input)
TLAB_DEFINE_ERROR(CoincidentPoints, input)
TLAB_DEFINE_ERROR(ValidationError, input)
TLAB_DEFINE_ERROR(ParseError, input)
TLAB_DEFINE_ERROR(IoError, input)
TLAB_DEFINE_ERROR(EmptyImage, math)
TLAB_DEFINE_ERROR(NoConvergence, math)
TLAB_DEFINE_ERROR(OnSection, math)
TLAB_DEFINE_ERROR(Degenerate, math)
TLAB_DEFINE_ERROR(HypothesisViolated, math)
TLAB_DEFINE_ERROR(ClassMismatch, math)

#undef TLAB_DEFINE_ERROR

}  // namespace tlab
