#ifndef CMOMENT_ERROR_HPP
#define CMOMENT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cmoment {

enum class ErrorCode {
  kMalformedCharPoly,
  kMissingMoment,
  kDegreeTooHigh,
  kLevelMismatch,
  kZeroPolynomial,
  kEmptyPolynomial,
  kNotCharacteristic,
  kDuplicateRoots,
  kNotAnalytic,
  kEmptyZeroSet,
  kRelationViolated,
  kInconsistentExtension,
  kInvalidInput,
  kInvariantViolation,
};

const char* to_string(ErrorCode code);

// Single exception type for the library; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cmoment

#endif  // CMOMENT_ERROR_HPP
