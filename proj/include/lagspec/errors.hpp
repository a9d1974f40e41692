#ifndef LAGSPEC_ERRORS_HPP
#define LAGSPEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lagspec {

/// The inputs are well-formed but do not carry enough samples or lags for the
/// requested computation (distinct from validation errors).
class InsufficientDataError : public std::runtime_error {
 public:
  explicit InsufficientDataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lagspec

#endif
