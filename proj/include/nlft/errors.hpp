#pragma once

#include <stdexcept>
#include <string>

namespace nlft {

/// Broad failure class. Input errors are caller mistakes (bad sizes, bad
/// files); numerical errors mean the data violates a hypothesis the
/// algorithms rely on, or an iteration did not converge.
enum class ErrorCategory { input, numerical };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

struct InputError : Error {
  explicit InputError(const std::string& what) : Error(ErrorCategory::input, what) {}
};

/// Grid too small for a support, or a combinatorial guard tripped.
struct SizeError : Error {
  explicit SizeError(const std::string& what) : Error(ErrorCategory::input, what) {}
};

/// A coefficient window does not fit in one period of the grid.
struct AliasingError : Error {
  explicit AliasingError(const std::string& what) : Error(ErrorCategory::input, what) {}
};

/// A symbol gets too close to zero on the circle to be inverted.
struct VanishingSymbolError : Error {
  explicit VanishingSymbolError(const std::string& what) : Error(ErrorCategory::numerical, what) {}
};

/// max |b| on the circle is not below 1 - margin.
struct SzegoMarginError : Error {
  explicit SzegoMarginError(const std::string& what) : Error(ErrorCategory::numerical, what) {}
};

/// The computed a* has zeros inside the disk.
struct OuterFactorError : Error {
  explicit OuterFactorError(const std::string& what) : Error(ErrorCategory::numerical, what) {}
};

struct ConvergenceError : Error {
  explicit ConvergenceError(const std::string& what) : Error(ErrorCategory::numerical, what) {}
};

struct ConsistencyError : Error {
  explicit ConsistencyError(const std::string& what) : Error(ErrorCategory::numerical, what) {}
};

}  // namespace nlft
