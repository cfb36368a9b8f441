// errors.hpp -- exception types and the warning hook used across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace uwauth {

// Raised when an iterative numeric routine cannot reach its accuracy target
// (series divergence, cancellation beyond machine precision, integration
// budget exhausted).  The message carries diagnostics and, where one exists,
// the name of an alternative routine to try.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a file cannot be opened, read, or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by the config parser on malformed input or unknown keys.
// Carries the offending file name and 1-based line number.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& file, int line, const std::string& what_arg)
      : std::runtime_error(file + ":" + std::to_string(line) + ": " + what_arg),
        file_(file),
        line_(line) {}

  const std::string& file() const { return file_; }
  int line() const { return line_; }

 private:
  std::string file_;
  int line_;
};

// Non-fatal diagnostics (parameter outside its recommended range, CDF
// overshoot past 1 beyond tolerance, ...) go through this hook so tests can
// intercept them.  The default handler writes to stderr.
using WarningHandler = void (*)(const std::string& message);

// Installs a new handler and returns the previous one.  Passing nullptr
// restores the default stderr handler.
WarningHandler set_warning_handler(WarningHandler handler);

// Sends a warning through the installed handler.
void emit_warning(const std::string& message);

}  // namespace uwauth
