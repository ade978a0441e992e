#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace skg {

/// Base for every error raised by the pipeline. Stages catch this at the CLI
/// boundary and turn it into a diagnostic plus a nonzero exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input file could not be opened or read.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A recoverable, line-addressed problem found while reading an input file.
struct Diagnostic {
  std::size_t line = 0;  // 1-based; 0 when not tied to a line
  std::string message;
};

using Diagnostics = std::vector<Diagnostic>;

}  // namespace skg
