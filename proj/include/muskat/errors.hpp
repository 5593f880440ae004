#pragma once

#include <stdexcept>
#include <string>

namespace muskat {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed arguments: non-finite values, grid mismatches, bad dimensions.
class InvalidInputError : public Error {
  public:
    using Error::Error;
};

/// Data that admits no solution (compatibility violation, nonzero-mean
/// Neumann data). Carries the offending residual when known.
class InfeasibleDataError : public Error {
  public:
    explicit InfeasibleDataError(const std::string& what, double residual = 0.0)
        : Error(what), residual_(residual) {}
    double residual() const { return residual_; }

  private:
    double residual_;
};

/// Source data that has not decayed at the truncated depth.
class TruncationError : public Error {
  public:
    using Error::Error;
};

/// NaN/overflow during time stepping. Steep-interface breakdown is an
/// expected physical outcome for large data and must be reported, not crash.
class BlowUpError : public Error {
  public:
    explicit BlowUpError(const std::string& what, double t_reached)
        : Error(what), t_reached_(t_reached) {}
    double t_reached() const { return t_reached_; }

  private:
    double t_reached_;
};

/// Config-text errors; names the key and line that failed.
class ParseError : public Error {
  public:
    ParseError(const std::string& what, int line, const std::string& key)
        : Error(what), line_(line), key_(key) {}
    int line() const { return line_; }
    const std::string& key() const { return key_; }

  private:
    int line_;
    std::string key_;
};

/// Filesystem failures while writing run outputs.
class IoError : public Error {
  public:
    using Error::Error;
};

}  // namespace muskat
