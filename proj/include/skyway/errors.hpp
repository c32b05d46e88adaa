#pragma once

#include <stdexcept>
#include <string>

namespace skyway {

/// Base class for all library errors.
class SkywayError : public std::runtime_error {
public:
  explicit SkywayError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid argument or request (bad node id, overweight payload, ...).
class ValidationError : public SkywayError {
public:
  explicit ValidationError(const std::string& what) : SkywayError(what) {}
};

/// Malformed input file. Carries the offending field/section when known.
class ParseError : public SkywayError {
public:
  ParseError(const std::string& what, std::string context = {})
      : SkywayError(context.empty() ? what : what + " (at " + context + ")"),
        context_(std::move(context)) {}

  const std::string& context() const { return context_; }

private:
  std::string context_;
};

/// Filesystem failure (missing file, unwritable directory).
class IoError : public SkywayError {
public:
  explicit IoError(const std::string& what) : SkywayError(what) {}
};

/// A single flight leg exceeds the battery-feasible range.
class InfeasibleLegError : public SkywayError {
public:
  InfeasibleLegError(double length_km, double available_range_km);

  double length_km() const { return length_km_; }
  double available_range_km() const { return available_range_km_; }

private:
  double length_km_;
  double available_range_km_;
};

inline InfeasibleLegError::InfeasibleLegError(double length_km, double available_range_km)
    : SkywayError("infeasible leg: " + std::to_string(length_km) + " km needed, " +
                  std::to_string(available_range_km) + " km available"),
      length_km_(length_km),
      available_range_km_(available_range_km) {}

}  // namespace skyway
