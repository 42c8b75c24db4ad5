#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tso {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A distribution, band or utility was constructed with parameters outside
/// their valid range. The message names the violated constraint.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Two values that must be ordered (a <= b, m_f <= m_g, ...) are not.
class OrderingError : public Error {
 public:
  using Error::Error;
};

class ZeroDensityError : public Error {
 public:
  ZeroDensityError(double x)
      : Error("density vanishes at interior point x=" + std::to_string(x)), at(x) {}
  double at;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// Interim-utility computations are only defined for risk-neutral agents.
class UnsupportedUtility : public Error {
 public:
  using Error::Error;
};

/// A derivative was requested exactly at a regime boundary.
class KinkError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(std::size_t line, std::string field, const std::string& what)
      : Error("config line " + std::to_string(line) + " [" + field + "]: " + what),
        line(line),
        field(std::move(field)) {}
  std::size_t line;
  std::string field;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  IoError(const std::string& path, const std::string& what)
      : Error(what + ": " + path), path(path) {}
  std::string path;
};

}  // namespace tso
