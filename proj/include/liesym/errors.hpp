#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace liesym {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input: expressions, metric files, generator files.
/// Rendered as "source:line:column: cause" with absent parts left out.
class ParseError : public Error {
public:
  ParseError(const std::string &msg, std::size_t column, std::size_t line = 0,
             const std::string &source = {})
      : Error(format(msg, column, line, source)), cause_(msg), column_(column), line_(line),
        source_(source) {}

  const std::string &cause() const { return cause_; }
  std::size_t column() const { return column_; }
  std::size_t line() const { return line_; }
  const std::string &source() const { return source_; }

private:
  static std::string format(const std::string &msg, std::size_t column, std::size_t line,
                            const std::string &source) {
    if (source.empty() && line == 0)
      return column > 0 ? "column " + std::to_string(column) + ": " + msg : msg;
    std::string out = source.empty() ? "line " : source + ":";
    if (line > 0)
      out += std::to_string(line) + ":";
    if (column > 0)
      out += std::to_string(column) + ":";
    out += " ";
    return out + msg;
  }

  std::string cause_;
  std::size_t column_;
  std::size_t line_;
  std::string source_;
};

/// A well-formed request that is mathematically invalid (singular metric,
/// non-closing basis, dependent vectors, ...).
class MathError : public Error {
public:
  using Error::Error;
};

/// A request outside the supported fragment (e.g. an adjoint operator whose
/// minimal polynomial has irrational roots).
class UnsupportedError : public Error {
public:
  using Error::Error;
};

/// A file that cannot be read.
class IoError : public Error {
public:
  using Error::Error;
};

} // namespace liesym
