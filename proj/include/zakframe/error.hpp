#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zakframe {

enum class ErrorKind {
  invalid_group,
  size_limit,
  invalid_stride,
  not_abelian,
  abelian_required,
  structure_mismatch,
  shape_mismatch,
  empty_family,
  family_size_mismatch,
  not_bounded_below,
  not_periodic,
  invalid_argument,
  parse_error,
  io_error,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_group: return "invalid-group";
    case ErrorKind::size_limit: return "size-limit";
    case ErrorKind::invalid_stride: return "invalid-stride";
    case ErrorKind::not_abelian: return "not-abelian";
    case ErrorKind::abelian_required: return "abelian-required";
    case ErrorKind::structure_mismatch: return "structure-mismatch";
    case ErrorKind::shape_mismatch: return "shape-mismatch";
    case ErrorKind::empty_family: return "empty-family";
    case ErrorKind::family_size_mismatch: return "family-size-mismatch";
    case ErrorKind::not_bounded_below: return "not-bounded-below";
    case ErrorKind::not_periodic: return "not-periodic";
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::io_error: return "io-error";
  }
  return "unknown";
}

/// Every failure raised by the library. `kind()` is stable and machine-checkable;
/// the message carries the witness (offending triple, pair, fiber index...).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace zakframe
