#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lumawm {

enum class ErrorKind {
  MalformedHeader,
  TruncatedPayload,
  ExcessPayload,
  WrongDimensions,
  EmptyRegion,
  ImageTooSmall,
  InsufficientCandidates,
  DimensionMismatch,
  RectOutOfBounds,
  InvalidParameter,
  MalformedPlan,
  Io,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MalformedHeader: return "MalformedHeader";
    case ErrorKind::TruncatedPayload: return "TruncatedPayload";
    case ErrorKind::ExcessPayload: return "ExcessPayload";
    case ErrorKind::WrongDimensions: return "WrongDimensions";
    case ErrorKind::EmptyRegion: return "EmptyRegion";
    case ErrorKind::ImageTooSmall: return "ImageTooSmall";
    case ErrorKind::InsufficientCandidates: return "InsufficientCandidates";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::RectOutOfBounds: return "RectOutOfBounds";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::MalformedPlan: return "MalformedPlan";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lumawm
