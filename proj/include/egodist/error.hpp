#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace egodist {

enum class ErrorKind {
  // graph construction
  SelfLoop,
  DuplicateEdge,
  NonPositiveWeight,
  NodeOutOfRange,
  EmptyGraph,
  // file ingestion
  Io,
  MalformedLine,
  MissingHeader,
  // argument validation
  InvalidArgument,
  InvalidDelta,
  DeltaMismatch,
  UnknownMetric,
  UnknownModel,
  // generators
  NonIntegerEta,
  RadiusCalibration,
  // classification
  UntaggedGraph,
  NoPositives,
  // backbone filters
  NotSubgraph,
  // correlation networks
  NonPositivePrice,
  MisalignedSeries,
  ConstantSeries,
  WindowTooShort,
  // numerics
  EigenSolver,
  FitUnderdetermined,
};

/// Coarse grouping used to map failures onto process exit codes.
enum class ErrorCategory { Usage, Input, Computation };

constexpr ErrorCategory category_of(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::InvalidDelta:
    case ErrorKind::UnknownMetric:
    case ErrorKind::UnknownModel:
      return ErrorCategory::Usage;
    case ErrorKind::SelfLoop:
    case ErrorKind::DuplicateEdge:
    case ErrorKind::NonPositiveWeight:
    case ErrorKind::NodeOutOfRange:
    case ErrorKind::EmptyGraph:
    case ErrorKind::Io:
    case ErrorKind::MalformedLine:
    case ErrorKind::MissingHeader:
    case ErrorKind::UntaggedGraph:
    case ErrorKind::NotSubgraph:
    case ErrorKind::NonPositivePrice:
    case ErrorKind::MisalignedSeries:
    case ErrorKind::ConstantSeries:
    case ErrorKind::WindowTooShort:
      return ErrorCategory::Input;
    default:
      return ErrorCategory::Computation;
  }
}

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::SelfLoop: return "self-loop";
    case ErrorKind::DuplicateEdge: return "duplicate edge";
    case ErrorKind::NonPositiveWeight: return "non-positive weight";
    case ErrorKind::NodeOutOfRange: return "node id out of range";
    case ErrorKind::EmptyGraph: return "empty graph";
    case ErrorKind::Io: return "i/o error";
    case ErrorKind::MalformedLine: return "malformed line";
    case ErrorKind::MissingHeader: return "missing header";
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::InvalidDelta: return "invalid delta";
    case ErrorKind::DeltaMismatch: return "delta mismatch";
    case ErrorKind::UnknownMetric: return "unknown metric";
    case ErrorKind::UnknownModel: return "unknown model";
    case ErrorKind::NonIntegerEta: return "non-integer eta";
    case ErrorKind::RadiusCalibration: return "radius calibration failed";
    case ErrorKind::UntaggedGraph: return "untagged graph";
    case ErrorKind::NoPositives: return "no actual positives";
    case ErrorKind::NotSubgraph: return "not a subgraph";
    case ErrorKind::NonPositivePrice: return "non-positive price";
    case ErrorKind::MisalignedSeries: return "misaligned series";
    case ErrorKind::ConstantSeries: return "constant series";
    case ErrorKind::WindowTooShort: return "window too short";
    case ErrorKind::EigenSolver: return "eigensolver failure";
    case ErrorKind::FitUnderdetermined: return "fit underdetermined";
  }
  return "unknown error";
}

/// Library-wide exception. The message names the offending item; kind()
/// lets callers branch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  ErrorCategory category() const noexcept { return category_of(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace egodist
