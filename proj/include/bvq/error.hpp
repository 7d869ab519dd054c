#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bvq {

enum class ErrorKind {
  OutOfDomain,
  EmptyInterval,
  BadResolution,
  JumpInLinearMode,
  DegenerateMap,
  UnknownKind,
  NoValidWindow,
  BadMesh,
  BadSplit,
  FlatAtMean,
  IllConditioned,
  NotMonotone,
  BadBranch,
  BadExponent,
  BadInterval,
  EmptyMap,
  InvalidSignal,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace bvq
