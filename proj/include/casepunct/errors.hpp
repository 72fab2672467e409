#pragma once

#include <stdexcept>
#include <string>

namespace casepunct {

enum class ErrorCode {
  EmptyCorpus,
  InvalidRatios,
  TooFewDocuments,
  TargetTooSmall,
  WordTooLong,
  AlignmentMismatch,
  ShapeMismatch,
  PositionOverflow,
  NoSupervisedTokens,
  StaleActivations,
  VocabularyMismatch,
  EmptyTrainSet,
  DistinctSettings,
  LengthMismatch,
  UnknownLabel,
  EmptyMatrix,
  SchemaMismatch,
  MalformedInput,
  InvalidArgument,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace casepunct
