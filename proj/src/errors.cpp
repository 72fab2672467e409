#include "casepunct/errors.hpp"

namespace casepunct {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::InvalidRatios: return "InvalidRatios";
    case ErrorCode::TooFewDocuments: return "TooFewDocuments";
    case ErrorCode::TargetTooSmall: return "TargetTooSmall";
    case ErrorCode::WordTooLong: return "WordTooLong";
    case ErrorCode::AlignmentMismatch: return "AlignmentMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::PositionOverflow: return "PositionOverflow";
    case ErrorCode::NoSupervisedTokens: return "NoSupervisedTokens";
    case ErrorCode::StaleActivations: return "StaleActivations";
    case ErrorCode::VocabularyMismatch: return "VocabularyMismatch";
    case ErrorCode::EmptyTrainSet: return "EmptyTrainSet";
    case ErrorCode::DistinctSettings: return "DistinctSettings";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::EmptyMatrix: return "EmptyMatrix";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

}  // namespace casepunct
