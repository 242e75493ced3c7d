#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace notespace {

// Common base so callers can catch every domain failure in one place.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// midi ingestion
struct MalformedHeader : Error { using Error::Error; };
struct TruncatedChunk : Error { using Error::Error; };
struct UnsupportedFormat : Error { using Error::Error; };
struct EmptySequence : Error { using Error::Error; };

// corpus construction
struct EmptyCorpus : Error { using Error::Error; };
struct UntransposablePiece : Error { using Error::Error; };
struct PitchOutOfRange : Error { using Error::Error; };
struct UnknownToken : Error { using Error::Error; };

// sequence model
struct IndexOutOfVocabulary : Error { using Error::Error; };
struct SequenceTooShort : Error { using Error::Error; };

// t-SNE
struct DegenerateRow : Error { using Error::Error; };

struct DuplicatePoints : Error {
  std::size_t row_a;
  std::size_t row_b;
  DuplicatePoints(std::size_t a, std::size_t b, const std::string& what)
      : Error(what), row_a(a), row_b(b) {}
};

struct NonFiniteGradient : Error {
  std::size_t iteration;
  NonFiniteGradient(std::size_t iter, const std::string& what)
      : Error(what), iteration(iter) {}
};

// analysis / reporting
struct ZeroVector : Error { using Error::Error; };
struct KTooLarge : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct WrongDimensionality : Error { using Error::Error; };

}  // namespace notespace
