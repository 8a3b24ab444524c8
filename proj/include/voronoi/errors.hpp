#pragma once

#include <stdexcept>
#include <string>

namespace voronoi {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what = "dimension mismatch") : Error(what) {}
};

/// Generic precondition failure on mathematical input.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

class ZeroVector : public DomainError {
 public:
  explicit ZeroVector(const std::string& what = "zero vector") : DomainError(what) {}
};

class NotPositiveDefinite : public DomainError {
 public:
  explicit NotPositiveDefinite(const std::string& what = "form is not positive definite") : DomainError(what) {}
};

class NotPSD : public DomainError {
 public:
  explicit NotPSD(const std::string& what = "form is not positive semi-definite") : DomainError(what) {}
};

class NotPerfect : public DomainError {
 public:
  explicit NotPerfect(const std::string& what = "form is not perfect") : DomainError(what) {}
};

class RankTooLow : public DomainError {
 public:
  explicit RankTooLow(const std::string& what = "form rank too low") : DomainError(what) {}
};

class MinNormMismatch : public DomainError {
 public:
  explicit MinNormMismatch(const std::string& what = "minimal norms differ") : DomainError(what) {}
};

class NotMeetingInterior : public DomainError {
 public:
  explicit NotMeetingInterior(const std::string& what = "face does not meet the open cone") : DomainError(what) {}
};

class DimensionTooLarge : public DomainError {
 public:
  explicit DimensionTooLarge(const std::string& what = "dimension too large without --force") : DomainError(what) {}
};

class FacetUnbounded : public Error {
 public:
  explicit FacetUnbounded(const std::string& what = "facet direction is unbounded") : Error(what) {}
};

/// A search ran past its configured limit; results were not truncated silently.
class SearchOverflow : public Error {
 public:
  explicit SearchOverflow(const std::string& what = "search bound exceeded") : Error(what) {}
};

class SearchBoundExceeded : public SearchOverflow {
 public:
  explicit SearchBoundExceeded(const std::string& what) : SearchOverflow(what) {}
};

}  // namespace voronoi
