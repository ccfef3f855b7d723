#pragma once

#include <stdexcept>
#include <string>

namespace obeta {

// Base of every error thrown by the library. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonPositiveParameter : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class NonFinite : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class MomentDomainError : public Error {
 public:
  using Error::Error;
};

class OverflowDomain : public Error {
 public:
  using Error::Error;
};

class DimensionTooLarge : public Error {
 public:
  using Error::Error;
};

/// Thrown by the rejection sampler when the acceptance rate over the
/// inspection window falls below the configured floor.
class RejectionStall : public Error {
 public:
  RejectionStall(const std::string& what, double acceptance)
      : Error(what), acceptance_(acceptance) {}
  double acceptance() const noexcept { return acceptance_; }

 private:
  double acceptance_;
};

}  // namespace obeta
