#pragma once

#include <stdexcept>
#include <string>

namespace graphex {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad parameters or configuration; maps to CLI exit code 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Argument at a pole or outside the domain of a special function.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class BracketError : public Error {
 public:
  using Error::Error;
};

/// Latent point count or memory beyond the configured cap; exit code 2.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// The sparsity estimator needs at least two nodes and two edges.
class UndefinedEstimatorError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

}  // namespace graphex
