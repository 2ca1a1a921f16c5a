#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace glc {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using State = VectorX<double>;
using Control = VectorX<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Configuration problems: unsupported Omega shape, degenerate polygon, bad formula text.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A non-finite state appeared during integration.
class IntegrationDiverged : public Error {
 public:
  using Error::Error;
};

// Exhaustive enumeration refused because the tree is larger than the node budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A node handle that does not resolve inside its tree.
class CorruptionError : public Error {
 public:
  using Error::Error;
};

class EmptyGraphError : public Error {
 public:
  using Error::Error;
};

class NegativeWeightError : public Error {
 public:
  using Error::Error;
};

}  // namespace glc
