#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dihedral {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// An odd modulus was required (dihedral groups D_n only arise for odd n).
class EvenModulusError : public Error {
 public:
  explicit EvenModulusError(long long n)
      : Error("modulus n = " + std::to_string(n) + " must be odd"), n_(n) {}
  long long modulus() const noexcept { return n_; }

 private:
  long long n_;
};

/// Exhaustive enumeration would exceed the configured element cap.
class EnumerationCapError : public Error {
 public:
  EnumerationCapError(std::string what_set, std::string size, std::size_t cap)
      : Error("too large to enumerate: " + what_set + " has " + size +
              " elements, cap is " + std::to_string(cap)) {}
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A criterion was asked for outside its hypotheses (e.g. the cyclic
/// criterion on a non-cyclic group).
class InapplicableCriterion : public Error {
 public:
  using Error::Error;
};

/// The Hermitian form is numerically degenerate at the requested root of
/// unity; no signature is reported rather than a guess.
class IndeterminateSignature : public Error {
 public:
  using Error::Error;
};

enum class MatrixErrorKind {
  Malformed,
  NotSquare,
  OddDimension,
  NotUnimodular,
};

inline const char* to_string(MatrixErrorKind k) {
  switch (k) {
    case MatrixErrorKind::Malformed: return "malformed";
    case MatrixErrorKind::NotSquare: return "not-square";
    case MatrixErrorKind::OddDimension: return "odd-dimension";
    case MatrixErrorKind::NotUnimodular: return "not-unimodular";
  }
  return "unknown";
}

/// Rejected Seifert matrix input. `position` is a character offset into the
/// parsed text when the error came from the parser, npos otherwise.
class MatrixInputError : public Error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  MatrixInputError(MatrixErrorKind kind, const std::string& msg,
                   std::size_t position = npos)
      : Error(format(kind, msg, position)), kind_(kind), position_(position) {}

  MatrixErrorKind kind() const noexcept { return kind_; }
  std::size_t position() const noexcept { return position_; }

 private:
  static std::string format(MatrixErrorKind kind, const std::string& msg,
                            std::size_t position) {
    std::string s = std::string(to_string(kind)) + ": " + msg;
    if (position != npos) s += " (at offset " + std::to_string(position) + ")";
    return s;
  }

  MatrixErrorKind kind_;
  std::size_t position_;
};

}  // namespace dihedral
