#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace loopspace {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-contract input: bad parameters, degenerate curves,
// non-canonical quotient points, unparsable files.
class InputError : public Error {
public:
  using Error::Error;
};

// A word that violates the edge-word grammar.
class ParseError : public InputError {
public:
  using InputError::InputError;
};

// A mesh edge with more than two incident triangles.
class NonManifoldEdge : public Error {
public:
  NonManifoldEdge(std::size_t a, std::size_t b, std::size_t incidence)
      : Error("non-manifold edge (" + std::to_string(a) + ", " + std::to_string(b) + ") has " +
              std::to_string(incidence) + " incident triangles"),
        a_(a), b_(b), incidence_(incidence) {}

  std::size_t first() const { return a_; }
  std::size_t second() const { return b_; }
  std::size_t incidence() const { return incidence_; }

private:
  std::size_t a_;
  std::size_t b_;
  std::size_t incidence_;
};

} // namespace loopspace
