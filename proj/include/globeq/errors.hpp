#pragma once

#include <stdexcept>
#include <string>

namespace globeq {

/// Failure category. The CLI maps each category to its own exit code.
enum class ErrorKind { Other, Parse, Convexity, Degeneracy, InconsistentCensus };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorKind::Other, w) {}
};

struct ParameterError : Error {
  explicit ParameterError(const std::string& w) : Error(ErrorKind::Other, w) {}
};

struct BoundaryVertexError : Error {
  explicit BoundaryVertexError(const std::string& w) : Error(ErrorKind::Other, w) {}
};

struct IncompleteCircleError : Error {
  explicit IncompleteCircleError(const std::string& w) : Error(ErrorKind::Other, w) {}
};

// Hessian determinant (numerically) zero, flat radial fields, zero-volume meshes.
struct DegeneracyError : Error {
  explicit DegeneracyError(const std::string& w) : Error(ErrorKind::Degeneracy, w) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error(ErrorKind::Parse, w) {}
};

struct MeshTopologyError : Error {
  explicit MeshTopologyError(const std::string& w) : Error(ErrorKind::Other, w) {}
};

struct ConvexityError : Error {
  ConvexityError(const std::string& w, std::size_t vertex, std::size_t face, double excess)
      : Error(ErrorKind::Convexity, w), vertex(vertex), face(face), excess(excess) {}
  std::size_t vertex;
  std::size_t face;
  double excess;  // signed distance of the vertex beyond the face plane
};

struct SeamError : Error {
  explicit SeamError(const std::string& w) : Error(ErrorKind::Other, w) {}
};

struct InconsistentCensusError : Error {
  explicit InconsistentCensusError(const std::string& w) : Error(ErrorKind::InconsistentCensus, w) {}
};

}  // namespace globeq
