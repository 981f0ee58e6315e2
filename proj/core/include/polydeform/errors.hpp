#pragma once

#include <stdexcept>
#include <string>

namespace polydeform {

/// Base class of every recoverable failure raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input file (mesh or label sidecar); message carries the line number.
struct ParseError : Error {
  using Error::Error;
};

/// Connectivity that violates the mesh contract (non-manifold edge, repeated
/// vertex inside a face, out-of-range index, empty face list).
struct TopologyError : Error {
  using Error::Error;
};

/// A face whose area falls at or below the degeneracy threshold.
struct DegenerateFaceError : Error {
  int face;
  DegenerateFaceError(int face_id, double area, double threshold)
      : Error("degenerate face " + std::to_string(face_id) + ": area " +
              std::to_string(area) + " <= threshold " + std::to_string(threshold)),
        face(face_id) {}
};

/// Inputs that do not belong together (label count vs. face count,
/// metrics on meshes with different connectivity).
struct MismatchError : Error {
  using Error::Error;
};

/// A caller-supplied value outside the documented domain (non-unit vector,
/// non-positive tolerance, ...).
struct InvalidArgumentError : Error {
  using Error::Error;
};

/// Linear solve failed to reach the requested relative residual.
struct SolverError : Error {
  double residual;
  SolverError(const std::string& what, double achieved)
      : Error(what), residual(achieved) {}
};

}  // namespace polydeform
