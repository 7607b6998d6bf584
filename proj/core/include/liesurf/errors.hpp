#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace liesurf {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Error attached to a specific grid node (flat index).
class NodeError : public Error {
public:
  NodeError(const std::string& what, std::size_t node)
      : Error(what + " at node " + std::to_string(node)), node_(node) {}
  std::size_t node() const noexcept { return node_; }

private:
  std::size_t node_;
};

struct PoleError : Error { using Error::Error; };
struct KindMismatch : Error { using Error::Error; };
struct MuMismatch : Error { using Error::Error; };
struct GaugeUnderdetermined : Error { using Error::Error; };
struct InconsistentLines : Error { using Error::Error; };
struct StepRejected : Error { using Error::Error; };
struct DegenerateTangents : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct InvalidArgument : Error { using Error::Error; };

struct SingularSystem : NodeError { using NodeError::NodeError; };
struct ForbiddenCurvature : NodeError { using NodeError::NodeError; };

}  // namespace liesurf
