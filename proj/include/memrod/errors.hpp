#pragma once

#include <stdexcept>
#include <string>

namespace memrod {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid mesh connectivity (non-manifold, inconsistent orientation, ...).
struct TopologyError : Error {
    using Error::Error;
};

/// Degenerate geometry (vanishing area Jacobian, degenerate rod stretch, ...).
struct GeometryError : Error {
    using Error::Error;
};

/// Third-derivative request exactly at an extraordinary vertex.
struct SingularityError : Error {
    using Error::Error;
};

/// Point location on the reference surface failed to converge.
struct LocateError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct SizeError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace memrod
