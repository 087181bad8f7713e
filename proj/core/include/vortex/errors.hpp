#pragma once

#include <stdexcept>
#include <string>

namespace vortex {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// integrand construction / validation
struct UnknownFamily : Error {
    using Error::Error;
};
struct ParamOutOfRange : Error {
    using Error::Error;
};

// quadrature
struct Divergent : Error {
    using Error::Error;
};
struct QuadratureFailure : Error {
    using Error::Error;
};
struct NonpositiveLambda : Error {
    using Error::Error;
};

// ball merging
struct NotIntersecting : Error {
    using Error::Error;
};
struct DuplicateSeedCenters : Error {
    using Error::Error;
};
struct EtaTooLarge : Error {
    using Error::Error;
};
struct SimulationStalled : Error {
    using Error::Error;
};

// mesh / fields
struct MeshGenerationFailure : Error {
    using Error::Error;
};
struct DegenerateTriangle : Error {
    using Error::Error;
};
struct LineSearchStall : Error {
    using Error::Error;
};

// defect analysis
struct AmbiguousEdge : Error {
    using Error::Error;
};
struct RhoRangeInvalid : Error {
    using Error::Error;
};
struct PointOutsideDomain : Error {
    using Error::Error;
};

// reporting
struct IoFailure : Error {
    using Error::Error;
};

} // namespace vortex
