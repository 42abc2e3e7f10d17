#ifndef HEUNQES_ERRORS_HPP
#define HEUNQES_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace heunqes {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fewer real spectral roots were isolated than the theory guarantees.
struct RootCountMismatch : Error { using Error::Error; };

/// A value passed as a spectral root does not annihilate the critical polynomial.
struct NotARoot : Error { using Error::Error; };

/// A gauge/reduction was requested outside its defining parameter constraint.
struct ConstraintViolated : Error { using Error::Error; };

/// The QES condition alpha = -n*epsilon does not hold.
struct NotQes : Error { using Error::Error; };

/// Weight evaluation requested at a pole.
struct SingularPoint : Error { using Error::Error; };

/// An orthogonality integral does not converge for the given parameters.
struct Divergent : Error { using Error::Error; };

/// The moment-functional linear system is numerically singular.
struct SingularSystem : Error { using Error::Error; };

/// The resultant vanishes identically: the two compatibility curves share a
/// component and elimination cannot proceed.
struct EliminationDegenerate : Error { using Error::Error; };

struct NoMatchingRoot : Error { using Error::Error; };
struct AmbiguousRoot : Error { using Error::Error; };

/// The normalization integral of a density diverges.
struct NotNormalizable : Error { using Error::Error; };

/// A two-center branch/case combination violates its quantum-number bounds.
struct InvalidCase : Error { using Error::Error; };

} // namespace heunqes

#endif // HEUNQES_ERRORS_HPP
