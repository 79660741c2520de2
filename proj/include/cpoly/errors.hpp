#ifndef CPOLY_ERRORS_HPP
#define CPOLY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cpoly {

/// Coarse failure classes, mapped onto CLI exit codes:
/// InvalidInput -> 2, PropertyFalse -> 1, Numerical -> 3.
enum class ErrorKind { InvalidInput, PropertyFalse, Numerical };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& name, const std::string& what)
        : std::runtime_error(name + ": " + what), kind_(kind), name_(name) {}
    ErrorKind kind() const { return kind_; }
    const std::string& name() const { return name_; }

private:
    ErrorKind kind_;
    std::string name_;
};

#define CPOLY_DEFINE_ERROR(NAME, KIND)                                     \
    class NAME : public Error {                                            \
    public:                                                                \
        explicit NAME(const std::string& what)                             \
            : Error(ErrorKind::KIND, #NAME, what) {}                       \
    };

// lorentz / moebius
CPOLY_DEFINE_ERROR(NotSpacelike, Numerical)
CPOLY_DEFINE_ERROR(DegenerateSpan, Numerical)
CPOLY_DEFINE_ERROR(NormalNotSpacelike, Numerical)
CPOLY_DEFINE_ERROR(DegenerateBasis, Numerical)
CPOLY_DEFINE_ERROR(GramMismatch, Numerical)
CPOLY_DEFINE_ERROR(NotRestricted, Numerical)
CPOLY_DEFINE_ERROR(NonFinite, InvalidInput)

// disks and pencils
CPOLY_DEFINE_ERROR(OffsetOutOfRange, InvalidInput)
CPOLY_DEFINE_ERROR(PolarDegenerate, InvalidInput)
CPOLY_DEFINE_ERROR(NotUnitDeSitter, InvalidInput)
CPOLY_DEFINE_ERROR(PencilHasNoRealPoint, Numerical)
CPOLY_DEFINE_ERROR(NonPositiveTime, Numerical)
CPOLY_DEFINE_ERROR(PencilOrthodiskDegenerate, Numerical)
CPOLY_DEFINE_ERROR(NotDisjoint, Numerical)

// triangulation
CPOLY_DEFINE_ERROR(TooFewVertices, InvalidInput)
CPOLY_DEFINE_ERROR(EulerViolation, InvalidInput)
CPOLY_DEFINE_ERROR(NonManifoldEdge, InvalidInput)
CPOLY_DEFINE_ERROR(InconsistentOrientation, InvalidInput)
CPOLY_DEFINE_ERROR(NotThreeConnected, InvalidInput)

// c-polyhedra and links
CPOLY_DEFINE_ERROR(NestedPair, InvalidInput)
CPOLY_DEFINE_ERROR(SignAmbiguous, Numerical)
CPOLY_DEFINE_ERROR(NotHyperbolicAtVertex, Numerical)
CPOLY_DEFINE_ERROR(AmbiguousClassification, Numerical)
CPOLY_DEFINE_ERROR(ImproperVertex, PropertyFalse)
CPOLY_DEFINE_ERROR(NotRealizable, Numerical)

// rigidity / continuation
CPOLY_DEFINE_ERROR(NotStrictlyConvex, PropertyFalse)
CPOLY_DEFINE_ERROR(NotUnitaryEdge, InvalidInput)
CPOLY_DEFINE_ERROR(RankDeficient, Numerical)
CPOLY_DEFINE_ERROR(NoConvergence, Numerical)
CPOLY_DEFINE_ERROR(LeftCertifiedRegion, PropertyFalse)
CPOLY_DEFINE_ERROR(StepUnderflow, Numerical)
CPOLY_DEFINE_ERROR(NotLocallyCongruent, PropertyFalse)
CPOLY_DEFINE_ERROR(FaceDegenerate, Numerical)
CPOLY_DEFINE_ERROR(DivergentTransformSequence, Numerical)

// io / generators
CPOLY_DEFINE_ERROR(ParseError, InvalidInput)
CPOLY_DEFINE_ERROR(SchemaError, InvalidInput)
CPOLY_DEFINE_ERROR(NormalizationError, InvalidInput)
CPOLY_DEFINE_ERROR(ParamOutOfRange, InvalidInput)
CPOLY_DEFINE_ERROR(GenerationFailed, Numerical)

#undef CPOLY_DEFINE_ERROR

}  // namespace cpoly

#endif
