#pragma once

#include <stdexcept>
#include <string>

namespace wha {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define WHA_DEFINE_ERROR(Name)                       \
    struct Name : Error {                            \
        using Error::Error;                          \
    }

WHA_DEFINE_ERROR(ShapeMismatch);
WHA_DEFINE_ERROR(NotHermitian);
WHA_DEFINE_ERROR(NotPositive);
WHA_DEFINE_ERROR(Singular);
WHA_DEFINE_ERROR(NotAnAlgebra);
WHA_DEFINE_ERROR(DegenerateRandomization);
WHA_DEFINE_ERROR(GaugeNotNormalized);
WHA_DEFINE_ERROR(NotSeparating);
WHA_DEFINE_ERROR(NoSolution);
WHA_DEFINE_ERROR(NonUniqueSolution);
WHA_DEFINE_ERROR(CrossCheckMismatch);
WHA_DEFINE_ERROR(NotInvertible);
WHA_DEFINE_ERROR(NotAdmissible);
WHA_DEFINE_ERROR(AbelianBaseOnlyTrivial);
WHA_DEFINE_ERROR(PostconditionViolated);
WHA_DEFINE_ERROR(StructureRecoveryFailed);
WHA_DEFINE_ERROR(InvalidGroupoid);
WHA_DEFINE_ERROR(ParseError);
WHA_DEFINE_ERROR(UnsupportedVersion);

#undef WHA_DEFINE_ERROR

}  // namespace wha
