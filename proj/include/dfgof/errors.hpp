#pragma once

#include <stdexcept>
#include <string>

namespace dfgof {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define DFGOF_DEFINE_ERROR(Name)                         \
    class Name : public Error {                          \
    public:                                              \
        using Error::Error;                              \
    }

DFGOF_DEFINE_ERROR(DimensionMismatch);
DFGOF_DEFINE_ERROR(InvalidModel);
DFGOF_DEFINE_ERROR(DegenerateGeometry);
DFGOF_DEFINE_ERROR(NonOrthogonalInputs);
DFGOF_DEFINE_ERROR(ProvenanceMismatch);
DFGOF_DEFINE_ERROR(DomainError);
DFGOF_DEFINE_ERROR(NoConvergence);
DFGOF_DEFINE_ERROR(DegenerateScore);
DFGOF_DEFINE_ERROR(EmptyPooledCell);
DFGOF_DEFINE_ERROR(DegenerateModel);
DFGOF_DEFINE_ERROR(IoError);

#undef DFGOF_DEFINE_ERROR

}  // namespace dfgof
