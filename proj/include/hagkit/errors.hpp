#pragma once

#include <stdexcept>
#include <string>

namespace hagkit {

enum class ErrorKind {
    structural,   // shapes, dimensions, index-set closure
    data,         // non-finite or malformed input values
    domain,       // input outside the mathematical domain of an operation
    singularity,  // a matrix that must be invertible is not
    numerical,    // overflow, non-finite result, failed consistency check
    resource,     // configured size caps
    io,
    internal,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

#define HAGKIT_DEFINE_ERROR(Name, Kind)                                  \
    class Name : public Error {                                          \
    public:                                                              \
        explicit Name(const std::string& what) : Error(Kind, what) {}    \
    };

HAGKIT_DEFINE_ERROR(StructuralError, ErrorKind::structural)
HAGKIT_DEFINE_ERROR(DataError, ErrorKind::data)
HAGKIT_DEFINE_ERROR(DomainError, ErrorKind::domain)
HAGKIT_DEFINE_ERROR(SingularityError, ErrorKind::singularity)
HAGKIT_DEFINE_ERROR(NumericalError, ErrorKind::numerical)
HAGKIT_DEFINE_ERROR(ResourceError, ErrorKind::resource)
HAGKIT_DEFINE_ERROR(IoError, ErrorKind::io)
HAGKIT_DEFINE_ERROR(InternalError, ErrorKind::internal)

#undef HAGKIT_DEFINE_ERROR

}  // namespace hagkit
