#pragma once
#include <stdexcept>
#include <string>

namespace hm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SurfaceMismatch : Error { using Error::Error; };
struct CapabilityError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct EmptyProjection : Error { using Error::Error; };
struct StructureViolation : Error { using Error::Error; };
struct InvalidMove : Error { using Error::Error; };
struct NotMovable : Error { using Error::Error; };

struct CapExceeded : Error {
    std::string diagnostics;
    CapExceeded(const std::string& what, std::string diag = {})
        : Error(what), diagnostics(std::move(diag)) {}
};

}
