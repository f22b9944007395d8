#pragma once

#include <stdexcept>
#include <string>

namespace fpme {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define FPME_DEFINE_ERROR(Name)                                    \
    struct Name : Error {                                          \
        explicit Name(const std::string& msg) : Error(msg) {}      \
    }

FPME_DEFINE_ERROR(DegenerateScaling);
FPME_DEFINE_ERROR(ZeroMass);
FPME_DEFINE_ERROR(GridOverflow);
FPME_DEFINE_ERROR(GridMismatch);
FPME_DEFINE_ERROR(RegimeError);
FPME_DEFINE_ERROR(DomainError);
FPME_DEFINE_ERROR(DimensionError);
FPME_DEFINE_ERROR(PoleError);
FPME_DEFINE_ERROR(QuadratureFailure);
FPME_DEFINE_ERROR(SlowDecay);
FPME_DEFINE_ERROR(StabilityViolation);
FPME_DEFINE_ERROR(BlowUp);
FPME_DEFINE_ERROR(BoxTooSmall);
FPME_DEFINE_ERROR(MassMismatch);
FPME_DEFINE_ERROR(WindowTooSmall);
FPME_DEFINE_ERROR(NotRadial);
FPME_DEFINE_ERROR(NoConvergence);
FPME_DEFINE_ERROR(InputNotOrdered);
FPME_DEFINE_ERROR(ConfigError);

#undef FPME_DEFINE_ERROR

}  // namespace fpme
