#pragma once

#include <stdexcept>
#include <string>

namespace anosov {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define ANOSOV_ERROR(Name)                 \
    struct Name : Error {                  \
        using Error::Error;                \
    }

ANOSOV_ERROR(NotHyperbolic);
ANOSOV_ERROR(PreconditionViolated);
ANOSOV_ERROR(DegenerateInput);
ANOSOV_ERROR(TrivialWord);
ANOSOV_ERROR(EmptySpectrum);
ANOSOV_ERROR(NonIsolatedFixedSet);
ANOSOV_ERROR(MissingPeriodicity);
ANOSOV_ERROR(InvalidChain);
ANOSOV_ERROR(InvalidWalk);
ANOSOV_ERROR(BelowThreshold);
ANOSOV_ERROR(ConfigInvalid);

#undef ANOSOV_ERROR

// BudgetExceeded lives in fuchsian.hpp (it carries the partial spectrum).

} // namespace anosov
