// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace radsim {

/// Base class for all toolkit errors. Everything derived from ValidationError
/// maps to CLI exit code 1; any other exception maps to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

#define RADSIM_DEFINE_ERROR(Name)                 \
    class Name : public ValidationError {         \
    public:                                       \
        using ValidationError::ValidationError;   \
    }

RADSIM_DEFINE_ERROR(NyquistViolation);
RADSIM_DEFINE_ERROR(EmptySignal);
RADSIM_DEFINE_ERROR(EmptyTaps);
RADSIM_DEFINE_ERROR(BudgetExceeded);
RADSIM_DEFINE_ERROR(LengthTooShort);
RADSIM_DEFINE_ERROR(SingularSystem);
RADSIM_DEFINE_ERROR(MissingSpurEntry);
RADSIM_DEFINE_ERROR(EmptyCandidates);
RADSIM_DEFINE_ERROR(EmptyCascade);
RADSIM_DEFINE_ERROR(OverlapError);
RADSIM_DEFINE_ERROR(WindowError);
RADSIM_DEFINE_ERROR(RangeError);
RADSIM_DEFINE_ERROR(MissingCalEvent);
RADSIM_DEFINE_ERROR(UnregisteredAsset);
RADSIM_DEFINE_ERROR(InconsistentRates);
RADSIM_DEFINE_ERROR(ParseError);
RADSIM_DEFINE_ERROR(UnknownKey);
RADSIM_DEFINE_ERROR(CrossRefError);
RADSIM_DEFINE_ERROR(InvariantError);

#undef RADSIM_DEFINE_ERROR

} // namespace radsim
