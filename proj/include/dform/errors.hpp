#pragma once

#include <stdexcept>
#include <string>

namespace dform {

/// Base class for every error the engine raises on bad input or exhausted budgets.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define DFORM_ERROR(Name)                                                    \
    struct Name : Error {                                                    \
        explicit Name(const std::string& what = #Name) : Error(what) {}      \
    }

DFORM_ERROR(NonUnit);
DFORM_ERROR(ZeroInput);
DFORM_ERROR(NotADthPower);
DFORM_ERROR(PrecisionExhausted);
DFORM_ERROR(DegenerateForm);
DFORM_ERROR(UnsupportedCharacteristic);
DFORM_ERROR(DimensionMismatch);
DFORM_ERROR(FieldMismatch);
DFORM_ERROR(DegreeMismatch);
DFORM_ERROR(UnsupportedDegree);
DFORM_ERROR(InexactCoefficient);
DFORM_ERROR(NotLiftable);
DFORM_ERROR(NotAnisotropic);
DFORM_ERROR(ZeroVector);
DFORM_ERROR(SearchBudgetExceeded);
DFORM_ERROR(NotSNC);
DFORM_ERROR(ParseError);

#undef DFORM_ERROR

} // namespace dform
