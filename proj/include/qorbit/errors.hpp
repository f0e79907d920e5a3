#pragma once
#include <stdexcept>
#include <string>

namespace qorbit {

// Error taxonomy shared by the whole library. Every error carries a stable
// name that the CLI prints on the diagnostic stream.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& msg)
        : std::runtime_error(name + ": " + msg), name_(std::move(name)) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

#define QORBIT_ERROR(NAME)                                                    \
    class NAME : public Error {                                               \
    public:                                                                   \
        explicit NAME(const std::string& msg) : Error(#NAME, msg) {}          \
    };

QORBIT_ERROR(ParseError)
QORBIT_ERROR(NotAdmissible)
QORBIT_ERROR(GeneratorNotInRadical)
QORBIT_ERROR(DenominatorVanishes)
QORBIT_ERROR(RankDeficient)
QORBIT_ERROR(LimitNotStable)
QORBIT_ERROR(FormulaMismatch)
QORBIT_ERROR(DimensionMismatch)
QORBIT_ERROR(NotOverBaseField)
QORBIT_ERROR(InconclusiveClassification)
QORBIT_ERROR(NotMinusOne)
QORBIT_ERROR(InvalidPoint)

#undef QORBIT_ERROR

} // namespace qorbit
