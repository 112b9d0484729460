#pragma once

#include <stdexcept>
#include <string>

namespace lcf {

// Invalid input or a request outside the mathematical domain.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "DomainError"; }
};

// A numerical procedure did not reach its accuracy target.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "NumericalError"; }
};

#define LCF_ERROR(Name, Base)                                               \
    class Name : public Base {                                              \
    public:                                                                 \
        using Base::Base;                                                   \
        const char* kind() const noexcept override { return #Name; }        \
    };

LCF_ERROR(InvalidMasses, DomainError)
LCF_ERROR(DegenerateMasses, DomainError)
LCF_ERROR(WrongGenerationCount, DomainError)
LCF_ERROR(Infeasible, DomainError)
LCF_ERROR(NonPositiveC0, DomainError)
LCF_ERROR(UnsupportedFactor, DomainError)
LCF_ERROR(DegreeMismatch, DomainError)
LCF_ERROR(PreconditionViolation, DomainError)
LCF_ERROR(DegenerateZ, DomainError)
LCF_ERROR(BadFrameVector, DomainError)

LCF_ERROR(QuadratureFailure, NumericalError)
LCF_ERROR(FitFailure, NumericalError)
LCF_ERROR(BranchFailure, NumericalError)

#undef LCF_ERROR

}  // namespace lcf
