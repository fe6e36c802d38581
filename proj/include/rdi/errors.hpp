#pragma once
#include <stdexcept>
#include <string>

namespace rdi {

// Base for every library error; `kind` is the stable name used in reports.
struct Error : std::runtime_error {
  std::string kind;
  Error(std::string k, const std::string& what) : std::runtime_error(what), kind(std::move(k)) {}
};

#define RDI_ERROR(Name)                                                      \
  struct Name : Error {                                                      \
    explicit Name(const std::string& what) : Error(#Name, what) {}           \
  };

RDI_ERROR(DomainError)
RDI_ERROR(SingularInput)
RDI_ERROR(SingularSpinor)
RDI_ERROR(NonVectorResult)
RDI_ERROR(NullDensity)
RDI_ERROR(OnAxis)
RDI_ERROR(NotNormalizable)
RDI_ERROR(StepTooLarge)
RDI_ERROR(StepUnstable)
RDI_ERROR(IndexError)

#undef RDI_ERROR

}  // namespace rdi
