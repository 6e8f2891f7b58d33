#pragma once

#include <stdexcept>
#include <string>

namespace hoe {

/// Base of every error raised by the library. `kind()` is a stable
/// machine-readable tag used by the CLI error report.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    [[nodiscard]] const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define HOE_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                             \
    public:                                                                 \
        explicit Name(const std::string& what) : Error(#Name, what) {}      \
    }

HOE_DEFINE_ERROR(InvalidArgument);
HOE_DEFINE_ERROR(DomainError);
HOE_DEFINE_ERROR(DegenerateFrame);
HOE_DEFINE_ERROR(NoIntersection);
HOE_DEFINE_ERROR(NotOnSurface);
HOE_DEFINE_ERROR(NoPreimage);
HOE_DEFINE_ERROR(SingularPoint);
HOE_DEFINE_ERROR(WavelengthMismatch);
HOE_DEFINE_ERROR(ZeroGrating);
HOE_DEFINE_ERROR(PointNotOnEllipsoid);
HOE_DEFINE_ERROR(NonPositiveFactor);
HOE_DEFINE_ERROR(EmptyBundle);
HOE_DEFINE_ERROR(NoMinimumInRange);
HOE_DEFINE_ERROR(ConfigError);

#undef HOE_DEFINE_ERROR

/// Wraps an error raised while processing one sample of a batch so the
/// failing index travels with the original kind.
class SampleError : public Error {
public:
    SampleError(const Error& cause, std::size_t index)
        : Error(cause.kind(), "sample " + std::to_string(index) + ": " + cause.what()),
          index_(index) {}

    [[nodiscard]] std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

}  // namespace hoe
