#pragma once

#include <stdexcept>
#include <string>

namespace levyliq {

// Error taxonomy mirrored by the C API status codes.
enum class ErrorCode {
    InvalidArgument = 1,
    SolverFailure   = 2,
    DegenerateRoots = 3,
    NumericFailure  = 4,
    AtomPoint       = 5,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& what) : Error(ErrorCode::InvalidArgument, what) {}
};
struct SolverFailure : Error {
    explicit SolverFailure(const std::string& what) : Error(ErrorCode::SolverFailure, what) {}
};
struct DegenerateRoots : Error {
    explicit DegenerateRoots(const std::string& what) : Error(ErrorCode::DegenerateRoots, what) {}
};
struct NumericFailure : Error {
    explicit NumericFailure(const std::string& what) : Error(ErrorCode::NumericFailure, what) {}
};
struct AtomPoint : Error {
    explicit AtomPoint(const std::string& what) : Error(ErrorCode::AtomPoint, what) {}
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw InvalidArgument(what);
}

} // namespace levyliq
