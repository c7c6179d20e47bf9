#pragma once

#include <stdexcept>
#include <string>

namespace slater {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error { using Error::Error; };
struct CapacityError : Error { using Error::Error; };
struct PoleError : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct QuadratureError : Error { using Error::Error; };
struct TruncationError : Error { using Error::Error; };

}  // namespace slater
