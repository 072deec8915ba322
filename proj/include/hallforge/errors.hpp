#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hallforge {

// Exit-code contract used by the CLI: 2 = bad input, 3 = size guard.
enum class ErrorClass { Input = 2, Guard = 3 };

struct Error : std::runtime_error {
    ErrorClass cls;
    Error(ErrorClass c, const std::string& msg) : std::runtime_error(msg), cls(c) {}
};

struct NonPrimeError : Error {
    explicit NonPrimeError(std::uint64_t p)
        : Error(ErrorClass::Input, "not a prime: " + std::to_string(p)) {}
};

struct SizeGuardExceeded : Error {
    std::uint64_t required;  // work units the request would need
    std::uint64_t limit;
    SizeGuardExceeded(const std::string& what, std::uint64_t req, std::uint64_t lim)
        : Error(ErrorClass::Guard, what + ": needs " + std::to_string(req) +
                                       ", guard is " + std::to_string(lim)),
          required(req), limit(lim) {}
};

struct DivisionByZero : Error {
    DivisionByZero() : Error(ErrorClass::Input, "division by zero") {}
};

struct FieldMismatch : Error {
    FieldMismatch() : Error(ErrorClass::Input, "operands live in different fields") {}
};

struct QuiverMismatch : Error {
    explicit QuiverMismatch(const std::string& msg) : Error(ErrorClass::Input, msg) {}
};

struct LoopVertex : Error {
    explicit LoopVertex(const std::string& v)
        : Error(ErrorClass::Input, "vertex carries a loop: " + v) {}
};

struct UnknownClassId : Error {
    explicit UnknownClassId(const std::string& id)
        : Error(ErrorClass::Input, "unknown iso-class id: " + id) {}
};

struct NonIntegerResult : Error {
    explicit NonIntegerResult(const std::string& msg) : Error(ErrorClass::Input, msg) {}
};

struct InsufficientSamples : Error {
    explicit InsufficientSamples(const std::string& msg) : Error(ErrorClass::Input, msg) {}
};

struct InputError : Error {
    explicit InputError(const std::string& msg) : Error(ErrorClass::Input, msg) {}
};

// Internal invariant violations (orbit sizes not dividing the group order,
// duplicate classes after closure, ...). Never expected on valid inputs.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace hallforge
