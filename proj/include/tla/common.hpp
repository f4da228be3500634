#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tla {

using Int = std::int64_t;

// Base class for every domain error the library raises. Callers that only
// care about "the operation was inadmissible" can catch this one type.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed trees: empty tuples, incongruent profiles, rank mismatches.
class structural_error : public error {
public:
    using error::error;
};

// Mixing semimodule kinds (Int / basis / xor) where one kind is required.
class semimodule_error : public error {
public:
    using error::error;
};

class overflow_error : public error {
public:
    using error::error;
};

class index_error : public error {
public:
    using error::error;
};

class bounds_error : public error {
public:
    using error::error;
};

class contract_error : public error {
public:
    using error::error;
};

// Composition: no layout can select every d-th element of A.
class stride_divisibility_error : public error {
public:
    using error::error;
};

// Composition: no layout can select the first s elements of A.
class shape_divisibility_error : public error {
public:
    using error::error;
};

// Composition over a multi-mode B whose mode images interleave.
class non_distributive_error : public error {
public:
    using error::error;
};

class not_complementable_error : public error {
public:
    using error::error;
};

class not_left_invertible_error : public error {
public:
    using error::error;
};

class admissibility_error : public error {
public:
    using error::error;
};

class resource_error : public error {
public:
    using error::error;
};

class parse_error : public error {
public:
    parse_error(const std::string& what, std::size_t offset)
        : error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

    [[nodiscard]] std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

inline Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw overflow_error("integer overflow in addition");
    return r;
}

inline Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw overflow_error("integer overflow in multiplication");
    return r;
}

inline Int ceil_div(Int a, Int b) { return (a + b - 1) / b; }

} // namespace tla
