#ifndef HOMORBIT_ERRORS_HPP
#define HOMORBIT_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace homorbit {

// Malformed edge-list input. Self-loop lines get their own kind so callers
// can distinguish "not a simple graph" from plain syntax noise.
class parse_error : public std::runtime_error {
public:
    enum class kind { syntax, self_loop };

    parse_error(kind k, std::size_t line_no, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what),
          kind_(k),
          line_(line_no) {}

    kind error_kind() const noexcept { return kind_; }
    std::size_t line() const noexcept { return line_; }

private:
    kind kind_;
    std::size_t line_;
};

class pattern_too_large : public std::runtime_error {
public:
    pattern_too_large(int k, int limit)
        : std::runtime_error("pattern has " + std::to_string(k) +
                             " vertices, limit is " + std::to_string(limit)),
          vertices_(k),
          limit_(limit) {}

    int vertices() const noexcept { return vertices_; }
    int limit() const noexcept { return limit_; }

private:
    int vertices_;
    int limit_;
};

class invalid_pattern : public std::runtime_error {
public:
    explicit invalid_pattern(const std::string& what) : std::runtime_error(what) {}
};

class invalid_merge_set : public std::runtime_error {
public:
    explicit invalid_merge_set(const std::string& what) : std::runtime_error(what) {}
};

// The engine refuses patterns on the hard side of the dichotomy instead of
// silently degrading to exponential enumeration.
class dichotomy_violation : public std::runtime_error {
public:
    explicit dichotomy_violation(const std::string& what) : std::runtime_error(what) {}
};

class arithmetic_overflow : public std::runtime_error {
public:
    arithmetic_overflow() : std::runtime_error("count exceeds 64-bit accumulator range") {}
};

class budget_exceeded : public std::runtime_error {
public:
    budget_exceeded(std::uint64_t needed, std::uint64_t budget)
        : std::runtime_error("oracle would enumerate ~" + std::to_string(needed) +
                             " candidate maps, budget is " + std::to_string(budget)) {}
};

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw arithmetic_overflow();
    return r;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw arithmetic_overflow();
    return r;
}

inline std::int64_t checked_add_signed(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw arithmetic_overflow();
    return r;
}

inline std::int64_t checked_mul_signed(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw arithmetic_overflow();
    return r;
}

} // namespace homorbit

#endif
