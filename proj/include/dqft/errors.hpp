#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dqft {

// Precondition failures on public operations: non-finite components,
// non-pure/non-unit arguments, bad variant tags, bad mask lengths.
class invalid_argument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input lies on a singularity of the requested map (e.g. |q_r| ~ 0).
class degenerate_input : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A spectrum was handed to the inverse transform of the other side.
class side_mismatch : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Degenerate sample inside a sequence; carries the offending index.
class degenerate_sample : public degenerate_input {
public:
    degenerate_sample(std::size_t index, const std::string& what)
        : degenerate_input("sample " + std::to_string(index) + ": " + what), index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

// Track-level invariant violation (non-unit rotation, non-uniform timing, ...).
class invariant_violation : public invalid_argument {
public:
    invariant_violation(std::size_t index, const std::string& what)
        : invalid_argument("sample " + std::to_string(index) + ": " + what), index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

// Malformed CSV/JSON input. Line numbers are 1-based; 0 means "not line oriented".
class parse_error : public std::runtime_error {
public:
    parse_error(std::size_t line, const std::string& what)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dqft
