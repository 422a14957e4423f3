#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rbc {

// Runtime failures of a machine execution. `position` is the index of the
// input symbol being consumed when the failure happened (0-based; -1 when
// the failure is not tied to a consumed symbol, e.g. the initial gap).
class RunError : public std::runtime_error {
public:
    enum class Kind { UndefinedTransition, BudgetExceeded, ProtocolViolation };

    RunError(Kind kind, std::string msg, std::int64_t position = -1)
        : std::runtime_error(std::move(msg)), kind_(kind), position_(position) {}

    Kind kind() const { return kind_; }
    std::int64_t position() const { return position_; }

private:
    Kind kind_;
    std::int64_t position_;
};

class MalformedStream : public std::runtime_error {
public:
    MalformedStream(std::string msg, std::int64_t bit_offset)
        : std::runtime_error(std::move(msg)), bit_offset_(bit_offset) {}

    std::int64_t bit_offset() const { return bit_offset_; }

private:
    std::int64_t bit_offset_;
};

class ParamOutOfRange : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ConfigInvalid : public std::invalid_argument {
public:
    ConfigInvalid(std::string field, std::string msg)
        : std::invalid_argument(field + ": " + msg), field_(std::move(field)) {}

    const std::string& field() const { return field_; }

private:
    std::string field_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace rbc
