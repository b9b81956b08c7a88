#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace recopt {

enum class ErrorCode {
    LengthMismatch,
    NegativeEnergy,
    NonFiniteValue,
    KindConstraintViolated,
    InvalidEfficiency,
    InvalidPrice,
    DuplicateId,
    NotAProsumerWithStorage,
    IndexOutOfRange,
    BoundMismatch,
    InternalInfeasible,
    Infeasible,
    Unbounded,
    IterationLimit,
    TooLarge,
    ParseError,
};

std::string_view to_string(ErrorCode code);

// True for codes caused by bad user input (scenario content or file syntax).
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message,
          std::optional<std::string> entity = std::nullopt,
          std::optional<std::size_t> slot = std::nullopt);

    ErrorCode code() const noexcept { return code_; }
    const std::optional<std::string>& entity() const noexcept { return entity_; }
    const std::optional<std::size_t>& slot() const noexcept { return slot_; }

private:
    ErrorCode code_;
    std::optional<std::string> entity_;
    std::optional<std::size_t> slot_;
};

}  // namespace recopt
