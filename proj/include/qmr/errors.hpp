#pragma once

#include <stdexcept>
#include <string>

namespace qmr {

/// Bad parameters or malformed input. The message names the violated invariant.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An exhaustive computation would exceed its workload budget.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, std::string workload)
        : std::runtime_error(what + " (workload " + workload + ")"), workload_(std::move(workload)) {}

    const std::string& workload() const noexcept { return workload_; }

private:
    std::string workload_;
};

/// A proven statement failed on a concrete instance. Either the statement is
/// being applied outside its hypotheses or the implementation is wrong.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace qmr
