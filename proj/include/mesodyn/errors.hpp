#pragma once

#include <stdexcept>
#include <string>

namespace mesodyn {

/// Input outside the mathematical domain of an operation (q ∉ (0,1), t < 0, grid too small).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Invalid configuration (bad parameters, CFL violation, malformed config file).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller misuse that is not a domain problem, e.g. mismatched time grids.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Non-finite state reached while integrating; carries the last good time.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double last_good_time)
        : std::runtime_error(what), last_good_time_(last_good_time) {}

    double last_good_time() const noexcept { return last_good_time_; }

private:
    double last_good_time_;
};

/// Integration failure of one ensemble member.
class EnsembleError : public IntegrationError {
public:
    EnsembleError(std::size_t member, const IntegrationError& cause)
        : IntegrationError("ensemble member " + std::to_string(member) + ": " + cause.what(),
                           cause.last_good_time()),
          member_(member) {}

    std::size_t member() const noexcept { return member_; }

private:
    std::size_t member_;
};

/// Least-squares fit could not be performed on the supplied data.
class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Degenerate input to a diagnostic (e.g. every Wigner entry masked).
class DegenerateInputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace mesodyn
