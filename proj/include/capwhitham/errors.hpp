#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace capwhitham {

/// Key/value diagnostics attached to every library error.
using ErrorContext = std::vector<std::pair<std::string, std::string>>;

class Error : public std::runtime_error {
public:
    Error(const std::string& code, const std::string& message, ErrorContext context = {})
        : std::runtime_error(message), code_(code), context_(std::move(context)) {}

    const std::string& code() const noexcept { return code_; }
    const ErrorContext& context() const noexcept { return context_; }
    virtual int exit_code() const noexcept { return 1; }

private:
    std::string code_;
    ErrorContext context_;
};

class DomainError : public Error {
public:
    DomainError(const std::string& message, ErrorContext context = {},
                const std::string& code = "domain")
        : Error(code, message, std::move(context)) {}
    int exit_code() const noexcept override { return 2; }
};

// c - m_T(kappa k) vanished for a non-kernel k.
class NearResonanceError : public DomainError {
public:
    NearResonanceError(int k, double gap)
        : DomainError("near resonance at wavenumber " + std::to_string(k),
                      {{"k", std::to_string(k)}, {"gap", std::to_string(gap)}},
                      "near_resonance"),
          k_(k) {}
    int wavenumber() const noexcept { return k_; }

private:
    int k_;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& message, ErrorContext context = {},
                     const std::string& code = "convergence")
        : Error(code, message, std::move(context)) {}
    int exit_code() const noexcept override { return 3; }
};

class ResourceError : public Error {
public:
    ResourceError(const std::string& message, ErrorContext context = {})
        : Error("resource", message, std::move(context)) {}
    int exit_code() const noexcept override { return 4; }
};

} // namespace capwhitham
