#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ptqes {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Syntax error with the byte offset into the source and the token set
/// that would have been accepted at that position.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t offset,
               std::vector<std::string> expected)
        : Error(format(message, offset, expected)),
          offset_(offset),
          expected_(std::move(expected)) {}

    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    static std::string format(const std::string& message, std::size_t offset,
                              const std::vector<std::string>& expected) {
        std::string s = message + " (at byte " + std::to_string(offset);
        if (!expected.empty()) {
            s += "; expected: ";
            for (std::size_t k = 0; k < expected.size(); ++k) {
                if (k) s += ", ";
                s += expected[k];
            }
        }
        return s + ")";
    }

    std::size_t offset_;
    std::vector<std::string> expected_;
};

/// Runtime evaluation failure: division by zero, log of zero, an unbound
/// parameter, or a non-finite result. Carries the abscissa when known.
class EvalError : public Error {
public:
    explicit EvalError(const std::string& message) : Error(message), x_(0), has_x_(false) {}
    EvalError(const std::string& message, double x)
        : Error(message + " at x = " + std::to_string(x)), x_(x), has_x_(true) {}

    bool has_abscissa() const { return has_x_; }
    double abscissa() const { return x_; }

private:
    double x_;
    bool has_x_;
};

/// The generating function vanishes (|U+| <= 1e-12) on a grid point, so the
/// construction degenerates; the limiting recipe handles that case instead.
class ZeroGeneratingFunction : public Error {
public:
    explicit ZeroGeneratingFunction(double x)
        : Error("generating function vanishes at x = " + std::to_string(x)), x_(x) {}

    double abscissa() const { return x_; }

private:
    double x_;
};

class InvalidParameters : public Error {
public:
    using Error::Error;
};

class WrongEntry : public Error {
public:
    using Error::Error;
};

/// Eigenvalue iteration failed to converge; carries which eigenvalue and
/// how many iterations were spent on it.
class NonConvergence : public Error {
public:
    NonConvergence(int index, int iterations)
        : Error("eigenvalue " + std::to_string(index) + " did not converge after " +
                std::to_string(iterations) + " iterations"),
          index_(index),
          iterations_(iterations) {}

    int index() const { return index_; }
    int iterations() const { return iterations_; }

private:
    int index_;
    int iterations_;
};

}  // namespace ptqes
