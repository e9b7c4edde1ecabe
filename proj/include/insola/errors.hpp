#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace insola {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

/// Expression parser failure. Carries the byte offset of the offending
/// character and the set of tokens that would have been accepted there.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t offset, std::vector<std::string> expected)
        : Error(msg + " at offset " + std::to_string(offset)),
          offset_(offset),
          expected_(std::move(expected)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

/// Exponent written as `^ -k`; only nonnegative integer exponents exist.
class NegativeExponent : public ParseError {
public:
    explicit NegativeExponent(std::size_t offset)
        : ParseError("negative exponent", offset, {"unsigned integer"}) {}
};

/// Identifier other than the variables admitted by the grammar in use.
class UnknownIdentifier : public ParseError {
public:
    UnknownIdentifier(const std::string& name, std::size_t offset, std::vector<std::string> allowed)
        : ParseError("unknown identifier '" + name + "'", offset, std::move(allowed)),
          name_(name) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// x -> x/x0 rescale requested with x0 = 0.
class ZeroScale : public Error {
public:
    ZeroScale() : Error("scale center must be nonzero") {}
};

/// Exact division by the infinitesimal indeterminate hit a term of degree 0 in it.
class NotDivisibleByAlpha : public Error {
public:
    explicit NotDivisibleByAlpha(const std::string& monomial)
        : Error("polynomial is not divisible by alpha; offending monomial: " + monomial) {}
};

/// Rational coefficient does not fit into a double.
class Overflow : public Error {
public:
    explicit Overflow(const std::string& monomial)
        : Error("coefficient exceeds double range in monomial " + monomial),
          monomial_(monomial) {}

    const std::string& monomial() const noexcept { return monomial_; }

private:
    std::string monomial_;
};

/// Coefficient-matching step whose equation still contains two or more unknowns.
class UnderdeterminedStep : public Error {
public:
    UnderdeterminedStep(int step, std::vector<int> unknowns, const std::string& equation)
        : Error("step " + std::to_string(step) + " is underdetermined (" +
                std::to_string(unknowns.size()) + " unknowns) in equation " + equation),
          step_(step),
          unknowns_(std::move(unknowns)) {}

    int step() const noexcept { return step_; }
    const std::vector<int>& unknowns() const noexcept { return unknowns_; }

private:
    int step_;
    std::vector<int> unknowns_;
};

/// Coefficient-matching step whose equation has no solution.
class InconsistentStep : public Error {
public:
    InconsistentStep(int step, const std::string& equation)
        : Error("step " + std::to_string(step) + " has no solution: " + equation + " = 0"),
          step_(step) {}

    int step() const noexcept { return step_; }

private:
    int step_;
};

/// More recipe branches than the caller allowed.
class BranchOverflow : public Error {
public:
    explicit BranchOverflow(int max_branches)
        : Error("recipe search exceeded " + std::to_string(max_branches) + " branches") {}
};

/// Step equation not solvable in closed form over the Gaussian rationals.
class IrrationalStep : public Error {
public:
    IrrationalStep(int step, const std::string& equation)
        : Error("step " + std::to_string(step) + " is not exactly solvable: " + equation + " = 0"),
          step_(step),
          equation_(equation) {}

    int step() const noexcept { return step_; }
    const std::string& equation() const noexcept { return equation_; }

private:
    int step_;
    std::string equation_;
};

/// No polynomial of the requested degree satisfies the initial condition
/// together with the matching equations.
class EmptyFeasibleSet : public Error {
public:
    explicit EmptyFeasibleSet(const std::string& detail)
        : Error("feasible set is empty: " + detail) {}
};

/// Root iteration hit its sweep cap with the residual still above the bound.
class NonConvergentRoots : public Error {
public:
    explicit NonConvergentRoots(double worst_residual)
        : Error("root iteration did not converge; worst scaled residual " +
                std::to_string(worst_residual)),
          worst_residual_(worst_residual) {}

    double worst_residual() const noexcept { return worst_residual_; }

private:
    double worst_residual_;
};

}  // namespace insola
