#pragma once

#include <stdexcept>
#include <string>

namespace ghwlab {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The request itself was invalid: a violated precondition, an unsupported
// parameter combination, or a resource guard. Maps to CLI exit code 2.
struct PreconditionError : Error {
    using Error::Error;
};

// A mathematically guaranteed identity failed to hold. These signal an
// implementation bug (or bad input data), never a user mistake. Maps to
// CLI exit code 1.
struct MathCheckError : Error {
    using Error::Error;
};

struct NotOddPrime : PreconditionError {
    explicit NotOddPrime(long long p)
        : PreconditionError("p = " + std::to_string(p) + " is not an odd prime") {}
};

struct SizeGuardExceeded : PreconditionError {
    SizeGuardExceeded(long long q, long long guard)
        : PreconditionError("q = " + std::to_string(q) + " exceeds the size guard " +
                            std::to_string(guard)) {}
};

struct ZeroHasNoLog : PreconditionError {
    ZeroHasNoLog() : PreconditionError("discrete log of zero is undefined") {}
};

struct NDoesNotDivide : PreconditionError {
    NDoesNotDivide(long long N, long long qm1)
        : PreconditionError("N = " + std::to_string(N) + " does not divide q-1 = " +
                            std::to_string(qm1)) {}
};

struct OrderAssumptionViolated : PreconditionError {
    OrderAssumptionViolated(long long n1, long long p, int m)
        : PreconditionError("ord_{" + std::to_string(n1) + "}(" + std::to_string(p) +
                            ") != " + std::to_string(m) +
                            "; the standing order assumption fails for this (p, m, N)") {}
};

struct IsoPreconditionFailed : PreconditionError {
    IsoPreconditionFailed(long long N1, long long q)
        : PreconditionError("family B requires N1 <= sqrt(q): N1 = " + std::to_string(N1) +
                            ", q = " + std::to_string(q)) {}
};

struct SkewCanonicalUnavailable : PreconditionError {
    explicit SkewCanonicalUnavailable(long long q)
        : PreconditionError("canonical skew set <alpha^2> needs q = 3 (mod 4), got q = " +
                            std::to_string(q)) {}
};

struct NotInjective : PreconditionError {
    NotInjective(int k, int m)
        : PreconditionError("code map is not injective (k = " + std::to_string(k) +
                            " < m = " + std::to_string(m) + ")") {}
};

struct EnumerationBudgetExceeded : PreconditionError {
    unsigned long long cost;
    unsigned long long budget;
    int r;
    EnumerationBudgetExceeded(unsigned long long cost_, unsigned long long budget_, int r_)
        : PreconditionError("enumeration cost " + std::to_string(cost_) + " exceeds budget " +
                            std::to_string(budget_) + " at r = " + std::to_string(r_)),
          cost(cost_), budget(budget_), r(r_) {}
};

struct ArithmeticOverflow : PreconditionError {
    explicit ArithmeticOverflow(const std::string& what)
        : PreconditionError("exact arithmetic overflow: " + what) {}
};

struct NoSolutionFound : MathCheckError {
    explicit NoSolutionFound(const std::string& what)
        : MathCheckError("no Diophantine witness found: " + what) {}
};

struct NonIntegerCoefficient : MathCheckError {
    explicit NonIntegerCoefficient(const std::string& what)
        : MathCheckError("period polynomial coefficient is not a rational integer: " + what) {}
};

struct BoundViolated : MathCheckError {
    explicit BoundViolated(const std::string& what)
        : MathCheckError("period modulus bound violated: " + what) {}
};

struct MultisetMismatch : MathCheckError {
    explicit MultisetMismatch(const std::string& what)
        : MathCheckError("multiset lemma check failed: " + what) {}
};

struct WeightFormulaMismatch : MathCheckError {
    explicit WeightFormulaMismatch(const std::string& what)
        : MathCheckError("family-B weight formula check failed: " + what) {}
};

struct NonIntegerResult : MathCheckError {
    explicit NonIntegerResult(const std::string& what)
        : MathCheckError("formula produced a non-integer where an integer is required: " + what) {}
};

struct PeriodsNotRational : MathCheckError {
    explicit PeriodsNotRational(const std::string& what)
        : MathCheckError("expected rational Gauss periods: " + what) {}
};

struct CorollaryConflict : MathCheckError {
    explicit CorollaryConflict(const std::string& what)
        : MathCheckError("overlapping closed forms disagree: " + what) {}
};

}  // namespace ghwlab
