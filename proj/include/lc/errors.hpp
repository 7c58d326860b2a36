#ifndef LC_ERRORS_HPP
#define LC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lc {

// Base class for every error raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A value whose known terms are all zero up to a finite truncation order:
// it may still be a nonzero infinitesimal beyond that order.
struct IndeterminateZeroToOrder : Error {
    explicit IndeterminateZeroToOrder(const std::string& order_text)
        : Error("value vanishes up to order " + order_text +
                "; it may be a nonzero infinitesimal beyond the truncation"),
          order(order_text) {}
    std::string order;
};

struct IndeterminateSign : Error {
    explicit IndeterminateSign(const std::string& msg) : Error(msg) {}
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
    explicit DivisionByZero(const std::string& msg) : Error(msg) {}
};

struct NonPositiveRadicand : Error {
    explicit NonPositiveRadicand(const std::string& msg) : Error(msg) {}
};

struct LeadingCoefficientNotPerfectPower : Error {
    explicit LeadingCoefficientNotPerfectPower(const std::string& msg) : Error(msg) {}
};

struct TruncationBeyondKnowledge : Error {
    explicit TruncationBeyondKnowledge(const std::string& msg) : Error(msg) {}
};

struct BeyondTruncation : Error {
    explicit BeyondTruncation(const std::string& msg) : Error(msg) {}
};

// Comparisons of the order-of-magnitude maps are undefined at zero.
struct ZeroOperand : Error {
    explicit ZeroOperand(const std::string& msg) : Error(msg) {}
};

// Interval endpoints in set descriptions must be exact.
struct TruncatedEndpoint : Error {
    explicit TruncatedEndpoint(const std::string& msg) : Error(msg) {}
};

struct UnboundedLength : Error {
    UnboundedLength() : Error("an unbounded interval has no length") {}
};

struct IndeterminateOverlap : Error {
    explicit IndeterminateOverlap(const std::string& msg) : Error(msg) {}
};

struct OverlapDetected : Error {
    explicit OverlapDetected(const std::string& msg) : Error(msg) {}
};

// A claimed decay threshold failed a spot check.
struct CertificateViolation : Error {
    CertificateViolation(long index, const std::string& msg)
        : Error("certificate violated at index " + std::to_string(index) + ": " + msg),
          index(index) {}
    long index;
};

struct GapCertificateViolation : Error {
    explicit GapCertificateViolation(const std::string& msg) : Error(msg) {}
};

struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& msg) : Error(msg) {}
};

struct NotEvaluable : Error {
    explicit NotEvaluable(const std::string& msg) : Error(msg) {}
};

struct SyntaxError : Error {
    SyntaxError(std::size_t begin, std::size_t end, const std::string& msg)
        : Error("syntax error at " + std::to_string(begin) + ".." + std::to_string(end) +
                ": " + msg),
          begin(begin), end(end) {}
    std::size_t begin;
    std::size_t end;
};

struct DuplicateExponent : Error {
    explicit DuplicateExponent(const std::string& exponent_text)
        : Error("duplicate exponent " + exponent_text + " in series") {}
};

struct UnknownPattern : Error {
    explicit UnknownPattern(const std::string& text)
        : Error("unknown countable-family pattern: " + text) {}
};

struct UnboundedComplement : Error {
    UnboundedComplement()
        : Error("complement requires a bounded ambient interval (use `~expr within [a,b]`)") {}
};

} // namespace lc

#endif
