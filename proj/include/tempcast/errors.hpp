#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tempcast {

/// Base class for all library errors. Catch this to handle any tempcast
/// failure; catch the concrete types to branch on the cause.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- data ingestion ----

struct MissingColumn final : Error {
    std::string column;
    explicit MissingColumn(std::string col)
        : Error("missing required column: " + col), column(std::move(col)) {}
};

struct MalformedRow final : Error {
    std::size_t line;
    MalformedRow(std::size_t line_no, const std::string& reason)
        : Error("line " + std::to_string(line_no) + ": " + reason), line(line_no) {}
};

struct EmptyFile final : Error {
    using Error::Error;
};

struct TooSparse final : Error {
    using Error::Error;
};

struct AllMissing final : Error {
    using Error::Error;
};

struct SpanTooShort final : Error {
    using Error::Error;
};

struct DegenerateSplit final : Error {
    using Error::Error;
};

struct ZeroVariance final : Error {
    using Error::Error;
};

struct SeriesTooShort final : Error {
    using Error::Error;
};

// ---- linear algebra ----

struct NotSymmetric final : Error {
    using Error::Error;
};

struct NotPositiveDefinite final : Error {
    using Error::Error;
};

struct DimensionMismatch final : Error {
    using Error::Error;
};

struct RankDeficient final : Error {
    using Error::Error;
};

struct Underdetermined final : Error {
    using Error::Error;
};

// ---- diagnostics / model fitting ----

struct ConstantSeries final : Error {
    using Error::Error;
};

struct LagTooLarge final : Error {
    using Error::Error;
};

struct NumericalBreakdown final : Error {
    using Error::Error;
};

struct InsufficientData final : Error {
    using Error::Error;
};

struct NonConvergence final : Error {
    using Error::Error;
};

struct AllFitsFailed final : Error {
    using Error::Error;
};

struct StaleCache final : Error {
    using Error::Error;
};

// ---- Gaussian process ----

struct InvalidHyperparameter final : Error {
    using Error::Error;
};

struct DuplicateInputs final : Error {
    using Error::Error;
};

/// Kernel description string does not match the component grammar.
struct MalformedKernel final : Error {
    using Error::Error;
};

// ---- evaluation ----

struct EmptyInput final : Error {
    using Error::Error;
};

struct NonFiniteValue final : Error {
    using Error::Error;
};

// ---- synthetic ----

struct NonStationarySpec final : Error {
    using Error::Error;
};

// ---- model persistence ----

/// Saved model artifact is missing fields, has the wrong shape, or names an
/// unknown model type.
struct MalformedModelFile final : Error {
    using Error::Error;
};

}  // namespace tempcast
