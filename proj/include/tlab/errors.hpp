#pragma once

#include <stdexcept>
#include <string>

namespace tlab {

// Process exit codes used by the CLI.
enum ExitCode : int {
    EXIT_OK = 0,
    EXIT_CONFIG = 2,
    EXIT_DEGENERACY = 3,
    EXIT_PRECISION = 4,
    EXIT_CRITERION_FAIL = 5,
};

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
    virtual int exit_code() const { return EXIT_CONFIG; }
};

struct RationalInput : Error {
    explicit RationalInput(const std::string& msg) : Error("rational input: " + msg) {}
    int exit_code() const override { return EXIT_DEGENERACY; }
};

struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& msg) : Error("precision exhausted: " + msg) {}
    int exit_code() const override { return EXIT_PRECISION; }
};

struct DepthError : Error {
    explicit DepthError(const std::string& msg) : Error("depth error: " + msg) {}
};

struct BoundaryHit : Error {
    explicit BoundaryHit(const std::string& msg) : Error("boundary hit: " + msg) {}
    int exit_code() const override { return EXIT_DEGENERACY; }
};

struct DegeneracyError : Error {
    explicit DegeneracyError(const std::string& msg) : Error("degeneracy: " + msg) {}
    int exit_code() const override { return EXIT_DEGENERACY; }
};

struct CodingAmbiguity : Error {
    explicit CodingAmbiguity(const std::string& msg) : Error("coding ambiguity: " + msg) {}
    int exit_code() const override { return EXIT_DEGENERACY; }
};

struct SamplingError : Error {
    explicit SamplingError(const std::string& msg) : Error("sampling error: " + msg) {}
};

struct ReturnTimeout : Error {
    explicit ReturnTimeout(const std::string& msg) : Error("return timeout: " + msg) {}
};

struct NearResonance : Error {
    explicit NearResonance(const std::string& msg) : Error("near resonance: " + msg) {}
    int exit_code() const override { return EXIT_PRECISION; }
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error("config: " + msg) {}
};

} // namespace tlab
