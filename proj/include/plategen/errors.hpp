#pragma once

#include <stdexcept>
#include <string>

namespace plategen {

// All library failures derive from std::runtime_error so callers can catch
// one base type; distinct types exist where callers branch on the cause.

struct InvalidGeometry : std::runtime_error {
    explicit InvalidGeometry(const std::string& what) : std::runtime_error(what) {}
};

struct GeometryOverflow : std::runtime_error {
    explicit GeometryOverflow(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyLeftHandSide : std::runtime_error {
    explicit EmptyLeftHandSide(const std::string& what) : std::runtime_error(what) {}
};

struct OracleBudgetExceeded : std::runtime_error {
    explicit OracleBudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct NotAMatch : std::runtime_error {
    explicit NotAMatch(const std::string& what) : std::runtime_error(what) {}
};

struct StepLimitExceeded : std::runtime_error {
    explicit StepLimitExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

struct TraceDiverged : std::runtime_error {
    explicit TraceDiverged(const std::string& what) : std::runtime_error(what) {}
};

struct DeserializeError : std::runtime_error {
    explicit DeserializeError(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownBreaker : std::runtime_error {
    explicit UnknownBreaker(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownRoomShape : std::runtime_error {
    explicit UnknownRoomShape(const std::string& what) : std::runtime_error(what) {}
};

struct DomeWithoutCourtyard : std::runtime_error {
    explicit DomeWithoutCourtyard(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace plategen
