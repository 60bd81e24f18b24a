#pragma once

#include <stdexcept>
#include <string>

namespace derivlab {

// Every failure mode the library reports deliberately. Checks that produce
// verdict reports catch these and turn them into ERROR-status entries.
enum class Errc {
    DivisionByZero,
    TowerMismatch,
    PoleHit,
    OutOfDomain,
    RationalRootFound,
    MultipleTranscendentals,
    TranscendentalNotFirst,
    DuplicateName,
    UncertifiedIrreducibility,
    ReducibleMinPoly,
    MinPolyDegree,
    DependentBasis,
    LengthMismatch,
    MissingImage,
    InseparableGenerator,
    BasePointDependence,
    DegreeExceeded,
    ArityError,
    ParameterOutOfRange,
    NonInvertible,
    SyntaxError,
    UnknownName,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

// Parse diagnostics carry a 1-based source position.
class ParseError : public Error {
public:
    ParseError(int line, int col, const std::string& msg)
        : Error(Errc::SyntaxError,
                "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg),
          line(line),
          col(col) {}

    int line;
    int col;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

} // namespace derivlab
