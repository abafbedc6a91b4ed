#pragma once

#include <stdexcept>
#include <string>

namespace nfc {

enum class Errc {
    NotIrreducible,
    NotMonic,
    InvalidInput,
    PrecisionExhausted,
    RamifiedPrime,
    NotSquarefree,
    SearchExhausted,
    BranchPoint,
    BadPrime,
    DuplicateRationalPrime,
    InfeasibleData,
    ExponentCap,
    RankFull,
    NotSmooth,
    DeltaTooSmall,
    ParseError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

}  // namespace nfc
