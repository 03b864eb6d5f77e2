#pragma once

#include <stdexcept>
#include <string>

namespace zastava {

// malformed or inconsistent input data (files, arguments)
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// a computation that can legitimately fail reported with its failure class
struct ComputationError : std::runtime_error {
    ComputationError(std::string cls, const std::string& what)
        : std::runtime_error(cls + ": " + what), error_class(std::move(cls)) {}
    std::string error_class;
};

inline ComputationError generation_failed(const std::string& what) {
    return ComputationError("GenerationFailed", what);
}
inline ComputationError not_on_open_piece(const std::string& what) {
    return ComputationError("NotOnOpenPiece", what);
}
inline ComputationError infeasible_dims(const std::string& what) {
    return ComputationError("InfeasibleDims", what);
}
inline ComputationError non_diagonalizable(const std::string& what) {
    return ComputationError("NonDiagonalizable", what);
}
inline ComputationError block_leak(const std::string& what) {
    return ComputationError("BlockLeak", what);
}

} // namespace zastava
