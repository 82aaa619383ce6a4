// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace fourrank {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Pseudo-random engine used everywhere. Always passed explicitly.
using Rng = std::mt19937_64;

/// Independent stream for work item `index` under a run-level `seed`.
/// Streams depend only on (seed, index), never on the worker that runs them.
Rng make_stream(std::uint64_t seed, std::uint64_t index);

enum class ErrorCode {
    InvalidArgument = 1,
    Parse,
    NotSquarefree,
    NotIrreducible,
    NoOddBranchPoint,
    RamifiedPoint,
    BudgetExceeded,
    InvariantViolation,
    Infeasible,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

inline void require(bool cond, ErrorCode code, const char* what) {
    if (!cond) fail(code, what);
}

}  // namespace fourrank
