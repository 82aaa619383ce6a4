// SPDX-License-Identifier: Apache-2.0
#include "fourrank/common.hpp"

namespace fourrank {

Rng make_stream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                      0x5eed1234u};
    return Rng(seq);
}

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "invalid argument";
        case ErrorCode::Parse: return "parse error";
        case ErrorCode::NotSquarefree: return "not squarefree";
        case ErrorCode::NotIrreducible: return "not irreducible";
        case ErrorCode::NoOddBranchPoint: return "no odd-degree branch point";
        case ErrorCode::RamifiedPoint: return "ramified point";
        case ErrorCode::BudgetExceeded: return "budget exceeded";
        case ErrorCode::InvariantViolation: return "invariant violation";
        case ErrorCode::Infeasible: return "infeasible conditions";
    }
    return "unknown error";
}

void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace fourrank
