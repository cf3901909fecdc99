#pragma once

#include <cmath>
#include <vector>

#include "sensint/errors.hpp"

namespace sensint::test {

/// Code of the Error thrown by fn; InvalidArgument stands in for "no throw"
/// only when paired with a check on a different code.
template <class F>
ErrorCode code_of(F&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvalidArgument;
}

inline std::vector<double> logspace(double lo_exp, double hi_exp, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(std::pow(10.0, lo_exp + (hi_exp - lo_exp) * i / (n - 1)));
    return out;
}

}  // namespace sensint::test
