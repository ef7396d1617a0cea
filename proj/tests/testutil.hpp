#pragma once
// Shared helpers for the test suites.

#include <string>

#include "tracelab/bitstring.hpp"
#include "tracelab/rng.hpp"

namespace tracelab::testutil {

inline BitString random_bits(CounterRng& rng, long length) {
    BitString s;
    for (long i = 0; i < length; ++i) s.push_back(static_cast<int>(rng.next_u32() & 1u));
    return s;
}

inline BitString zigzag(long k) {
    BitString s;
    for (long i = 0; i < k; ++i) {
        s.push_back(0);
        s.push_back(1);
    }
    return s;
}

}  // namespace tracelab::testutil
