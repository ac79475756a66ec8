#pragma once

// Signed residue window M = {1-m, ..., m} with carry-aware modular
// arithmetic. The carry of a sum tells whether it left the window above
// or below; add/sub fold the result back into M.

#include <string>

#include "moufang/errors.hpp"

namespace moufang {

// +1 if t lies above the window {1-m,...,m}, -1 if below, 0 inside.
constexpr int carry(int m, int t) { return t > m ? 1 : (t < 1 - m ? -1 : 0); }

struct Window {
    int m;

    explicit Window(int half) : m(half) {
        if (m < 1) fail("InvalidParams", "window half-size must be >= 1");
    }

    bool contains(int i) const { return carry(m, i) == 0; }
    int sigma(int t) const { return carry(m, t); }

    int add(int i, int j) const {
        require(i);
        require(j);
        return i + j - 2 * m * carry(m, i + j);
    }

    int sub(int i, int j) const {
        require(i);
        require(j);
        return i - j - 2 * m * carry(m, i - j);
    }

    int neg(int i) const { return sub(0, i); }

    void require(int i) const {
        if (!contains(i))
            fail("InvalidParams",
                 std::to_string(i) + " outside window of half-size " + std::to_string(m));
    }
};

} // namespace moufang
