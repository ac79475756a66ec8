#pragma once

// Builtin Cayley tables (cyclic, elementary abelian, dihedral, generalized
// quaternion, A4, direct products, one presented group of order 16), plus
// finite presentations via coset enumeration and plain-text table I/O.

#include <iosfwd>
#include <string>
#include <vector>

#include "moufang/loop.hpp"

namespace moufang {

// names: c<n>, e<2^k>, v4, d4 (= v4), d<2n> (order 2n), q<2^n>, a4,
// g16_gamma2c1, and products joined with 'x' such as d8xc2
LoopTable builtin(const std::string& name);
std::vector<std::string> builtin_names();

struct Presentation {
    int generators = 0;
    // relator words over signed 1-based generator indices: +1 = g1, -1 = g1^{-1}
    std::vector<std::vector<int>> relators;
};

// coset enumeration over the trivial subgroup; the returned table is the
// group, verified associative with every relator re-checked
LoopTable group_from_presentation(const Presentation&, int max_cosets = 1 << 16);

// .tbl format: first line n, then n rows of n space-separated indices
LoopTable read_table(std::istream&);
void write_table(std::ostream&, const LoopTable&);
LoopTable read_table_file(const std::string& path);
void write_table_file(const std::string& path, const LoopTable&);

} // namespace moufang
