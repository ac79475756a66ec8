#pragma once

// Doubling constructions: adjoin a mirrored copy of a group with twisted
// products. The plain double is Moufang and is associative exactly when the
// group is abelian; the generalized double twists the mirrored quadrant by
// an involutive antiautomorphism and a central element.

#include <optional>
#include <vector>

#include "moufang/loop.hpp"

namespace moufang {

struct CheinDouble {
    LoopTable base;  // the group being doubled
    LoopTable table; // order 2|base|; the restriction to 0..|base|-1 is base itself

    int embed(int x) const { return x; }
    int bar(int x) const { return x + base.size(); }
};

// products: x y, x (y-bar) = (y x)-bar, (x-bar) y = (x y^-1)-bar,
// (x-bar)(y-bar) = y^-1 x; NotAGroup unless the input is associative
CheinDouble mg2(const LoopTable& group);

struct AntiAutomorphismData {
    explicit AntiAutomorphismData(LoopTable g) : base(std::move(g)) {}
    LoopTable base;
    std::vector<int> theta; // involutive antiautomorphism fixing h, with x·theta(x) central
    int h = 0;              // nonidentity central element
};

// InvalidData unless: base is a group, theta an involutive antiautomorphism,
// theta(h) = h, x·theta(x) central for all x, h nonidentity central
void validate(const AntiAutomorphismData&);

// like mg2 except (x-bar) y = (x·theta(y))-bar and (x-bar)(y-bar) = theta(y)·x·h
LoopTable mg_theta_h(const AntiAutomorphismData&);

// theta = inversion; validate() then requires h to be a central involution
AntiAutomorphismData inversion_double(const LoopTable& group, int h);

// searches for an index-2 subgroup whose outside elements are involutions
// reproducing the doubled-product pattern; returns that subgroup's table
std::optional<LoopTable> is_chein_double(const LoopTable& L);

} // namespace moufang
