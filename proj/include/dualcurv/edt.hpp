#pragma once

#include <vector>

namespace dualcurv {

/// Exact squared Euclidean distance transform on a grid of lattice step 1:
/// for every cell, its squared distance to the nearest cell with
/// member[idx] == 0 (row-major, idx = j*nx + i). Cells of an all-member
/// grid get "infinity" (a value larger than any squared grid distance).
/// Two-pass parabolic-envelope algorithm; O(nx*ny).
std::vector<double> squared_distance_to_complement(const std::vector<char>& member,
                                                   int nx, int ny);

} // namespace dualcurv
