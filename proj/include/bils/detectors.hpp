#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bils/model.hpp"

namespace bils {

enum class Method { Rounding, Babai, Bils, BruteForce };

std::string method_name(Method m);

struct DetectResult {
    std::vector<int> x;          // original (un-permuted) column order
    Method method = Method::Rounding;
    double objective = 0.0;      // ||y_tilde - R x_perm||^2
    std::uint64_t nodes = 0;     // complete candidates evaluated (Bils/BruteForce)
};

/// Round to nearest integer; half-way ties go to the smaller integer.
int round_half_down(double v);

/// Componentwise rounding of the unconstrained real solution, clamped
/// to the box.
DetectResult detect_rounding(const TriangularInstance& tri);

/// Nearest-plane sweep from the last coordinate to the first, clamping
/// each conditional center to the box.
DetectResult detect_babai(const TriangularInstance& tri);

/// Global minimizer of ||y_tilde - R x||^2 over the box via depth-first
/// Schnorr-Euchner enumeration, warm-started from the Babai point.
/// Candidates at each level are visited in order of increasing distance
/// to the conditional center (smaller integer first on ties), and a level
/// is abandoned as soon as the partial residual reaches the incumbent.
DetectResult detect_sphere(const TriangularInstance& tri);

/// Exhaustive enumeration of the box; returns the lexicographically
/// smallest minimizer.  Guarded at 1e7 box points.
DetectResult detect_bruteforce(const TriangularInstance& tri);

/// ||y_tilde - R x||^2 for a candidate in the instance's (permuted) order.
double objective_of(const TriangularInstance& tri, const std::vector<int>& x_perm);

} // namespace bils
