#pragma once

#include <complex>
#include <vector>

#include "insola/poly.hpp"

namespace insola {

/// max_k |c_k| * max(1, |r|)^k — the coefficient scale entering the root
/// acceptance bound.
double residual_scale(const FloatPoly& p, std::complex<double> r);

/// All deg(p) complex roots, with multiplicity, after stripping leading
/// coefficients with |c| <= 1e-14 * max|c|. Every returned root r satisfies
/// |p(r)| <= root_tol * residual_scale(p, r) for the stripped polynomial;
/// NonConvergentRoots is thrown when the iteration cap is hit with the bound
/// still violated. Simultaneous Aberth-Ehrlich iteration with convex-hull
/// initial radii.
std::vector<std::complex<double>> roots_complex(const FloatPoly& p, double root_tol);

}  // namespace insola
