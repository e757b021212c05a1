#pragma once

#include <span>
#include <vector>

#include "essnorm/operator.hpp"

namespace essnorm {

// In a finite atomic discretization every operator is regular, and the
// lattice operations defined through sup/inf over positive decompositions
// reduce to entrywise operations on indicator coefficients. The defining
// formulas live in oracle.hpp and are only used to check these.

/// |S|: entrywise absolute value.
MatrixOperator modulus(const MatrixOperator& s);
/// S v T: entrywise max.
MatrixOperator join(const MatrixOperator& s, const MatrixOperator& t);
/// S ^ T: entrywise min.
MatrixOperator meet(const MatrixOperator& s, const MatrixOperator& t);

/// ||S||_r = || |S| ||. Exact at p = 1, a lower bound otherwise.
double regular_norm(const MatrixOperator& s, double p);

/// S = centre_part + disjoint_part with centre_part a multiplication operator
/// and disjoint_part in the disjoint complement of the centre (zero diagonal).
struct RegularDecomposition {
    MultiplicationOperator centre_part;
    MatrixOperator disjoint_part;
};

/// Band projection onto the centre: diagonal extraction.
RegularDecomposition centre_project(const MatrixOperator& s);

/// True iff |S| ^ I = 0, i.e. S is disjoint from every positive multiplication operator.
bool disjoint_from_centre(const MatrixOperator& s);

/// For each level L, the norm of the centre part of the discretized rank-one
/// operator f -> (int eta f) g on the diffuse interval at level L, namely
/// max_i |g_i eta_i mu_i| with eta_i, g_i the cell averages. Computed from the
/// diagonal alone so fine levels do not need the dense matrix.
std::vector<double> centre_decay_under_refinement(const CellFunction& eta, const CellFunction& g,
                                                  const MeasureSpace& diffuse_template, std::span<const int> levels);

} // namespace essnorm
