#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "essnorm/operator.hpp"

namespace essnorm {

/// u on Omega = Omega_a u Omega_d: stored atom values u(B_1..B_N), a closed-form
/// tail for u(B_n), n > N, and one value per diffuse cell.
struct EssNormProblem {
    SpacePtr space;
    std::vector<double> u_atoms;
    TailDescriptor u_tail;
    std::vector<double> u_diffuse;

    /// The discretized symbol as a step function on space.
    StepFunction u() const;
};

/// Validates the layout. The tail of u is taken from the space's atom tail.
EssNormProblem make_problem(SpacePtr space, std::vector<double> u_atoms, std::vector<double> u_diffuse = {});

/// max{ sup |u on Omega_d|, limsup_n |u(B_n)| }.
double essential_norm(const EssNormProblem& problem);

/// D_K = diag(K(n, n)): on each atom P_n K P_n = d_n P_n.
MultiplicationOperator diagonal_compactification(const MatrixOperator& k);

enum class Construction { witness_pair, pinching_diagonal };
std::string_view to_string(Construction c);

/// A certified lower bound for ||M_u + K||.
///
/// witness_pair: witness is f_n or f_n - f_m and ||(M_u + K) w|| / ||w|| == bound.
/// pinching_diagonal: witness is the normalized indicator of the column where
/// M_u + D_K attains its norm; ||(M_u + D_K) w|| / ||w|| reproduces bound and
/// ||(M_u + K) w|| / ||w|| >= bound.
struct LowerBoundCertificate {
    double bound = 0.0;
    StepFunction witness;
    Construction construction = Construction::witness_pair;
    double p = 1.0;
};

/// ||M_u + K|| >= ||M_u + D_K|| via the full diagonal pinch. Requires p = 1.
LowerBoundCertificate pinching_lower_bound(const StepFunction& u, const MatrixOperator& k, double p = 1.0);

/// ||(M_u + K) g||_p / ||g||_p.
double witness_ratio(const StepFunction& u, const MatrixOperator& k, const StepFunction& g, double p);
double witness_ratio(const StepFunction& u, const LowRankOperator& k, const StepFunction& g, double p);

/// Checks that a certificate is reproduced by its witness (to rel_tol) and, at
/// p = 1, that it does not exceed the exact norm of M_u + K.
bool verify_certificate(const LowerBoundCertificate& cert, const StepFunction& u, const MatrixOperator& k,
                        double rel_tol = 1e-12);

/// Descending superlevel sets A_1 > A_2 > ... of |u| on the diffuse cells.
/// A_1 = { cells : |u| > max|u| - eps } in coordinate order; each next set keeps
/// the trailing floor(|A_n| / 2) cells of the previous one; stops at one cell.
/// Indices are global coordinates of space.
std::vector<std::vector<std::size_t>> witness_sets(const MeasureSpace& space, std::span<const double> u_diffuse,
                                                   double eps);

/// Best ratio ||(M_u + K) g|| / ||g|| over g in {f_n} u {f_n - f_m : n < m},
/// f_n the unit normalized indicators of the witness sets.
LowerBoundCertificate witness_lower_bound(const EssNormProblem& problem, const MatrixOperator& k, double eps,
                                          double p);
LowerBoundCertificate witness_lower_bound(const EssNormProblem& problem, const LowRankOperator& k, double eps,
                                          double p);

/// (||Q_n K||_1) for n = 0..n_max, Q_n removing the first n coordinates.
std::vector<double> qn_decay_profile(const MatrixOperator& k, std::size_t n_max);

/// inf over diagonal perturbations supported on at most k coordinates of
/// max_i |u_i + d_i|: the (k+1)-th largest |u_i|, or 0 once k >= size.
double best_diagonal_rank_k(std::span<const double> u_values, std::size_t k);

/// K = -M_u (I - Q_n): cancels u on the first n atoms.
MatrixOperator truncation_perturbation(const StepFunction& u, std::size_t n);

/// ||M_u + K|| for the truncation perturbation at n, including the closed-form
/// sup of the atom tail past the stored prefix. An upper bound for ||M_u||_e.
double truncation_upper_bound(const EssNormProblem& problem, std::size_t n);

/// A kernel sum_r (int eta_r f) g_r given by functions on the diffuse interval,
/// discretized by cell averaging so the same kernel exists at every level.
/// On atoms eta_r and g_r vanish.
struct FunctionKernel {
    std::vector<std::pair<CellFunction, CellFunction>> terms;

    LowRankOperator discretize(const SpacePtr& space) const;
};

} // namespace essnorm
