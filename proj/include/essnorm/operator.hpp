#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "essnorm/kernels.hpp"
#include "essnorm/lpspace.hpp"

namespace essnorm {

/// Dense operator on indicator coefficients: (Af)_i = sum_j A(i, j) f_j.
/// At desk scale every operator is finite rank; compactness shows up only as
/// behaviour across truncations and refinements.
class MatrixOperator {
public:
    explicit MatrixOperator(SpacePtr space);
    MatrixOperator(SpacePtr space, std::vector<double> row_major);

    static MatrixOperator zero(SpacePtr space) { return MatrixOperator(std::move(space)); }
    static MatrixOperator identity(SpacePtr space);
    static MatrixOperator diagonal(SpacePtr space, std::span<const double> d);

    const SpacePtr& space() const { return space_; }
    std::size_t dimension() const { return n_; }

    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    std::span<const double> entries() const { return a_; }

    kernels::DenseView view() const { return {a_, n_, space_->masses()}; }

    StepFunction apply(const StepFunction& f) const;
    std::vector<double> diagonal_entries() const;

    MatrixOperator& operator+=(const MatrixOperator& o);
    MatrixOperator& operator-=(const MatrixOperator& o);
    MatrixOperator& operator*=(double s);

    bool operator==(const MatrixOperator& o) const;

private:
    SpacePtr space_;
    std::size_t n_ = 0;
    std::vector<double> a_;
};

MatrixOperator operator+(MatrixOperator a, const MatrixOperator& b);
MatrixOperator operator-(MatrixOperator a, const MatrixOperator& b);
MatrixOperator operator*(double s, MatrixOperator a);
/// Composition (A B) f = A (B f).
MatrixOperator operator*(const MatrixOperator& a, const MatrixOperator& b);

/// M_u f = u f. Diagonal in indicator coordinates.
class MultiplicationOperator {
public:
    explicit MultiplicationOperator(StepFunction u) : u_(std::move(u)) {}

    const StepFunction& symbol() const { return u_; }
    std::span<const double> u_values() const { return u_.coefficients(); }
    const SpacePtr& space() const { return u_.space(); }

    StepFunction apply(const StepFunction& f) const;
    MatrixOperator to_matrix() const;
    /// ||M_u|| = max_i |u_i| on every L_p, independent of the masses.
    double norm() const;

    bool operator==(const MultiplicationOperator&) const = default;

private:
    StepFunction u_;
};

MatrixOperator operator+(const MultiplicationOperator& m, const MatrixOperator& k);

/// Sum of rank-one terms f -> (int eta_r f dmu) g_r kept in factored form, for
/// kernels on fine diffuse levels where a dense matrix would not fit.
class LowRankOperator {
public:
    explicit LowRankOperator(SpacePtr space) : space_(std::move(space)) {}

    void add_term(StepFunction eta, StepFunction g);

    const SpacePtr& space() const { return space_; }
    std::size_t rank() const { return terms_.size(); }
    const std::vector<std::pair<StepFunction, StepFunction>>& terms() const { return terms_; }

    StepFunction apply(const StepFunction& f) const;
    /// Diagonal entries sum_r g_r,i eta_r,i mu_i without forming the matrix.
    std::vector<double> diagonal_entries() const;
    MatrixOperator to_matrix() const;

private:
    SpacePtr space_;
    std::vector<std::pair<StepFunction, StepFunction>> terms_;
};

MultiplicationOperator mult_op(StepFunction u);

/// K f = (int eta f dmu) g; entries K(i, j) = g_i eta_j mu_j.
MatrixOperator rank_one_diffuse(const StepFunction& eta, const StepFunction& g);

/// K f = (sum_{k != j} f_k eta_k mu_k) 1_{B_j}; only row j is nonzero and the
/// (j, j) entry vanishes. Purely atomic spaces only; j is 0-based.
MatrixOperator rank_one_atomic_offdiag(std::size_t j, const StepFunction& eta);

/// Exact operator norm on weighted L1: max_j (sum_i |A_ij| mu_i) / mu_j.
double opnorm_p1(const MatrixOperator& a);

struct OpnormEstimate {
    double value = 0.0;
    StepFunction witness; ///< unit vector in L_p(mu) attaining value
};

/// Lower bound for ||A||_{p->p}; exact at p = 1.
OpnormEstimate estimate_opnorm(const MatrixOperator& a, double p, const kernels::EstimateOptions& options = {});
double opnorm_estimate(const MatrixOperator& a, double p, const kernels::EstimateOptions& options = {});

using Partition = std::vector<std::vector<std::size_t>>;

/// sum_b P_b A P_b: entry (i, j) survives iff i and j share a block.
MatrixOperator pinch(const MatrixOperator& a, const Partition& blocks);

/// Coordinate mask P f = 1_S f.
class CoordinateProjection {
public:
    CoordinateProjection(SpacePtr space, std::vector<bool> mask);

    StepFunction apply(const StepFunction& f) const;
    MatrixOperator to_matrix() const;
    const std::vector<bool>& mask() const { return mask_; }

private:
    SpacePtr space_;
    std::vector<bool> mask_;
};

struct ProjectionFamily {
    std::vector<CoordinateProjection> p; ///< P_1..P_n, P_j masks coordinate j-1
    CoordinateProjection q;              ///< Q_n = I - sum P_j
};

ProjectionFamily projections(SpacePtr space, std::size_t n);

} // namespace essnorm
