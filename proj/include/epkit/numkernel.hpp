#pragma once

#include "epkit/types.hpp"

namespace epkit {

/// a = f * g with f of full column rank r and g of full row rank r.
/// r == 0 yields conforming degenerate shapes (n x 0 times 0 x m).
struct FullRankFactorization {
    ComplexMatrix f;
    ComplexMatrix g;
    Index rank = 0;
};

/// Largest singular value. Zero-sized matrices have norm 0.
double spectral_norm(const ComplexMatrix& a);

/// Relative distance ||x - y||_2 / max(1, ||x||_2, ||y||_2).
double rel_residual(const ComplexMatrix& x, const ComplexMatrix& y);

struct EqResult {
    double residual = 0.0;
    bool equal = false;
    explicit operator bool() const { return equal; }
};

/// Relative spectral-norm comparison judged against ctx.eq_tol.
EqResult approx_eq(const ComplexMatrix& x, const ComplexMatrix& y, const NumericContext& ctx);

/// Number of singular values above ctx.rank_tol * sigma_max.
Index rank(const ComplexMatrix& a, const NumericContext& ctx);

/// Rank-revealing factorization through the SVD: f = U_r * Sigma_r,
/// g = V_r^H. Deterministic for a fixed input and context.
FullRankFactorization full_rank_factorization(const ComplexMatrix& a, const NumericContext& ctx);

/// Evidence that R(x) exceeds R(y): the first singular value of [y | x]
/// past rank(y), normalized by the largest one. 0 when no such value.
/// R(x) is included in R(y) exactly when this ratio is <= ctx.rank_tol.
double range_inclusion_excess(const ComplexMatrix& x, const ComplexMatrix& y,
                              const NumericContext& ctx);

/// R(x) subset of R(y), decided by rank([y | x]) == rank(y).
bool range_included(const ComplexMatrix& x, const ComplexMatrix& y, const NumericContext& ctx);

/// Evidence that N(x) exceeds N(y) -- see range_inclusion_excess; the
/// inclusion N(x) subset of N(y) holds iff rank([x ; y]) == rank(x).
double null_inclusion_excess(const ComplexMatrix& x, const ComplexMatrix& y,
                             const NumericContext& ctx);

/// N(x) subset of N(y), decided by rank([x ; y]) == rank(x).
bool null_included(const ComplexMatrix& x, const ComplexMatrix& y, const NumericContext& ctx);

}  // namespace epkit
