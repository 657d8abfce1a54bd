#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace epkit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Tolerances and sampling budgets shared by all approximate predicates.
///
/// eq_tol governs identity residuals, rank_tol is the relative
/// singular-value cutoff, herm_tol bounds exponential-grid deviations, and
/// margin is the separation required before an identity is declared to
/// FAIL (verdicts falling between herm_tol/eq_tol and margin are treated
/// as undecided by the callers that care).
struct NumericContext {
    double eq_tol = 1e-8;
    double rank_tol = 1e-10;
    double herm_tol = 1e-7;
    int exp_grid_points = 64;
    int sip_samples = 256;
    double margin = 1e-4;

    /// Throws std::invalid_argument if any tolerance is non-positive or
    /// margin does not dominate eq_tol.
    void validate() const;

    /// One-knob construction used by the CLI: rank_tol = tol/100,
    /// herm_tol = 10*tol, margin kept at its default.
    static NumericContext from_eq_tol(double tol);
};

inline void NumericContext::validate() const {
    if (!(eq_tol > 0) || !(rank_tol > 0) || !(herm_tol > 0) || !(margin > 0))
        throw std::invalid_argument("NumericContext: tolerances must be strictly positive");
    if (!(margin > eq_tol))
        throw std::invalid_argument("NumericContext: margin must exceed eq_tol");
    if (exp_grid_points < 2 || sip_samples < 1)
        throw std::invalid_argument("NumericContext: grid and sample counts must be positive");
}

inline NumericContext NumericContext::from_eq_tol(double tol) {
    NumericContext ctx;
    ctx.eq_tol = tol;
    ctx.rank_tol = tol / 100.0;
    ctx.herm_tol = 10.0 * tol;
    ctx.validate();
    return ctx;
}

bool matrix_is_finite(const ComplexMatrix& a);

void require_finite(const ComplexMatrix& a, const std::string& what);
void require_square(const ComplexMatrix& a, const std::string& what);
void require_same_shape(const ComplexMatrix& x, const ComplexMatrix& y, const std::string& what);

}  // namespace epkit
