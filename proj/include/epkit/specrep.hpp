#pragma once

#include "epkit/types.hpp"

#include <vector>

namespace epkit {

struct SpectralData {
    std::vector<Complex> eigenvalues;  // with multiplicity
    double spectral_radius = 0.0;
};

/// Dense eigensolve; eigenvalues come with multiplicity.
SpectralData spectrum(const ComplexMatrix& a);

/// sigma(a) = {0}, judged by spectral_radius <= eq_tol * max(1, ||a||) and
/// cross-checked by the decay of the normalized n-th power (in finite
/// dimension quasinilpotent = nilpotent).
bool is_quasinilpotent(const ComplexMatrix& a, const NumericContext& ctx);

/// Stabilization indices of null spaces (ascent) and ranges (descent) of
/// the powers a^0 = I, a, a^2, ... In finite dimension both are attained
/// at or before n and coincide.
struct AscentDescent {
    int ascent = 0;
    int descent = 0;
};

AscentDescent ascent_descent(const ComplexMatrix& a, const NumericContext& ctx);
int ascent(const ComplexMatrix& a, const NumericContext& ctx);
int descent(const ComplexMatrix& a, const NumericContext& ctx);

/// Kronecker product, column-stacking convention: vec(AXB) = (B^T (x) A) vec(X).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Matrix of x -> a x on C^{n x n} under vec-by-columns: I (x) a.
ComplexMatrix left_mult(const ComplexMatrix& a);

/// Matrix of x -> x a under the same convention: a^T (x) I.
ComplexMatrix right_mult(const ComplexMatrix& a);

}  // namespace epkit
