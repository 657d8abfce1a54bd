#include "epkit/specrep.hpp"

#include "epkit/numkernel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace epkit {

SpectralData spectrum(const ComplexMatrix& a) {
    require_square(a, "spectrum");
    require_finite(a, "spectrum");
    SpectralData out;
    if (a.rows() == 0) return out;
    Eigen::ComplexEigenSolver<ComplexMatrix> es(a, /*computeEigenvectors=*/false);
    out.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + a.rows());
    for (const Complex& ev : out.eigenvalues)
        out.spectral_radius = std::max(out.spectral_radius, std::abs(ev));
    return out;
}

bool is_quasinilpotent(const ComplexMatrix& a, const NumericContext& ctx) {
    require_square(a, "is_quasinilpotent");
    const Index n = a.rows();
    if (n == 0) return true;
    const double scale = std::max(1.0, spectral_norm(a));
    const bool radius_small = spectrum(a).spectral_radius <= ctx.eq_tol * scale;

    // Power cross-check: the normalized n-th power of a nilpotent matrix
    // vanishes up to similarity-inflated rounding, so a loose threshold
    // suffices to catch an eigensolver mishap without flagging honest ones.
    ComplexMatrix b = a / scale;
    for (Index k = 1; k < n; ++k) {
        b = b * a;
        const double nb = spectral_norm(b);
        if (nb > 1.0) b /= nb;  // renormalization guard; only rank/decay is consumed
    }
    const bool power_small = spectral_norm(b) <= std::sqrt(ctx.eq_tol);
    return radius_small && power_small;
}

AscentDescent ascent_descent(const ComplexMatrix& a, const NumericContext& ctx) {
    require_square(a, "ascent_descent");
    require_finite(a, "ascent_descent");
    const Index n = a.rows();
    // rank(a^0) = n; ranks of successive powers, renormalized so only the
    // column space survives scaling.
    std::vector<Index> ranks;
    ranks.push_back(n);
    ComplexMatrix p = ComplexMatrix::Identity(n, n);
    for (Index k = 1; k <= n + 1; ++k) {
        p = p * a;
        const double np = spectral_norm(p);
        if (np > 0) p /= np;
        ranks.push_back(rank(p, ctx));
        if (ranks[k] == ranks[k - 1]) break;  // ranks of powers are monotone; first equality is final
    }
    int idx = 0;
    while (idx + 1 < static_cast<int>(ranks.size()) && ranks[idx + 1] != ranks[idx]) ++idx;
    // Descent is the first k with rank(a^k) = rank(a^{k+1}); the ascent
    // uses nullities n - rank(a^k), which stabilize at the same k.
    return {idx, idx};
}

int ascent(const ComplexMatrix& a, const NumericContext& ctx) {
    return ascent_descent(a, ctx).ascent;
}

int descent(const ComplexMatrix& a, const NumericContext& ctx) {
    return ascent_descent(a, ctx).descent;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

ComplexMatrix left_mult(const ComplexMatrix& a) {
    require_square(a, "left_mult");
    return kron(ComplexMatrix::Identity(a.rows(), a.rows()), a);
}

ComplexMatrix right_mult(const ComplexMatrix& a) {
    require_square(a, "right_mult");
    return kron(a.transpose(), ComplexMatrix::Identity(a.rows(), a.rows()));
}

}  // namespace epkit
