#include "epkit/numkernel.hpp"

#include <Eigen/SVD>

#include <algorithm>

namespace epkit {

bool matrix_is_finite(const ComplexMatrix& a) {
    return a.allFinite();
}

void require_finite(const ComplexMatrix& a, const std::string& what) {
    if (!matrix_is_finite(a))
        throw std::invalid_argument(what + ": matrix has non-finite entries");
}

void require_square(const ComplexMatrix& a, const std::string& what) {
    if (a.rows() != a.cols())
        throw std::invalid_argument(what + ": matrix must be square");
}

void require_same_shape(const ComplexMatrix& x, const ComplexMatrix& y, const std::string& what) {
    if (x.rows() != y.rows() || x.cols() != y.cols())
        throw std::invalid_argument(what + ": shape mismatch");
}

namespace {

Eigen::VectorXd singular_values(const ComplexMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return Eigen::VectorXd();
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    return svd.singularValues();
}

Index rank_from_values(const Eigen::VectorXd& sv, double rank_tol) {
    if (sv.size() == 0) return 0;
    const double cutoff = rank_tol * sv(0);
    Index r = 0;
    while (r < sv.size() && sv(r) > cutoff) ++r;
    return r;
}

}  // namespace

double spectral_norm(const ComplexMatrix& a) {
    const Eigen::VectorXd sv = singular_values(a);
    return sv.size() == 0 ? 0.0 : sv(0);
}

double rel_residual(const ComplexMatrix& x, const ComplexMatrix& y) {
    const double scale = std::max({1.0, spectral_norm(x), spectral_norm(y)});
    return spectral_norm(x - y) / scale;
}

EqResult approx_eq(const ComplexMatrix& x, const ComplexMatrix& y, const NumericContext& ctx) {
    require_same_shape(x, y, "approx_eq");
    EqResult r;
    r.residual = rel_residual(x, y);
    r.equal = r.residual <= ctx.eq_tol;
    return r;
}

Index rank(const ComplexMatrix& a, const NumericContext& ctx) {
    require_finite(a, "rank");
    return rank_from_values(singular_values(a), ctx.rank_tol);
}

FullRankFactorization full_rank_factorization(const ComplexMatrix& a, const NumericContext& ctx) {
    require_finite(a, "full_rank_factorization");
    FullRankFactorization out;
    if (a.rows() == 0 || a.cols() == 0) {
        out.f = ComplexMatrix(a.rows(), 0);
        out.g = ComplexMatrix(0, a.cols());
        return out;
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Index r = rank_from_values(svd.singularValues(), ctx.rank_tol);
    out.rank = r;
    out.f = svd.matrixU().leftCols(r) * svd.singularValues().head(r).asDiagonal();
    out.g = svd.matrixV().leftCols(r).adjoint();
    return out;
}

double range_inclusion_excess(const ComplexMatrix& x, const ComplexMatrix& y,
                              const NumericContext& ctx) {
    if (x.rows() != y.rows())
        throw std::invalid_argument("range_inclusion_excess: row counts differ");
    require_finite(x, "range_inclusion_excess");
    require_finite(y, "range_inclusion_excess");
    const Index ry = rank(y, ctx);
    ComplexMatrix stacked(y.rows(), y.cols() + x.cols());
    stacked << y, x;
    const Eigen::VectorXd sv = singular_values(stacked);
    if (sv.size() == 0 || ry >= sv.size() || sv(0) == 0.0) return 0.0;
    return sv(ry) / sv(0);
}

bool range_included(const ComplexMatrix& x, const ComplexMatrix& y, const NumericContext& ctx) {
    return range_inclusion_excess(x, y, ctx) <= ctx.rank_tol;
}

double null_inclusion_excess(const ComplexMatrix& x, const ComplexMatrix& y,
                             const NumericContext& ctx) {
    if (x.cols() != y.cols())
        throw std::invalid_argument("null_inclusion_excess: column counts differ");
    // N(x) subset of N(y) iff the rows of y depend on the rows of x, i.e.
    // R(y^H) subset of R(x^H).
    return range_inclusion_excess(y.adjoint(), x.adjoint(), ctx);
}

bool null_included(const ComplexMatrix& x, const ComplexMatrix& y, const NumericContext& ctx) {
    return null_inclusion_excess(x, y, ctx) <= ctx.rank_tol;
}

}  // namespace epkit
