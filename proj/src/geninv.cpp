#include "epkit/geninv.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>

namespace epkit {

namespace {

// Penrose residual scale, bilinear in (a, x).
double penrose_scale(const ComplexMatrix& a, const ComplexMatrix& x) {
    return std::max(1.0, spectral_norm(a) * spectral_norm(x));
}

}  // namespace

ComplexMatrix mp_inverse(const ComplexMatrix& a, const NumericContext& ctx) {
    require_finite(a, "mp_inverse");
    if (a.rows() == 0 || a.cols() == 0) return a.adjoint();
    Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double cutoff = ctx.rank_tol * (sv.size() > 0 ? sv(0) : 0.0);
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
    for (Index k = 0; k < sv.size(); ++k)
        if (sv(k) > cutoff) inv(k) = 1.0 / sv(k);
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

PenroseWitness verify_mp(const ComplexMatrix& a, const ComplexMatrix& x, const NormSpec& norm,
                         const NumericContext& ctx) {
    require_square(a, "verify_mp");
    require_same_shape(a, x, "verify_mp");
    PenroseWitness w;
    w.x = x;
    const double scale = penrose_scale(a, x);
    w.res_axa = spectral_norm(a * x * a - a) / scale;
    w.res_xax = spectral_norm(x * a * x - x) / scale;
    w.herm_ax = is_hermitian(a * x, norm, ctx);
    w.herm_xa = is_hermitian(x * a, norm, ctx);
    w.accepted = w.res_axa <= ctx.eq_tol && w.res_xax <= ctx.eq_tol && w.herm_ax.hermitian() &&
                 w.herm_xa.hermitian();
    return w;
}

GroupWitness verify_group(const ComplexMatrix& a, const ComplexMatrix& x,
                          const NumericContext& ctx) {
    require_square(a, "verify_group");
    require_same_shape(a, x, "verify_group");
    GroupWitness w;
    w.x = x;
    const double scale = penrose_scale(a, x);
    w.res_axa = spectral_norm(a * x * a - a) / scale;
    w.res_xax = spectral_norm(x * a * x - x) / scale;
    w.res_comm = spectral_norm(a * x - x * a) / scale;
    w.accepted = w.res_axa <= ctx.eq_tol && w.res_xax <= ctx.eq_tol && w.res_comm <= ctx.eq_tol;
    return w;
}

std::optional<ComplexMatrix> group_inverse(const ComplexMatrix& a, const NumericContext& ctx) {
    require_square(a, "group_inverse");
    require_finite(a, "group_inverse");
    const FullRankFactorization frf = full_rank_factorization(a, ctx);
    if (frf.rank == 0) return ComplexMatrix::Zero(a.rows(), a.cols());
    const ComplexMatrix gf = frf.g * frf.f;
    // gf invertible <=> rank(a^2) = rank(a) <=> ascent and descent <= 1.
    if (rank(gf, ctx) < frf.rank) return std::nullopt;
    const ComplexMatrix gf2 = gf * gf;
    return frf.f * gf2.partialPivLu().solve(frf.g);
}

MpViaGroupResult mp_via_group(const ComplexMatrix& a, const NormSpec& norm,
                              const NumericContext& ctx) {
    MpViaGroupResult out;
    const auto sharp = group_inverse(a, ctx);
    if (!sharp) {
        out.status = MpRouteStatus::NotEp;
        out.reason = "no group inverse (rank(a^2) < rank(a))";
        return out;
    }
    out.product_report = is_hermitian(a * *sharp, norm, ctx);
    switch (out.product_report.verdict) {
        case HermitianVerdict::Hermitian:
            out.status = MpRouteStatus::Ok;
            out.inverse = *sharp;
            break;
        case HermitianVerdict::NotHermitian:
            out.status = MpRouteStatus::NotEp;
            out.reason = "a * a_sharp is not hermitian under " + norm.str();
            break;
        case HermitianVerdict::Inconclusive:
            out.status = MpRouteStatus::Inconclusive;
            out.reason = "hermitian grid verdict inconclusive for a * a_sharp under " + norm.str();
            break;
    }
    return out;
}

EpResult is_ep(const ComplexMatrix& a, const NormSpec& norm, const NumericContext& ctx) {
    require_square(a, "is_ep");
    EpResult out;
    if (norm.kind == NormKind::L2) {
        const ComplexMatrix adag = mp_inverse(a, ctx);
        out.residual = rel_residual(a * adag, adag * a);
        out.ep = out.residual <= ctx.eq_tol;
        return out;
    }
    const MpViaGroupResult route = mp_via_group(a, norm, ctx);
    if (route.status == MpRouteStatus::Ok) {
        const ComplexMatrix& x = route.inverse;
        out.residual = rel_residual(a * x, x * a);
        out.ep = true;
    } else {
        out.ep = false;
        out.residual = route.product_report.max_exp_deviation;
        out.reason = route.reason;
    }
    return out;
}

}  // namespace epkit
