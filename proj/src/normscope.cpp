#include "epkit/normscope.hpp"

#include "epkit/rng.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace epkit {

NormSpec NormSpec::lp(double p) {
    if (!std::isfinite(p) || p <= 1.0 || p == 2.0)
        throw std::invalid_argument("NormSpec::lp: p must be finite, > 1 and != 2 (use l1/l2/linf)");
    return {NormKind::Lp, p};
}

NormSpec NormSpec::parse(const std::string& text) {
    if (text == "l1") return l1();
    if (text == "l2") return l2();
    if (text == "linf") return linf();
    if (text.rfind("lp:", 0) == 0) {
        std::size_t used = 0;
        double p = 0;
        try {
            p = std::stod(text.substr(3), &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("NormSpec::parse: bad exponent in '" + text + "'");
        }
        if (used != text.size() - 3)
            throw std::invalid_argument("NormSpec::parse: trailing junk in '" + text + "'");
        return lp(p);
    }
    throw std::invalid_argument("NormSpec::parse: unknown norm '" + text +
                                "' (expected l1, l2, linf or lp:<p>)");
}

std::string NormSpec::str() const {
    switch (kind) {
        case NormKind::L1: return "l1";
        case NormKind::L2: return "l2";
        case NormKind::Linf: return "linf";
        case NormKind::Lp: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "lp:%.17g", p);
            return buf;
        }
    }
    return "l2";
}

std::string to_string(HermitianVerdict v) {
    switch (v) {
        case HermitianVerdict::Hermitian: return "hermitian";
        case HermitianVerdict::NotHermitian: return "not_hermitian";
        case HermitianVerdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

double vector_norm(const ComplexVector& x, const NormSpec& norm) {
    switch (norm.kind) {
        case NormKind::L1: return x.cwiseAbs().sum();
        case NormKind::L2: return x.norm();
        case NormKind::Linf: return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff();
        case NormKind::Lp: {
            double s = 0;
            for (Index k = 0; k < x.size(); ++k) s += std::pow(std::abs(x(k)), norm.p);
            return std::pow(s, 1.0 / norm.p);
        }
    }
    return 0.0;
}

namespace {

Complex csign(Complex z) {
    const double m = std::abs(z);
    return m == 0.0 ? Complex(1.0, 0.0) : z / m;
}

// Duality map for the p-norm: psi(y)_k = csign(y_k) |y_k|^{p-1}, so that
// Re <psi(y), y> = ||y||_p^p.
ComplexVector psi(const ComplexVector& y, double p) {
    ComplexVector out(y.size());
    for (Index k = 0; k < y.size(); ++k) {
        const double m = std::abs(y(k));
        out(k) = m == 0.0 ? Complex(0, 0) : csign(y(k)) * std::pow(m, p - 1.0);
    }
    return out;
}

// Power-method ascent for the induced p-norm (lower bound only). Runs from
// each canonical basis vector plus a few deterministic random starts and
// keeps the best stationary value.
double lp_operator_norm_estimate(const ComplexMatrix& a, double p) {
    const Index n = a.cols();
    if (n == 0) return 0.0;
    const double q = p / (p - 1.0);
    const NormSpec vecp{NormKind::Lp, p};
    const NormSpec vecq{NormKind::Lp, q};

    Rng rng(0x1b05d1ecu);
    std::vector<ComplexVector> starts;
    for (Index j = 0; j < n; ++j) {
        ComplexVector e = ComplexVector::Zero(n);
        e(j) = 1.0;
        starts.push_back(e);
    }
    starts.push_back(ComplexVector::Ones(n));
    for (int r = 0; r < 4; ++r) starts.push_back(rng.gaussian_vector(n));

    double best = 0.0;
    for (auto& x0 : starts) {
        ComplexVector x = x0;
        double nx = vector_norm(x, vecp);
        if (nx == 0) continue;
        x /= nx;
        for (int iter = 0; iter < 64; ++iter) {
            const ComplexVector y = a * x;
            const double ny = vector_norm(y, vecp);
            if (ny == 0) break;
            best = std::max(best, ny);
            const ComplexVector z = a.adjoint() * psi(y, p);
            const double nz = vector_norm(z, vecq);
            const double inner = (x.adjoint() * z).real()(0, 0);
            if (nz <= inner * (1.0 + 1e-12) + 1e-15) break;  // stationary
            x = psi(z, q);
            const double nn = vector_norm(x, vecp);
            if (nn == 0) break;
            x /= nn;
        }
    }
    return best;
}

}  // namespace

double operator_norm(const ComplexMatrix& a, const NormSpec& norm) {
    require_square(a, "operator_norm");
    if (a.rows() == 0) return 0.0;
    switch (norm.kind) {
        case NormKind::L1: return a.cwiseAbs().colwise().sum().maxCoeff();
        case NormKind::Linf: return a.cwiseAbs().rowwise().sum().maxCoeff();
        case NormKind::L2: return spectral_norm(a);
        case NormKind::Lp: return lp_operator_norm_estimate(a, norm.p);
    }
    return 0.0;
}

ComplexMatrix matrix_exp(const ComplexMatrix& a) {
    require_square(a, "matrix_exp");
    require_finite(a, "matrix_exp");
    const Index n = a.rows();
    if (n == 0) return a;

    // Higham's degree-13 Pade with scaling and squaring.
    static const double b[14] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                 1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                 670442572800.0,      33522128640.0,       1323241920.0,
                                 40840800.0,          960960.0,            16380.0,
                                 182.0,               1.0};
    const double theta13 = 5.371920351148152;
    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    int s = 0;
    if (norm1 > theta13) s = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
    const ComplexMatrix A = a / std::ldexp(1.0, s);

    const ComplexMatrix I = ComplexMatrix::Identity(n, n);
    const ComplexMatrix A2 = A * A;
    const ComplexMatrix A4 = A2 * A2;
    const ComplexMatrix A6 = A4 * A2;
    const ComplexMatrix U =
        A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 + b[5] * A4 + b[3] * A2 +
             b[1] * I);
    const ComplexMatrix V =
        A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;
    ComplexMatrix R = (V - U).partialPivLu().solve(V + U);
    for (int k = 0; k < s; ++k) R = R * R;
    return R;
}

HermitianReport is_hermitian(const ComplexMatrix& a, const NormSpec& norm,
                             const NumericContext& ctx) {
    require_square(a, "is_hermitian");
    require_finite(a, "is_hermitian");
    HermitianReport rep;
    const double scale = operator_norm(a, norm);
    if (scale == 0.0 || a.rows() == 0) {
        rep.verdict = HermitianVerdict::Hermitian;
        return rep;
    }
    const ComplexMatrix B = a / scale;

    Eigen::ComplexEigenSolver<ComplexMatrix> es(B, /*computeEigenvectors=*/false);
    rep.spectrum_imag_max = es.eigenvalues().imag().cwiseAbs().maxCoeff();

    const Complex iunit(0.0, 1.0);
    const int m = ctx.exp_grid_points;
    for (int k = 0; k < m; ++k) {
        const double t = -M_PI + 2.0 * M_PI * k / (m - 1);
        const double dev = std::abs(operator_norm(matrix_exp(iunit * t * B), norm) - 1.0);
        if (dev > rep.max_exp_deviation) {
            rep.max_exp_deviation = dev;
            rep.witness_t = t;
        }
    }

    const double h = 1e-5;
    const ComplexMatrix I = ComplexMatrix::Identity(B.rows(), B.cols());
    rep.derivative_plus = (operator_norm(I + iunit * h * B, norm) - 1.0) / h;
    rep.derivative_minus = (operator_norm(I - iunit * h * B, norm) - 1.0) / (-h);

    if (rep.max_exp_deviation <= ctx.herm_tol && rep.spectrum_imag_max <= ctx.herm_tol)
        rep.verdict = HermitianVerdict::Hermitian;
    else if (rep.max_exp_deviation > ctx.margin || rep.spectrum_imag_max > ctx.margin)
        rep.verdict = HermitianVerdict::NotHermitian;
    else
        rep.verdict = HermitianVerdict::Inconclusive;
    return rep;
}

double sip_hermitian_probe(const ComplexMatrix& a, const NormSpec& norm,
                           const NumericContext& ctx, std::uint64_t seed) {
    require_square(a, "sip_hermitian_probe");
    if (!norm.smooth())
        throw UnsupportedNorm("sip_hermitian_probe: requires a smooth norm (l2 or lp:<p>)");
    const Index n = a.rows();
    if (n == 0) return 0.0;
    const double p = norm.kind == NormKind::L2 ? 2.0 : norm.p;

    Rng rng(seed);
    double worst = 0.0;
    for (int s = 0; s < ctx.sip_samples; ++s) {
        ComplexVector x = rng.gaussian_vector(n);
        const double nx = vector_norm(x, norm);
        if (nx == 0) continue;
        x /= nx;
        const ComplexVector y = a * x;
        double im = 0.0;
        for (Index k = 0; k < n; ++k) {
            const double m = std::abs(x(k));
            if (m == 0.0) continue;
            im += std::imag(y(k) * std::conj(x(k)) * std::pow(m, p - 2.0));
        }
        worst = std::max(worst, std::abs(im));
    }
    return worst;
}

VidavPair vidav_decompose(const ComplexMatrix& a, const NormSpec& norm) {
    require_square(a, "vidav_decompose");
    if (norm.kind != NormKind::L2)
        throw UnsupportedNorm(
            "vidav_decompose: native decomposition is only available under l2; "
            "validate a caller-supplied pair instead");
    VidavPair pair;
    pair.norm = norm;
    pair.u = 0.5 * (a + a.adjoint());
    pair.v = Complex(0.0, -0.5) * (a - a.adjoint());
    return pair;
}

VidavValidation validate_vidav(const ComplexMatrix& a, const ComplexMatrix& u,
                               const ComplexMatrix& v, const NormSpec& norm,
                               const NumericContext& ctx) {
    require_square(a, "validate_vidav");
    require_same_shape(a, u, "validate_vidav");
    require_same_shape(a, v, "validate_vidav");
    VidavValidation out;
    out.reconstruction_residual = rel_residual(a, u + Complex(0.0, 1.0) * v);
    out.u_report = is_hermitian(u, norm, ctx);
    out.v_report = is_hermitian(v, norm, ctx);
    out.ok = out.reconstruction_residual <= ctx.eq_tol && out.u_report.hermitian() &&
             out.v_report.hermitian();
    return out;
}

ComplexMatrix star(const ComplexMatrix& a, const NormSpec& norm) {
    require_square(a, "star");
    if (norm.kind != NormKind::L2)
        throw UnsupportedNorm("star: only defined natively under l2");
    return a.adjoint();
}

NormalityResult is_normal(const ComplexMatrix& a, const NormSpec& norm,
                          const NumericContext& ctx) {
    const VidavPair pair = vidav_decompose(a, norm);  // UnsupportedNorm for non-l2
    NormalityResult out;
    out.residual = rel_residual(pair.u * pair.v, pair.v * pair.u);
    out.normal = out.residual <= ctx.eq_tol;
    return out;
}

NormalityResult is_normal(const ComplexMatrix& a, const VidavPair& pair,
                          const NumericContext& ctx) {
    const VidavValidation val = validate_vidav(a, pair.u, pair.v, pair.norm, ctx);
    if (!val.ok)
        throw std::invalid_argument(
            "is_normal: supplied Vidav pair does not validate for this element");
    NormalityResult out;
    out.residual = rel_residual(pair.u * pair.v, pair.v * pair.u);
    out.normal = out.residual <= ctx.eq_tol;
    return out;
}

}  // namespace epkit
