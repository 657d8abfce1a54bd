#pragma once

#include "epkit/numkernel.hpp"
#include "epkit/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace epkit {

enum class NormKind { L1, L2, Linf, Lp };

/// Which vector norm equips C^n. The induced operator norm, the hermitian
/// predicate and the Vidav machinery are all relative to this choice.
struct NormSpec {
    NormKind kind = NormKind::L2;
    double p = 2.0;  // only meaningful for kind == Lp

    static NormSpec l1() { return {NormKind::L1, 1.0}; }
    static NormSpec l2() { return {NormKind::L2, 2.0}; }
    static NormSpec linf() { return {NormKind::Linf, 0.0}; }
    static NormSpec lp(double p);

    /// Textual form used across the CLI and file formats:
    /// "l1", "l2", "linf", "lp:<p>".
    static NormSpec parse(const std::string& text);
    std::string str() const;

    /// Smooth norms (L2, Lp) admit the semi-inner-product probe.
    bool smooth() const { return kind == NormKind::L2 || kind == NormKind::Lp; }
    /// Hoelder exponent of the vector norm (inf mapped to a large sentinel
    /// only through the closed forms, never used numerically for L1/Linf).
    bool operator==(const NormSpec& o) const { return kind == o.kind && (kind != NormKind::Lp || p == o.p); }
};

struct UnsupportedNorm : std::invalid_argument {
    explicit UnsupportedNorm(const std::string& msg) : std::invalid_argument(msg) {}
};

double vector_norm(const ComplexVector& x, const NormSpec& norm);

/// Induced operator norm. Exact closed forms for L1 (max absolute column
/// sum), Linf (max absolute row sum) and L2 (largest singular value). For
/// Lp the value is an iterative lower-bound estimate (power method from
/// several deterministic starts); exactness is NOT guaranteed there.
double operator_norm(const ComplexMatrix& a, const NormSpec& norm);

/// Scaling-and-squaring matrix exponential (degree-13 Pade core).
ComplexMatrix matrix_exp(const ComplexMatrix& a);

enum class HermitianVerdict { Hermitian, NotHermitian, Inconclusive };

std::string to_string(HermitianVerdict v);

/// Grid evidence for ||exp(itB)|| = 1, B the norm-scaled input, plus the
/// real-spectrum corroboration. The grid cannot certify the universal
/// quantifier over t, hence the three-valued verdict.
struct HermitianReport {
    HermitianVerdict verdict = HermitianVerdict::Inconclusive;
    double max_exp_deviation = 0.0;
    double derivative_minus = 0.0;  // one-sided limit of (||I + itB|| - 1)/t, t -> 0-
    double derivative_plus = 0.0;   //   "    at t -> 0+
    double spectrum_imag_max = 0.0;
    double witness_t = 0.0;  // grid point achieving max_exp_deviation

    bool hermitian() const { return verdict == HermitianVerdict::Hermitian; }
};

/// Evaluates ||exp(itB)|| on a symmetric grid of ctx.exp_grid_points
/// values t in [-pi, pi], B = a / operator_norm(a, norm); the zero matrix
/// is Hermitian immediately. Verdict thresholds: Hermitian when both the
/// grid deviation and the largest |Im lambda| are <= ctx.herm_tol,
/// NotHermitian when either exceeds ctx.margin, Inconclusive between.
HermitianReport is_hermitian(const ComplexMatrix& a, const NormSpec& norm,
                             const NumericContext& ctx);

/// Secondary probe for smooth norms: max over sampled unit vectors x of
/// |Im sum_k (ax)_k conj(x_k) |x_k|^{p-2}|. Small values corroborate
/// hermitian-ness. Deterministic for a fixed seed.
double sip_hermitian_probe(const ComplexMatrix& a, const NormSpec& norm,
                           const NumericContext& ctx, std::uint64_t seed = 0x51b9a1d5u);

/// a = u + iv with both parts hermitian under the given norm.
struct VidavPair {
    ComplexMatrix u;
    ComplexMatrix v;
    NormSpec norm;
};

/// Native decomposition exists for L2 only: u = (a + a^H)/2,
/// v = (a - a^H)/(2i). Other kinds throw UnsupportedNorm; use
/// validate_vidav with a caller-supplied pair instead.
VidavPair vidav_decompose(const ComplexMatrix& a, const NormSpec& norm);

struct VidavValidation {
    bool ok = false;
    double reconstruction_residual = 0.0;
    HermitianReport u_report;
    HermitianReport v_report;
};

/// True iff a = u + iv within eq_tol and both u and v receive verdict
/// Hermitian under the norm.
VidavValidation validate_vidav(const ComplexMatrix& a, const ComplexMatrix& u,
                               const ComplexMatrix& v, const NormSpec& norm,
                               const NumericContext& ctx);

/// u - iv. Under L2 this is exactly the conjugate transpose.
ComplexMatrix star(const ComplexMatrix& a, const NormSpec& norm);

struct NormalityResult {
    bool normal = false;
    double residual = 0.0;  // relative norm of uv - vu
};

/// Normality uv = vu of the Vidav parts. Computes the pair natively
/// (throws UnsupportedNorm for non-L2 kinds).
NormalityResult is_normal(const ComplexMatrix& a, const NormSpec& norm,
                          const NumericContext& ctx);

/// Normality with a caller-supplied pair. The pair is validated first; a
/// pair that fails validation throws std::invalid_argument (whether the
/// element lies in V(A) at all is undecidable here).
NormalityResult is_normal(const ComplexMatrix& a, const VidavPair& pair,
                          const NumericContext& ctx);

}  // namespace epkit
