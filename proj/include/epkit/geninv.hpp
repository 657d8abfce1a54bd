#pragma once

#include "epkit/normscope.hpp"
#include "epkit/numkernel.hpp"

#include <optional>
#include <string>

namespace epkit {

/// Residuals of the four Moore-Penrose conditions for a candidate inverse
/// x: axa = a, xax = x, and both products hermitian under the norm the
/// witness was evaluated with.
struct PenroseWitness {
    ComplexMatrix x;
    double res_axa = 0.0;
    double res_xax = 0.0;
    HermitianReport herm_ax;
    HermitianReport herm_xa;
    bool accepted = false;  // residuals <= eq_tol and both verdicts Hermitian
};

/// Residuals of the three group-inverse conditions axa = a, xax = x,
/// ax = xa.
struct GroupWitness {
    ComplexMatrix x;
    double res_axa = 0.0;
    double res_xax = 0.0;
    double res_comm = 0.0;
    bool accepted = false;
};

/// SVD pseudoinverse. The zero matrix maps to zero; under l2 every square
/// matrix is Moore-Penrose invertible and the result passes verify_mp.
ComplexMatrix mp_inverse(const ComplexMatrix& a, const NumericContext& ctx);

/// Four-condition witness for a candidate Moore-Penrose inverse. The
/// hermitian conditions are judged with the grid predicate under the given
/// norm, so this works for any NormSpec.
PenroseWitness verify_mp(const ComplexMatrix& a, const ComplexMatrix& x, const NormSpec& norm,
                         const NumericContext& ctx);

/// Three-condition witness for a candidate group inverse.
GroupWitness verify_group(const ComplexMatrix& a, const ComplexMatrix& x,
                          const NumericContext& ctx);

/// Group inverse through the full-rank factorization a = f g: exists iff
/// g f is invertible (equivalently rank(a^2) = rank(a)), and then equals
/// f (g f)^{-2} g. Returns nullopt when no group inverse exists.
std::optional<ComplexMatrix> group_inverse(const ComplexMatrix& a, const NumericContext& ctx);

struct EpResult {
    bool ep = false;
    double residual = 0.0;
    std::string reason;  // set when the verdict came from a route failure
};

/// EP predicate. Under l2: residual of a a^dag - a^dag a with the SVD
/// pseudoinverse. Under any other norm the only constructive route is the
/// group inverse: EP iff a^sharp exists and a a^sharp is hermitian.
EpResult is_ep(const ComplexMatrix& a, const NormSpec& norm, const NumericContext& ctx);

enum class MpRouteStatus { Ok, NotEp, Inconclusive };

struct MpViaGroupResult {
    MpRouteStatus status = MpRouteStatus::NotEp;
    ComplexMatrix inverse;  // valid only when status == Ok
    HermitianReport product_report;  // report for a * a^sharp when it exists
    std::string reason;
};

/// The group route to the Moore-Penrose inverse: when a^sharp exists and
/// a a^sharp is hermitian under the norm, a^sharp IS a^dag. Inconclusive
/// hermitian verdicts propagate.
MpViaGroupResult mp_via_group(const ComplexMatrix& a, const NormSpec& norm,
                              const NumericContext& ctx);

}  // namespace epkit
