#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "quditsim/states.hpp"
#include "quditsim/tensor.hpp"

// Two-qudit measurement bases: the generalized Bell basis, the qubit NME
// family, and the qudit NME basis whose designated vectors satisfy the
// teleportation success condition
//   c^{lm}_n = (1/conj(c_resource[n+m])) exp(2 pi i l n / d),
// completed deterministically to a full orthonormal basis.

namespace quditsim {

/// One basis vector together with its class metadata. Every vector is
/// supported inside a single class subspace span{|j>|j+m> : j}.
struct BasisVector {
    ComplexVec ket;               // dimension d^2, normalized
    int class_m = 0;              // shift class
    std::optional<int> phase_l;   // phase label (designated vectors only)
    bool designated = false;      // heralds success when measured
    double norm_const = 1.0;      // normalization of the defining coefficients

    /// Schmidt spectrum of the vector viewed as a (d, d) bipartite state.
    std::vector<double> schmidt_spectrum(int d) const;
};

enum class BasisKind { bell, qubit_nme, qudit_nme };

std::string_view to_string(BasisKind kind);

/// Ordered orthonormal set of d^2 two-qudit vectors.
struct MeasurementBasis {
    int d = 0;
    BasisKind kind = BasisKind::bell;
    std::vector<BasisVector> vectors;

    /// Gram matrix of all vectors; identity for a valid basis.
    ComplexMat gram() const;
    /// Class and within-class slot of the vector at `index` in basis order.
    std::pair<int, int> label_of(int index) const;
};

/// Generalized Bell basis: |Psi_lp> = (1/sqrt d) sum_k e^{2 pi i l k / d} |k+p>|k>,
/// ordered (l, p) row-major. All vectors are maximally entangled and designated.
MeasurementBasis bell_basis(int d);

/// Coefficients c (indexed l*d + p) with |ij> = sum c_lp |Psi_lp>.
/// Exactly d entries are nonzero: the shift p is pinned to i - j mod d.
std::vector<cx> bell_expand(int i, int j, int d);

/// The four-vector qubit family
///   L(|00> + l|11>),  L(conj(l)|00> - |11>),
///   P(|01> + p|10>),  P(conj(p)|01> - |10>),
/// orthonormal for every complex l, p; interpolates between the product and
/// Bell bases. The second and third vectors herald success when (l, p) is
/// matched to the resource, and are marked designated.
MeasurementBasis qubit_nme_basis(cx l, cx p);

/// One designated vector per class m, with phase label l_choice[m]:
///   N sum_j (e^{2 pi i l_m j / d} / conj(c_resource[j+m])) |j>|j+m>,
/// N = 1/sqrt(sum_p 1/|c_resource[p]|^2) (independent of l and m).
/// Requires a full-rank resource.
std::vector<BasisVector> qudit_nme_designated(const ResourceState& resource,
                                              std::span<const int> l_choice);

/// Completes designated vectors to the full d^2 orthonormal basis: within each
/// class subspace, Gram-Schmidt against the canonical kets |j>|j+m> in
/// ascending j order. Classes ascend; the designated vector leads its class.
MeasurementBasis complete_nme_basis(std::vector<BasisVector> designated, int d);

/// Convenience: designated vectors for `l_choice` (all zero when empty),
/// completed to a full basis.
MeasurementBasis nme_basis(const ResourceState& resource, std::span<const int> l_choice = {});

/// Normalized Gram matrix of the success-condition vectors for all d phase
/// labels within class m. Entry (l, k) is
///   N^2 sum_n (1/|c_resource[n+m]|^2) e^{-2 pi i (l-k) n / d};
/// the off-diagonal vanishes iff the spectrum is uniform, which is why only
/// one phase label per class can join an orthonormal basis.
ComplexMat class_overlap_gram(const ResourceState& resource, int m);

} // namespace quditsim
