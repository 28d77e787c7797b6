#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

// Dense complex linear algebra and multi-qudit register bookkeeping.
//
// Amplitude vectors are std::vector<std::complex<double>>; a register of
// sites (d_1, ..., d_s) is laid out big-endian mixed-radix: the flat index
// of digits (k_1, ..., k_s) is ((k_1 d_2 + k_2) d_3 + ...), leftmost site
// most significant.

namespace quditsim {

using cx = std::complex<double>;
using ComplexVec = std::vector<cx>;

// Shared numerical tolerances.
inline constexpr double kEqTol = 1e-10;     // equality checks
inline constexpr double kInputTol = 1e-8;   // input validation
inline constexpr double kDropTol = 1e-14;   // probability / degeneracy floor
inline constexpr double kGsDropTol = 1e-10; // Gram-Schmidt dependent-vector drop

/// Row-major dense complex matrix.
struct ComplexMat {
    int rows = 0;
    int cols = 0;
    ComplexVec entries;

    ComplexMat() = default;
    ComplexMat(int r, int c) : rows(r), cols(c), entries(static_cast<size_t>(r) * c) {
        if (r <= 0 || c <= 0) throw std::invalid_argument("ComplexMat: dimensions must be positive");
    }

    cx& at(int r, int c) { return entries[static_cast<size_t>(r) * cols + c]; }
    const cx& at(int r, int c) const { return entries[static_cast<size_t>(r) * cols + c]; }

    static ComplexMat identity(int n);
    ComplexMat adjoint() const;
    ComplexVec apply(const ComplexVec& v) const;
    ComplexMat multiply(const ComplexMat& other) const;
};

/// Ordered local dimensions of a multi-qudit register.
struct RegisterShape {
    std::vector<int> sites;

    explicit RegisterShape(std::vector<int> s) : sites(std::move(s)) {
        for (int d : sites)
            if (d < 2) throw std::invalid_argument("RegisterShape: local dimensions must be >= 2");
    }

    int num_sites() const { return static_cast<int>(sites.size()); }
    long flat_dim() const;

    /// Big-endian digits of a flat index.
    std::vector<int> digits(long flat) const;
    /// Flat index of big-endian digits.
    long flat_index(std::span<const int> digits) const;
};

double sq_norm(const ComplexVec& v);
bool is_normalized(const ComplexVec& v, double tol = kEqTol);
ComplexVec normalized(ComplexVec v);

/// Conjugate-linear in u, linear in v. Throws on dimension mismatch.
cx inner(const ComplexVec& u, const ComplexVec& v);

/// Kronecker product; the left factor is most significant in the index layout.
ComplexVec kron(const ComplexVec& a, const ComplexVec& b);
ComplexMat kron(const ComplexMat& a, const ComplexMat& b);

/// Apply `op` to the given register sites (identity elsewhere).
/// `op` must be square with dimension equal to the product of the target
/// local dimensions; targets are distinct site indices, ordered most
/// significant first with respect to op's own index layout.
ComplexVec apply_to_subsystems(const ComplexMat& op, std::span<const int> targets,
                               const ComplexVec& state, const RegisterShape& shape);

struct Projection {
    double probability = 0.0;
    ComplexVec residual; // conditional state of the unmeasured sites (renormalized)
};

/// Project `state` onto `basis_vec` living on the target sites.
/// probability = squared norm of the partial inner product; residual is the
/// conditional state of the remaining sites, renormalized when
/// probability > kDropTol and the zero vector otherwise. Both inputs must be
/// normalized within kInputTol.
Projection project(const ComplexVec& state, const ComplexVec& basis_vec,
                   std::span<const int> targets, const RegisterShape& shape);

/// Orthonormalize `seeds` in input order. The first `keep_first` vectors must
/// already be orthonormal (within kEqTol) and are returned bit-identical;
/// vectors whose residual norm falls below kGsDropTol are dropped.
std::vector<ComplexVec> gram_schmidt(const std::vector<ComplexVec>& seeds, int keep_first = 0);

struct SchmidtResult {
    std::vector<double> lambdas;    // non-negative, descending, sum 1
    std::vector<ComplexVec> left;   // orthonormal vectors on the first site
    std::vector<ComplexVec> right;  // orthonormal vectors on the second site
};

/// Schmidt decomposition of a normalized two-site state:
///   state = sum_j sqrt(lambda_j) left_j (x) right_j.
/// Backed by a one-sided Jacobi SVD of the coefficient matrix.
SchmidtResult schmidt_decompose(const ComplexVec& state, const RegisterShape& shape);

} // namespace quditsim
