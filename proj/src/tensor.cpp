#include "quditsim/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace quditsim {

ComplexMat ComplexMat::identity(int n) {
    ComplexMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

ComplexMat ComplexMat::adjoint() const {
    ComplexMat m(cols, rows);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m.at(c, r) = std::conj(at(r, c));
    return m;
}

ComplexVec ComplexMat::apply(const ComplexVec& v) const {
    if (static_cast<int>(v.size()) != cols)
        throw std::invalid_argument("ComplexMat::apply: dimension mismatch");
    ComplexVec out(rows);
    for (int r = 0; r < rows; ++r) {
        cx acc = 0.0;
        for (int c = 0; c < cols; ++c) acc += at(r, c) * v[c];
        out[r] = acc;
    }
    return out;
}

ComplexMat ComplexMat::multiply(const ComplexMat& other) const {
    if (cols != other.rows)
        throw std::invalid_argument("ComplexMat::multiply: dimension mismatch");
    ComplexMat out(rows, other.cols);
    for (int r = 0; r < rows; ++r)
        for (int k = 0; k < cols; ++k) {
            const cx v = at(r, k);
            if (v == cx{}) continue;
            for (int c = 0; c < other.cols; ++c) out.at(r, c) += v * other.at(k, c);
        }
    return out;
}

long RegisterShape::flat_dim() const {
    long n = 1;
    for (int d : sites) n *= d;
    return n;
}

std::vector<int> RegisterShape::digits(long flat) const {
    std::vector<int> out(sites.size());
    for (int s = num_sites() - 1; s >= 0; --s) {
        out[s] = static_cast<int>(flat % sites[s]);
        flat /= sites[s];
    }
    return out;
}

long RegisterShape::flat_index(std::span<const int> digits) const {
    if (static_cast<int>(digits.size()) != num_sites())
        throw std::invalid_argument("RegisterShape::flat_index: digit count mismatch");
    long flat = 0;
    for (int s = 0; s < num_sites(); ++s) {
        if (digits[s] < 0 || digits[s] >= sites[s])
            throw std::invalid_argument("RegisterShape::flat_index: digit out of range");
        flat = flat * sites[s] + digits[s];
    }
    return flat;
}

double sq_norm(const ComplexVec& v) {
    double acc = 0.0;
    for (const cx& a : v) acc += std::norm(a);
    return acc;
}

bool is_normalized(const ComplexVec& v, double tol) {
    return std::abs(sq_norm(v) - 1.0) <= tol;
}

ComplexVec normalized(ComplexVec v) {
    const double n = std::sqrt(sq_norm(v));
    if (n < kDropTol) throw std::invalid_argument("normalized: zero vector");
    for (cx& a : v) a /= n;
    return v;
}

cx inner(const ComplexVec& u, const ComplexVec& v) {
    if (u.size() != v.size()) throw std::invalid_argument("inner: dimension mismatch");
    cx acc = 0.0;
    for (size_t i = 0; i < u.size(); ++i) acc += std::conj(u[i]) * v[i];
    return acc;
}

ComplexVec kron(const ComplexVec& a, const ComplexVec& b) {
    ComplexVec out(a.size() * b.size());
    size_t k = 0;
    for (const cx& x : a)
        for (const cx& y : b) out[k++] = x * y;
    return out;
}

ComplexMat kron(const ComplexMat& a, const ComplexMat& b) {
    ComplexMat out(a.rows * b.rows, a.cols * b.cols);
    for (int ra = 0; ra < a.rows; ++ra)
        for (int ca = 0; ca < a.cols; ++ca) {
            const cx v = a.at(ra, ca);
            if (v == cx{}) continue;
            for (int rb = 0; rb < b.rows; ++rb)
                for (int cb = 0; cb < b.cols; ++cb)
                    out.at(ra * b.rows + rb, ca * b.cols + cb) = v * b.at(rb, cb);
        }
    return out;
}

namespace {

struct SubsystemSplit {
    std::vector<int> targets;
    std::vector<int> rest;       // non-target sites, ascending
    long target_dim = 1;
    long rest_dim = 1;
    // flat register index for (target index, rest index)
    std::vector<long> offsets;   // indexed t * rest_dim + r

    SubsystemSplit(std::span<const int> tgt, const RegisterShape& shape)
        : targets(tgt.begin(), tgt.end()) {
        const int s = shape.num_sites();
        std::vector<bool> seen(s, false);
        for (int t : targets) {
            if (t < 0 || t >= s) throw std::invalid_argument("subsystem: target out of range");
            if (seen[t]) throw std::invalid_argument("subsystem: duplicate target");
            seen[t] = true;
            target_dim *= shape.sites[t];
        }
        for (int i = 0; i < s; ++i)
            if (!seen[i]) {
                rest.push_back(i);
                rest_dim *= shape.sites[i];
            }
        offsets.resize(target_dim * rest_dim);
        std::vector<int> dig(s);
        for (long t = 0; t < target_dim; ++t) {
            long tt = t;
            for (int k = static_cast<int>(targets.size()) - 1; k >= 0; --k) {
                dig[targets[k]] = static_cast<int>(tt % shape.sites[targets[k]]);
                tt /= shape.sites[targets[k]];
            }
            for (long r = 0; r < rest_dim; ++r) {
                long rr = r;
                for (int k = static_cast<int>(rest.size()) - 1; k >= 0; --k) {
                    dig[rest[k]] = static_cast<int>(rr % shape.sites[rest[k]]);
                    rr /= shape.sites[rest[k]];
                }
                offsets[t * rest_dim + r] = shape.flat_index(dig);
            }
        }
    }
};

} // namespace

ComplexVec apply_to_subsystems(const ComplexMat& op, std::span<const int> targets,
                               const ComplexVec& state, const RegisterShape& shape) {
    if (static_cast<long>(state.size()) != shape.flat_dim())
        throw std::invalid_argument("apply_to_subsystems: state/shape mismatch");
    const SubsystemSplit split(targets, shape);
    if (op.rows != op.cols || op.rows != split.target_dim)
        throw std::invalid_argument("apply_to_subsystems: operator dimension mismatch");

    ComplexVec out(state.size());
    ComplexVec slice(split.target_dim);
    for (long r = 0; r < split.rest_dim; ++r) {
        for (long t = 0; t < split.target_dim; ++t)
            slice[t] = state[split.offsets[t * split.rest_dim + r]];
        for (long i = 0; i < split.target_dim; ++i) {
            cx acc = 0.0;
            for (long j = 0; j < split.target_dim; ++j) acc += op.at(i, j) * slice[j];
            out[split.offsets[i * split.rest_dim + r]] = acc;
        }
    }
    return out;
}

Projection project(const ComplexVec& state, const ComplexVec& basis_vec,
                   std::span<const int> targets, const RegisterShape& shape) {
    if (static_cast<long>(state.size()) != shape.flat_dim())
        throw std::invalid_argument("project: state/shape mismatch");
    if (!is_normalized(state, kInputTol))
        throw std::invalid_argument("project: state not normalized");
    const SubsystemSplit split(targets, shape);
    if (static_cast<long>(basis_vec.size()) != split.target_dim)
        throw std::invalid_argument("project: basis vector dimension mismatch");
    if (!is_normalized(basis_vec, kInputTol))
        throw std::invalid_argument("project: basis vector not normalized");

    ComplexVec amp(split.rest_dim);
    for (long r = 0; r < split.rest_dim; ++r) {
        cx acc = 0.0;
        for (long t = 0; t < split.target_dim; ++t)
            acc += std::conj(basis_vec[t]) * state[split.offsets[t * split.rest_dim + r]];
        amp[r] = acc;
    }
    Projection result;
    result.probability = sq_norm(amp);
    if (result.probability > kDropTol) {
        const double n = std::sqrt(result.probability);
        for (cx& a : amp) a /= n;
        result.residual = std::move(amp);
    } else {
        result.residual.assign(split.rest_dim, cx{});
    }
    return result;
}

std::vector<ComplexVec> gram_schmidt(const std::vector<ComplexVec>& seeds, int keep_first) {
    if (keep_first < 0 || keep_first > static_cast<int>(seeds.size()))
        throw std::invalid_argument("gram_schmidt: keep_first out of range");
    for (int i = 0; i < keep_first; ++i)
        for (int j = 0; j <= i; ++j) {
            const cx g = inner(seeds[i], seeds[j]);
            const double want = (i == j) ? 1.0 : 0.0;
            if (std::abs(g - want) > kEqTol)
                throw std::invalid_argument("gram_schmidt: leading block not orthonormal");
        }

    std::vector<ComplexVec> out;
    out.reserve(seeds.size());
    for (int i = 0; i < static_cast<int>(seeds.size()); ++i) {
        if (i < keep_first) {
            out.push_back(seeds[i]);  // bit-identical
            continue;
        }
        ComplexVec v = seeds[i];
        // two projection sweeps for numerical stability
        for (int sweep = 0; sweep < 2; ++sweep)
            for (const ComplexVec& q : out) {
                const cx g = inner(q, v);
                for (size_t k = 0; k < v.size(); ++k) v[k] -= g * q[k];
            }
        const double n = std::sqrt(sq_norm(v));
        if (n < kGsDropTol) continue;  // linearly dependent
        for (cx& a : v) a /= n;
        out.push_back(std::move(v));
    }
    return out;
}

namespace {

// Column-wise complex Jacobi: orthogonalize the columns of a (copied) matrix
// by two-sided 2x2 unitary column rotations while accumulating them into w,
// so that input = U * diag(sigma) * w^dagger.
struct JacobiSvd {
    int rows, cols;
    std::vector<ComplexVec> col;   // working columns
    std::vector<ComplexVec> wcol;  // accumulated right factor columns

    JacobiSvd(const ComplexVec& flat, int r, int c) : rows(r), cols(c) {
        col.assign(cols, ComplexVec(rows));
        wcol.assign(cols, ComplexVec(cols));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) col[j][i] = flat[static_cast<size_t>(i) * cols + j];
        for (int j = 0; j < cols; ++j) wcol[j][j] = 1.0;
    }

    void rotate(int p, int q, cx c, cx s) {
        // (col_p, col_q) <- (c*col_p + s*col_q, -conj(s)*col_p + conj(c)*col_q)
        for (int i = 0; i < rows; ++i) {
            const cx a = col[p][i], b = col[q][i];
            col[p][i] = c * a + s * b;
            col[q][i] = -std::conj(s) * a + std::conj(c) * b;
        }
        for (int i = 0; i < cols; ++i) {
            const cx a = wcol[p][i], b = wcol[q][i];
            wcol[p][i] = c * a + s * b;
            wcol[q][i] = -std::conj(s) * a + std::conj(c) * b;
        }
    }

    void run() {
        constexpr double tol = 1e-14;
        for (int sweep = 0; sweep < 60; ++sweep) {
            double worst = 0.0;
            for (int p = 0; p < cols; ++p)
                for (int q = p + 1; q < cols; ++q) {
                    const double a = sq_norm(col[p]);
                    const double b = sq_norm(col[q]);
                    const cx g = inner(col[p], col[q]);
                    const double scale = std::sqrt(a * b);
                    if (scale < kDropTol || std::abs(g) <= tol * scale) continue;
                    worst = std::max(worst, std::abs(g) / scale);
                    // diagonalize the 2x2 Hermitian Gram block [[a, g], [conj(g), b]];
                    // the tangent solves t^2 - 2*tau*t - 1 = 0 (smaller root)
                    const double phase = std::arg(g);
                    const double gm = std::abs(g);
                    const double tau = (b - a) / (2.0 * gm);
                    const double t = -(tau >= 0 ? 1.0 : -1.0) /
                                     (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                    const double cth = 1.0 / std::sqrt(1.0 + t * t);
                    const double sth = t * cth;
                    rotate(p, q, cth, sth * std::polar(1.0, -phase));
                }
            if (worst <= tol) break;
        }
    }
};

} // namespace

SchmidtResult schmidt_decompose(const ComplexVec& state, const RegisterShape& shape) {
    if (shape.num_sites() != 2)
        throw std::invalid_argument("schmidt_decompose: shape must have exactly two sites");
    if (static_cast<long>(state.size()) != shape.flat_dim())
        throw std::invalid_argument("schmidt_decompose: state/shape mismatch");
    if (!is_normalized(state, kInputTol))
        throw std::invalid_argument("schmidt_decompose: state not normalized");

    const int dl = shape.sites[0], dr = shape.sites[1];
    JacobiSvd svd(state, dl, dr);
    svd.run();

    const int rank_max = std::min(dl, dr);
    std::vector<int> order(dr);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> sigma(dr);
    for (int j = 0; j < dr; ++j) sigma[j] = std::sqrt(sq_norm(svd.col[j]));
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return sigma[x] > sigma[y]; });

    SchmidtResult result;
    std::vector<int> degenerate_slots;
    for (int k = 0; k < rank_max; ++k) {
        const int j = order[k];
        result.lambdas.push_back(sigma[j] * sigma[j]);
        ComplexVec u(dl);
        if (sigma[j] > kDropTol) {
            for (int i = 0; i < dl; ++i) u[i] = svd.col[j][i] / sigma[j];
        } else {
            degenerate_slots.push_back(k);
        }
        result.left.push_back(std::move(u));
        // state = sum_k sigma_k u_k (x) conj(w_k); w is exactly unitary
        ComplexVec r(dr);
        for (int i = 0; i < dr; ++i) r[i] = std::conj(svd.wcol[j][i]);
        result.right.push_back(std::move(r));
    }
    // fill zero-sigma left directions so the returned frame stays orthonormal
    if (!degenerate_slots.empty()) {
        std::vector<ComplexVec> seeds;
        for (int k = 0; k < rank_max; ++k)
            if (sq_norm(result.left[k]) > 0.5) seeds.push_back(result.left[k]);
        const int nonzero = static_cast<int>(seeds.size());
        for (int e = 0; e < dl; ++e) {
            ComplexVec basis(dl);
            basis[e] = 1.0;
            seeds.push_back(std::move(basis));
        }
        auto ortho = gram_schmidt(seeds, nonzero);
        size_t next = nonzero;
        for (int slot : degenerate_slots)
            if (next < ortho.size()) result.left[slot] = ortho[next++];
    }

    // clean tiny negatives / renormalize the spectrum drift
    double total = 0.0;
    for (double& l : result.lambdas) {
        if (l < 0.0) l = 0.0;
        total += l;
    }
    if (std::abs(total - 1.0) > kInputTol)
        throw std::runtime_error("schmidt_decompose: spectrum failed to normalize");
    return result;
}

} // namespace quditsim
