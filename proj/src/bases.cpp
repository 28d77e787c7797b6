#include "quditsim/bases.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace quditsim {

namespace {

cx unit_phase(int numerator, int d) {
    // exp(2 pi i numerator / d), numerator reduced so equal residues match bitwise
    int r = numerator % d;
    if (r < 0) r += d;
    return std::polar(1.0, 2.0 * std::numbers::pi * r / d);
}

} // namespace

std::vector<double> BasisVector::schmidt_spectrum(int d) const {
    return schmidt_decompose(ket, RegisterShape({d, d})).lambdas;
}

std::string_view to_string(BasisKind kind) {
    switch (kind) {
        case BasisKind::bell: return "bell";
        case BasisKind::qubit_nme: return "qubit-nme";
        case BasisKind::qudit_nme: return "qudit-nme";
    }
    return "unknown";
}

ComplexMat MeasurementBasis::gram() const {
    const int n = static_cast<int>(vectors.size());
    ComplexMat g(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g.at(a, b) = inner(vectors[a].ket, vectors[b].ket);
    return g;
}

std::pair<int, int> MeasurementBasis::label_of(int index) const {
    if (index < 0 || index >= static_cast<int>(vectors.size()))
        throw std::invalid_argument("MeasurementBasis::label_of: index out of range");
    const int m = vectors[index].class_m;
    int slot = 0;
    for (int i = 0; i < index; ++i)
        if (vectors[i].class_m == m) ++slot;
    return {m, slot};
}

MeasurementBasis bell_basis(int d) {
    if (d < 2) throw std::invalid_argument("bell_basis: d must be >= 2");
    MeasurementBasis basis;
    basis.d = d;
    basis.kind = BasisKind::bell;
    basis.vectors.reserve(static_cast<size_t>(d) * d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int l = 0; l < d; ++l)
        for (int p = 0; p < d; ++p) {
            BasisVector v;
            v.ket.assign(static_cast<size_t>(d) * d, cx{});
            for (int k = 0; k < d; ++k)
                v.ket[static_cast<size_t>((k + p) % d) * d + k] = amp * unit_phase(l * k, d);
            // |k+p>|k> lies in span{|j>|j+m>} with m = -p mod d
            v.class_m = (d - p) % d;
            v.phase_l = l;
            v.designated = true;
            v.norm_const = amp;
            basis.vectors.push_back(std::move(v));
        }
    return basis;
}

std::vector<cx> bell_expand(int i, int j, int d) {
    if (d < 2) throw std::invalid_argument("bell_expand: d must be >= 2");
    if (i < 0 || i >= d || j < 0 || j >= d)
        throw std::invalid_argument("bell_expand: index out of range");
    std::vector<cx> coeffs(static_cast<size_t>(d) * d, cx{});
    const int p = ((i - j) % d + d) % d;  // the only shift whose vectors touch |ij>
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int l = 0; l < d; ++l) coeffs[static_cast<size_t>(l) * d + p] = amp * unit_phase(-l * j, d);
    return coeffs;
}

MeasurementBasis qubit_nme_basis(cx l, cx p) {
    const double big_l = 1.0 / std::sqrt(1.0 + std::norm(l));
    const double big_p = 1.0 / std::sqrt(1.0 + std::norm(p));

    auto vec = [](cx a00, cx a01, cx a10, cx a11) {
        return ComplexVec{a00, a01, a10, a11};
    };
    MeasurementBasis basis;
    basis.d = 2;
    basis.kind = BasisKind::qubit_nme;
    basis.vectors.resize(4);

    // class m = 0: span{|00>, |11>}
    basis.vectors[0] = {vec(big_l, 0, 0, big_l * l), 0, std::nullopt, false, big_l};
    basis.vectors[1] = {vec(big_l * std::conj(l), 0, 0, -big_l), 0, std::nullopt, true, big_l};
    // class m = 1: span{|01>, |10>}
    basis.vectors[2] = {vec(0, big_p, big_p * p, 0), 1, std::nullopt, true, big_p};
    basis.vectors[3] = {vec(0, big_p * std::conj(p), -big_p, 0), 1, std::nullopt, false, big_p};
    return basis;
}

std::vector<BasisVector> qudit_nme_designated(const ResourceState& resource,
                                              std::span<const int> l_choice) {
    if (!resource.full_rank)
        throw rank_error("protocol requires full Schmidt rank");
    const int d = resource.d;
    if (static_cast<int>(l_choice.size()) != d)
        throw std::invalid_argument("qudit_nme_designated: l_choice must have d entries");
    for (int l : l_choice)
        if (l < 0 || l >= d) throw std::invalid_argument("qudit_nme_designated: phase label out of range");

    double inv_sum = 0.0;
    for (const cx& c : resource.coeffs) inv_sum += 1.0 / std::norm(c);
    const double norm_const = 1.0 / std::sqrt(inv_sum);  // independent of l and m

    std::vector<BasisVector> designated;
    designated.reserve(d);
    for (int m = 0; m < d; ++m) {
        BasisVector v;
        v.ket.assign(static_cast<size_t>(d) * d, cx{});
        for (int j = 0; j < d; ++j) {
            const int jm = (j + m) % d;
            v.ket[static_cast<size_t>(j) * d + jm] =
                norm_const * unit_phase(l_choice[m] * j, d) / std::conj(resource.coeffs[jm]);
        }
        v.class_m = m;
        v.phase_l = l_choice[m];
        v.designated = true;
        v.norm_const = norm_const;
        designated.push_back(std::move(v));
    }
    return designated;
}

MeasurementBasis complete_nme_basis(std::vector<BasisVector> designated, int d) {
    if (static_cast<int>(designated.size()) != d)
        throw std::invalid_argument("complete_nme_basis: need exactly one vector per class");
    std::sort(designated.begin(), designated.end(),
              [](const BasisVector& a, const BasisVector& b) { return a.class_m < b.class_m; });
    for (int m = 0; m < d; ++m)
        if (designated[m].class_m != m)
            throw std::invalid_argument("complete_nme_basis: classes must cover 0..d-1");

    MeasurementBasis basis;
    basis.d = d;
    basis.kind = BasisKind::qudit_nme;
    basis.vectors.reserve(static_cast<size_t>(d) * d);
    for (int m = 0; m < d; ++m) {
        std::vector<ComplexVec> seeds;
        seeds.reserve(d + 1);
        seeds.push_back(designated[m].ket);
        for (int j = 0; j < d; ++j) {
            ComplexVec e(static_cast<size_t>(d) * d, cx{});
            e[static_cast<size_t>(j) * d + (j + m) % d] = 1.0;
            seeds.push_back(std::move(e));
        }
        auto ortho = gram_schmidt(seeds, 1);
        if (static_cast<int>(ortho.size()) != d)
            throw std::runtime_error("complete_nme_basis: class completion has wrong size");
        basis.vectors.push_back(designated[m]);
        for (int s = 1; s < d; ++s) {
            BasisVector filler;
            filler.ket = std::move(ortho[s]);
            filler.class_m = m;
            filler.designated = false;
            basis.vectors.push_back(std::move(filler));
        }
    }
    return basis;
}

MeasurementBasis nme_basis(const ResourceState& resource, std::span<const int> l_choice) {
    std::vector<int> choice(l_choice.begin(), l_choice.end());
    if (choice.empty()) choice.assign(resource.d, 0);
    return complete_nme_basis(qudit_nme_designated(resource, choice), resource.d);
}

ComplexMat class_overlap_gram(const ResourceState& resource, int m) {
    if (!resource.full_rank)
        throw rank_error("protocol requires full Schmidt rank");
    const int d = resource.d;
    if (m < 0 || m >= d) throw std::invalid_argument("class_overlap_gram: class out of range");

    std::vector<double> inv_weight(d);
    double inv_sum = 0.0;
    for (int n = 0; n < d; ++n) {
        inv_weight[n] = 1.0 / std::norm(resource.coeffs[(n + m) % d]);
        inv_sum += inv_weight[n];
    }
    ComplexMat g(d, d);
    for (int l = 0; l < d; ++l)
        for (int k = 0; k < d; ++k) {
            cx acc = 0.0;
            for (int n = 0; n < d; ++n) acc += inv_weight[n] * unit_phase(-(l - k) * n, d);
            g.at(l, k) = acc / inv_sum;
        }
    return g;
}

} // namespace quditsim
