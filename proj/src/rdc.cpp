#include "rdcnet/rdc.hpp"

#include <algorithm>
#include <cmath>

#include "rdcnet/common.hpp"

namespace rdcnet {

ZetaGrid::ZetaGrid(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw InputError("zeta grid is empty");
    }
    double prev = 0.0;
    for (double z : values_) {
        if (!std::isfinite(z) || z <= 0.0 || z > 1.0) {
            throw InputError("zeta value outside (0, 1]");
        }
        if (z <= prev) {
            throw InputError("zeta grid is not strictly increasing");
        }
        prev = z;
    }
}

ZetaGrid ZetaGrid::default_grid() { return from_range(0.01, 1.00, 0.01); }

ZetaGrid ZetaGrid::from_range(double start, double end, double step) {
    if (!(step > 0.0)) {
        throw InputError("zeta step must be positive");
    }
    if (!(start > 0.0) || end > 1.0 || end < start) {
        throw InputError("zeta range must satisfy 0 < start <= end <= 1");
    }
    auto count = static_cast<long>(std::llround((end - start) / step)) + 1;
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(count));
    for (long k = 0; k < count; ++k) {
        values.push_back(start + static_cast<double>(k) * step);
    }
    // Accumulated steps can overshoot `end` by an ulp; pin the last point so
    // the (0, 1] bound holds exactly.
    if (std::abs(values.back() - end) < step / 2.0) {
        values.back() = end;
    }
    return ZetaGrid(std::move(values));
}

SpectralDecomposition spectral_decompose(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols() || a.rows() == 0) {
        throw ComputeError("spectral_decompose: matrix must be square and non-empty");
    }
    double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
    if (asym >= 1e-14) {
        throw ComputeError("spectral_decompose: matrix is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    if (solver.info() != Eigen::Success) {
        throw ComputeError("spectral_decompose: eigensolver failed");
    }

    // Eigen returns eigenvalues ascending; flip to descending so that the
    // dominant mode is first.
    const auto n = a.rows();
    SpectralDecomposition decomp;
    decomp.eigenvalues.resize(n);
    decomp.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        decomp.eigenvalues(k) = solver.eigenvalues()(n - 1 - k);
        decomp.eigenvectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    }
    return decomp;
}

Eigen::MatrixXd expm_scaled(const SpectralDecomposition& decomp, double zeta) {
    if (!(zeta >= 0.0)) {
        throw ComputeError("expm_scaled: zeta must be >= 0");
    }
    Eigen::VectorXd scale = (zeta * decomp.eigenvalues.array()).exp();
    Eigen::MatrixXd m =
        decomp.eigenvectors * scale.asDiagonal() * decomp.eigenvectors.transpose();
    return ((m + m.transpose()) * 0.5).eval();
}

RdcProfile rdc_profile(const Eigen::MatrixXd& adjacency, std::vector<std::string> assets,
                       const ZetaGrid& grid) {
    const auto n = adjacency.rows();
    if (static_cast<std::size_t>(n) != assets.size()) {
        throw ComputeError("rdc_profile: asset list does not match adjacency");
    }
    SpectralDecomposition decomp = spectral_decompose(adjacency);

    const auto m = static_cast<Eigen::Index>(grid.size());
    RdcProfile profile;
    profile.assets = std::move(assets);
    profile.zetas = grid.values();
    profile.rdc.resize(n, m);
    profile.circulability.resize(n, m);
    profile.transmissibility.resize(n, m);

    // Row sums and diagonal of Q e^{zeta L} Q^T without forming the matrix:
    //   rowsum = Q (e^{zeta lambda} .* (Q^T 1));  diag = (Q .* Q) e^{zeta lambda}.
    Eigen::VectorXd qt_ones = decomp.eigenvectors.transpose() * Eigen::VectorXd::Ones(n);
    Eigen::MatrixXd q_squared = decomp.eigenvectors.cwiseProduct(decomp.eigenvectors);
    for (Eigen::Index c = 0; c < m; ++c) {
        Eigen::VectorXd scale = (profile.zetas[static_cast<std::size_t>(c)] *
                                 decomp.eigenvalues.array())
                                    .exp();
        Eigen::VectorXd rowsum = decomp.eigenvectors * scale.cwiseProduct(qt_ones);
        Eigen::VectorXd diag = q_squared * scale;
        profile.rdc.col(c) = rowsum;
        profile.circulability.col(c) = diag;
        profile.transmissibility.col(c) = rowsum - diag;
    }
    return profile;
}

RdcProfile rdc_profile(const MstTree& tree, const ZetaGrid& grid) {
    return rdc_profile(tree.adjacency(false), tree.assets, grid);
}

}  // namespace rdcnet
