// rdc.hpp
// Risk-dependent centrality. For an external-risk level zeta in (0, 1] and
// the MST adjacency A, the centrality of node i is the i-th row sum of
// e^{zeta A}: the 1/k!-damped count of walks leaving i. It splits into
//
//   circulability   (e^{zeta A})_ii          closed walks at i
//   transmissibility sum_{j != i} (e^{zeta A})_ij   walks ending elsewhere
//
// e^{zeta A} is evaluated spectrally: A = Q diag(lambda) Q^T once per
// window, then e^{zeta A} = Q diag(e^{zeta lambda}) Q^T for every zeta.

#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "rdcnet/network.hpp"

namespace rdcnet {

// Ordered external-risk levels, all in (0, 1].
class ZetaGrid {
public:
    explicit ZetaGrid(std::vector<double> values);  // validates

    // The reference grid: 0.01, 0.02, ..., 1.00 (100 values).
    static ZetaGrid default_grid();
    // Inclusive arithmetic grid; the last point is snapped to `end` when the
    // range is a whole number of steps.
    static ZetaGrid from_range(double start, double end, double step);

    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }

private:
    std::vector<double> values_;
};

struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;   // descending
    Eigen::MatrixXd eigenvectors;  // orthogonal, columns match eigenvalues
};

// Symmetric eigendecomposition of A with eigenvalues sorted descending.
// Throws ComputeError when max |A - A^T| >= 1e-14.
SpectralDecomposition spectral_decompose(const Eigen::MatrixXd& a);

// e^{zeta A} = Q diag(e^{zeta lambda}) Q^T, symmetrized against rounding.
// Requires zeta >= 0.
Eigen::MatrixXd expm_scaled(const SpectralDecomposition& decomp, double zeta);

// Per-asset centrality over the whole grid. rdc = circulability +
// transmissibility columnwise; each column reuses one decomposition.
struct RdcProfile {
    std::vector<std::string> assets;
    std::vector<double> zetas;
    Eigen::MatrixXd rdc;               // n x |grid|
    Eigen::MatrixXd circulability;     // n x |grid|
    Eigen::MatrixXd transmissibility;  // n x |grid|
};

// Profile for an arbitrary symmetric adjacency (binary or weighted).
RdcProfile rdc_profile(const Eigen::MatrixXd& adjacency, std::vector<std::string> assets,
                       const ZetaGrid& grid);

// Profile for a tree's binary adjacency (the default downstream of the MST).
RdcProfile rdc_profile(const MstTree& tree, const ZetaGrid& grid);

}  // namespace rdcnet
