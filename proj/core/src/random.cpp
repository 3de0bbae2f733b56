#include "densecap/random.hpp"

#include <cmath>

#include <Eigen/QR>

namespace densecap {
namespace {

CMatrix ginibre(int rows, int cols, Engine& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) g(i, j) = Complex(normal(rng), normal(rng));
    return g;
}

}  // namespace

CMatrix random_unitary(int dim, Engine& rng) {
    const CMatrix g = ginibre(dim, dim, rng);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag > 0.0) q.col(j) *= r(j, j) / mag;
    }
    return q;
}

CVector random_pure_vector(int dim, Engine& rng) {
    CVector v = ginibre(dim, 1, rng).col(0);
    return v / v.norm();
}

DensityMatrix random_density_matrix(int dim, Engine& rng) { return random_density_matrix(dim, dim, rng); }

DensityMatrix random_density_matrix(int dim, int rank, Engine& rng) {
    if (dim < 1 || rank < 1) throw Error(ErrorCode::InvalidDimension, "dimension and rank must be positive");
    const CMatrix g = ginibre(dim, rank, rng);
    CMatrix m = g * g.adjoint();
    m /= m.trace().real();
    return DensityMatrix((m + m.adjoint()) * 0.5);
}

BipartiteState random_bipartite(Dims dims, Engine& rng) {
    return BipartiteState(random_density_matrix(dims.joint(), rng), dims);
}

OrthonormalFrame random_frame(Engine& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::Matrix3d g;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g(i, j) = normal(rng);
    Eigen::HouseholderQR<Eigen::Matrix3d> qr(g);
    Eigen::Matrix3d q = qr.householderQ();
    if (q.determinant() < 0.0) q.col(0) = -q.col(0);
    return OrthonormalFrame::from_matrix(q);
}

BlochVector random_bloch(Engine& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    Eigen::Vector3d v(normal(rng), normal(rng), normal(rng));
    v *= std::cbrt(uniform(rng)) / v.norm();
    return BlochVector::from(v);
}

}  // namespace densecap
