#include "cpoly/lorentz.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "cpoly/errors.hpp"

namespace cpoly {

double lorentz_ip(const LVec4& u, const LVec4& v) {
    return u.x * v.x + u.y * v.y + u.z * v.z - u.t * v.t;
}

CausalClass classify(const LVec4& u, double eps_class) {
    const double q = lorentz_norm2(u);
    const double e2 = u.x * u.x + u.y * u.y + u.z * u.z + u.t * u.t;
    const double band = eps_class * e2;
    if (q > band) return CausalClass::Spacelike;
    if (q < -band) return CausalClass::Timelike;
    return CausalClass::Lightlike;
}

LVec4 normalize_to_de_sitter(const LVec4& u) {
    const double q = lorentz_norm2(u);
    if (q <= 0.0)
        throw NotSpacelike("cannot normalize vector with <u,u> = " + std::to_string(q));
    return u / std::sqrt(q);
}

LVec4 hyperplane_normal(const LVec4& u1, const LVec4& u2, const LVec4& u3) {
    Eigen::Matrix<double, 3, 4> stack;
    stack.row(0) = u1.to_eigen().transpose();
    stack.row(1) = u2.to_eigen().transpose();
    stack.row(2) = u3.to_eigen().transpose();

    Eigen::JacobiSVD<Eigen::Matrix<double, 3, 4>> svd(stack);
    const auto& sv = svd.singularValues();
    if (!(sv(0) > 0.0) || sv(2) < 1e-12 * sv(0))
        throw DegenerateSpan("hyperplane_normal: inputs are linearly dependent");

    // Euclidean nullspace direction by cofactor expansion along the deleted column.
    auto minor3 = [&](int skip) {
        Eigen::Matrix3d m;
        for (int r = 0; r < 3; ++r) {
            int c = 0;
            for (int col = 0; col < 4; ++col) {
                if (col == skip) continue;
                m(r, c++) = stack(r, col);
            }
        }
        return m.determinant();
    };
    Eigen::Vector4d nE;
    for (int col = 0; col < 4; ++col)
        nE(col) = ((col % 2 == 0) ? 1.0 : -1.0) * minor3(col);

    // nE . u_i = 0 euclidean; twist with eta so <n, u_i> = 0 in the Lorentz form.
    return eta_pair(LVec4::from_eigen(nE));
}

double det4(const LVec4& u1, const LVec4& u2, const LVec4& u3, const LVec4& u4) {
    Eigen::Matrix4d m;
    m.row(0) = u1.to_eigen().transpose();
    m.row(1) = u2.to_eigen().transpose();
    m.row(2) = u3.to_eigen().transpose();
    m.row(3) = u4.to_eigen().transpose();
    return m.determinant();
}

}  // namespace cpoly
