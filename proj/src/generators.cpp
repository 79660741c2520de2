#include "cpoly/generators.hpp"

#include <cmath>
#include <random>

#include "cpoly/errors.hpp"

namespace cpoly {

namespace {

const std::array<Eigen::Vector3d, 4>& tetra_directions() {
    static const std::array<Eigen::Vector3d, 4> dirs = {
        Eigen::Vector3d(1, 1, 1).normalized(), Eigen::Vector3d(1, -1, -1).normalized(),
        Eigen::Vector3d(-1, 1, -1).normalized(), Eigen::Vector3d(-1, -1, 1).normalized()};
    return dirs;
}

CPolyhedron tetra_at_offset(double h) {
    std::vector<Disk> disks;
    for (const auto& u : tetra_directions()) disks.push_back(cap_to_disk({u, h}));
    return CPolyhedron(validate(4, tetrahedron_faces()), std::move(disks));
}

}  // namespace

CPolyhedron generate_tetra_koebe() { return tetra_at_offset(1.0 / std::sqrt(3.0)); }

CPolyhedron generate_tetra_hyperideal(double h) {
    if (!(h > 1.0 / std::sqrt(3.0) && h < 1.0))
        throw ParamOutOfRange("tetra-hyperideal offset must lie in (1/sqrt(3), 1), got " +
                              std::to_string(h));
    return tetra_at_offset(h);
}

CPolyhedron generate_octa_koebe() { return generate_bipyramid_koebe(4); }

CPolyhedron generate_bipyramid_koebe(int k) {
    if (k < 3) throw ParamOutOfRange("bipyramid needs k >= 3");
    const double h_eq = std::cos(M_PI / k);
    const double h_pole = std::sin(M_PI / k);
    std::vector<Disk> disks;
    for (int i = 0; i < k; ++i) {
        const double a = 2.0 * M_PI * i / k;
        disks.push_back(cap_to_disk({{std::cos(a), std::sin(a), 0.0}, h_eq}));
    }
    disks.push_back(cap_to_disk({{0, 0, 1}, h_pole}));
    disks.push_back(cap_to_disk({{0, 0, -1}, h_pole}));
    return CPolyhedron(validate(k + 2, bipyramid_faces(k)), std::move(disks));
}

CPolyhedron transport(const CPolyhedron& P, const MoebiusMap& phi) {
    std::vector<Disk> disks;
    disks.reserve(P.disks.size());
    for (const auto& d : P.disks) disks.push_back(Disk(normalize_to_de_sitter(phi(d.v)), 1e-9));
    return CPolyhedron(P.tri, std::move(disks));
}

CPolyhedron generate_transported(const CPolyhedron& base, std::uint64_t seed, double scale) {
    return transport(base, random_moebius(seed, scale));
}

CPolyhedron generate_random_shallow(int n, std::uint64_t seed, int budget) {
    if (n < 4) throw ParamOutOfRange("random-shallow needs n >= 4");
    const CPolyhedron start = (n == 4) ? generate_tetra_koebe() : generate_bipyramid_koebe(n - 2);

    std::mt19937_64 rng(seed);
    auto u01 = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    double size = 0.08;
    for (int attempt = 0; attempt < budget; ++attempt) {
        std::vector<Disk> disks;
        disks.reserve(start.disks.size());
        bool ok = true;
        for (const auto& d : start.disks) {
            LVec4 v = d.v;
            v.x += size * (2.0 * u01() - 1.0);
            v.y += size * (2.0 * u01() - 1.0);
            v.z += size * (2.0 * u01() - 1.0);
            v.t += size * (2.0 * u01() - 1.0);
            if (lorentz_norm2(v) <= 0) {
                ok = false;
                break;
            }
            disks.push_back(Disk::from_spacelike(v));
        }
        if (ok) {
            try {
                CPolyhedron cand(start.tri, std::move(disks));
                if (classify_shallowness(cand) <= Shallowness::GloballyShallow &&
                    is_strictly_convex(cand).strictly_convex &&
                    is_hyperbolic(cand).hyperbolic)
                    return cand;
            } catch (const Error&) {
                // rejected; shrink and retry
            }
        }
        size *= 0.995;
    }
    throw GenerationFailed("random-shallow rejection budget exhausted for n = " +
                           std::to_string(n));
}

CPolyhedron generate_improper_star() {
    // Central disk: the southern hemisphere. One neighbor tangent to it at
    // (1,0,0), one overlapping it deeply with the overlap tilted away from
    // +x so that the half-plane disk of the pair swallows the tangency
    // point, and one shallow neighbor to close the tetrahedron.
    const Cap cap_v{{0, 0, -1}, 0.0};
    const Cap cap_u{{0.6, 0.0, 0.8}, 0.6};
    const double psi = -M_PI / 3.0, g = 0.2;
    const Cap cap_w{{std::sin(psi), 0.0, -std::cos(psi)}, g};
    // fourth disk chosen to keep every face hyperbolic while leaving the
    // improper corner at vertex 0 untouched
    const Eigen::Vector3d dir_x = Eigen::Vector3d(0.05, 0.43, 0.90).normalized();
    const Cap cap_x{dir_x, 0.8};

    std::vector<Disk> disks = {cap_to_disk(cap_v), cap_to_disk(cap_u), cap_to_disk(cap_w),
                               cap_to_disk(cap_x)};
    return CPolyhedron(validate(4, tetrahedron_faces()), std::move(disks));
}

CPolyhedron generate(const std::string& kind, const GenerateParams& params) {
    const std::uint64_t seed = params.seed.value_or(12345);
    if (kind == "tetra-koebe") return generate_tetra_koebe();
    if (kind == "octa-koebe") return generate_octa_koebe();
    if (kind == "tetra-hyperideal") {
        if (!params.h) throw ParamOutOfRange("tetra-hyperideal requires an offset h");
        return generate_tetra_hyperideal(*params.h);
    }
    if (kind == "bipyramid-koebe") {
        if (!params.k) throw ParamOutOfRange("bipyramid-koebe requires a gon count k");
        return generate_bipyramid_koebe(*params.k);
    }
    if (kind == "random-shallow") {
        if (!params.n) throw ParamOutOfRange("random-shallow requires a vertex count n");
        return generate_random_shallow(*params.n, seed);
    }
    if (kind == "transported") {
        const std::string base = params.base_kind.value_or("tetra-koebe");
        GenerateParams inner = params;
        inner.base_kind.reset();
        return generate_transported(generate(base, inner), seed, params.scale.value_or(0.5));
    }
    if (kind == "improper-star") return generate_improper_star();
    throw ParamOutOfRange("unknown generator kind '" + kind + "'");
}

}  // namespace cpoly
