#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "cpoly/continuation.hpp"
#include "cpoly/errors.hpp"
#include "cpoly/generators.hpp"
#include "cpoly/io.hpp"
#include "cpoly/properness.hpp"
#include "cpoly/render.hpp"
#include "cpoly/rigidity.hpp"

using nlohmann::json;

namespace {

int exit_code_for(const cpoly::Error& e) {
    switch (e.kind()) {
        case cpoly::ErrorKind::InvalidInput: return 2;
        case cpoly::ErrorKind::PropertyFalse: return 1;
        case cpoly::ErrorKind::Numerical: return 3;
    }
    return 3;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("CPOLY_SEED")) return std::strtoull(env, nullptr, 10);
    return 12345;
}

json report_to_json(const cpoly::AnalysisReport& rep, const cpoly::CPolyhedron& P) {
    json j;
    j["strictly_convex"] = rep.strictly_convex;
    j["convex"] = rep.convex;
    j["edge_determinant_sign"] = rep.edge_determinant_sign;
    j["min_abs_edge_determinant"] = rep.min_abs_psi;
    j["hyperbolic"] = rep.hyperbolic;
    j["shallowness"] = cpoly::to_string(rep.shallowness);
    j["proper"] = rep.proper;
    json unitary = json::array();
    for (int e : rep.unitary) {
        const auto& edge = P.tri.edges[static_cast<size_t>(e)];
        unitary.push_back({P.tri.ids[static_cast<size_t>(edge.i)],
                           P.tri.ids[static_cast<size_t>(edge.j)]});
    }
    j["unitary_edges"] = unitary;
    json wit = json::array();
    for (const auto& w : rep.witnesses)
        wit.push_back({{"vertex", P.tri.ids[static_cast<size_t>(w.v)]},
                       {"point_neighbor", P.tri.ids[static_cast<size_t>(w.w_point)]},
                       {"disk_neighbor", P.tri.ids[static_cast<size_t>(w.w_disk)]},
                       {"margin", w.margin}});
    j["witnesses"] = wit;
    return j;
}

json matrix_to_json(const Eigen::Matrix4d& m) {
    json rows = json::array();
    for (int r = 0; r < 4; ++r) {
        json row = json::array();
        for (int c = 0; c < 4; ++c) row.push_back(m(r, c));
        rows.push_back(row);
    }
    return rows;
}

void print_warnings(const cpoly::LoadResult& lr) {
    for (const auto& w : lr.warnings) std::cerr << "warning: " << w << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"circle polyhedra on the de Sitter sphere: analysis, rigidity and "
                 "Moebius congruence"};
    app.require_subcommand(1);

    std::string file_a, file_b, out_path, kind, base_kind = "tetra-koebe";
    std::string direction = "disjoint";
    bool as_json = false, via_deformation = false, orthocircles = false;
    double mu = 0.1, tol = 1e-8, offset = 0.7, scale = 0.5;
    int steps = 10, gon = 4, count = 6, link_vertex = -1;
    std::uint64_t seed = default_seed();

    auto* c_validate = app.add_subcommand("validate", "check a cpoly/1 file");
    c_validate->add_option("file", file_a)->required();

    auto* c_analyze = app.add_subcommand("analyze", "full predicate report");
    c_analyze->add_option("file", file_a)->required();
    c_analyze->add_flag("--json", as_json);

    auto* c_measures = app.add_subcommand("measures", "print the measure vector");
    c_measures->add_option("file", file_a)->required();
    c_measures->add_flag("--json", as_json);

    auto* c_rank = app.add_subcommand("rank", "Jacobian rank certificate");
    c_rank->add_option("file", file_a)->required();
    c_rank->add_flag("--json", as_json);

    auto* c_congruent = app.add_subcommand("congruent", "decide Moebius congruence");
    c_congruent->add_option("fileA", file_a)->required();
    c_congruent->add_option("fileB", file_b)->required();
    c_congruent->add_flag("--via-deformation", via_deformation);
    c_congruent->add_option("--mu", mu);
    c_congruent->add_option("--steps", steps);
    c_congruent->add_option("--tol", tol);
    c_congruent->add_flag("--json", as_json);

    auto* c_deform = app.add_subcommand("deform", "deform away from unitary edges");
    c_deform->add_option("file", file_a)->required();
    c_deform->add_option("--mu", mu);
    c_deform->add_option("--steps", steps);
    c_deform->add_option("--deform-direction", direction)
        ->check(CLI::IsMember({"disjoint", "overlap"}));
    c_deform->add_option("-o,--output", out_path)->required();
    c_deform->add_flag("--json", as_json);

    auto* c_generate = app.add_subcommand("generate", "canonical instances");
    c_generate->add_option("kind", kind)->required();
    c_generate->add_option("--offset", offset, "cap offset for tetra-hyperideal");
    c_generate->add_option("--gon", gon, "equator size for bipyramid-koebe");
    c_generate->add_option("--count", count, "vertex count for random-shallow");
    c_generate->add_option("--seed", seed);
    c_generate->add_option("--scale", scale, "transport magnitude");
    c_generate->add_option("--base", base_kind, "base kind for transported");
    c_generate->add_option("-o,--output", out_path)->required();

    auto* c_render = app.add_subcommand("render", "stereographic SVG");
    c_render->add_option("file", file_a)->required();
    c_render->add_option("--vertex", link_vertex, "draw the vertex polygon of this id");
    c_render->add_flag("--orthocircles", orthocircles);
    c_render->add_option("-o,--output", out_path)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*c_validate) {
            const cpoly::LoadResult lr = cpoly::load(file_a);
            print_warnings(lr);
            std::cout << "valid cpoly/1: n = " << lr.polyhedron.n()
                      << ", edges = " << lr.polyhedron.tri.edge_count()
                      << ", faces = " << lr.polyhedron.tri.face_count() << "\n";
            return 0;
        }

        if (*c_analyze) {
            const cpoly::LoadResult lr = cpoly::load(file_a);
            print_warnings(lr);
            const cpoly::AnalysisReport rep = cpoly::analyze(lr.polyhedron);
            if (as_json) {
                std::cout << report_to_json(rep, lr.polyhedron).dump(2) << "\n";
            } else {
                std::cout << "strictly_convex: " << (rep.strictly_convex ? "true" : "false")
                          << "\nconvex: " << (rep.convex ? "true" : "false")
                          << "\nedge_determinant_sign: " << rep.edge_determinant_sign
                          << "\nmin |edge determinant|: " << rep.min_abs_psi
                          << "\nhyperbolic: " << (rep.hyperbolic ? "true" : "false")
                          << "\nshallowness: " << cpoly::to_string(rep.shallowness)
                          << "\nunitary edges: " << rep.unitary.size()
                          << "\nproper: " << (rep.proper ? "true" : "false") << "\n";
                for (const auto& w : rep.witnesses)
                    std::cout << "  witness: vertex "
                              << lr.polyhedron.tri.ids[static_cast<size_t>(w.v)] << ", point "
                              << lr.polyhedron.tri.ids[static_cast<size_t>(w.w_point)]
                              << " inside disk "
                              << lr.polyhedron.tri.ids[static_cast<size_t>(w.w_disk)]
                              << ", margin " << w.margin << "\n";
            }
            return 0;
        }

        if (*c_measures) {
            const cpoly::LoadResult lr = cpoly::load(file_a);
            print_warnings(lr);
            const Eigen::VectorXd f =
                cpoly::measure(cpoly::to_configuration(lr.polyhedron));
            const auto& tri = lr.polyhedron.tri;
            if (as_json) {
                json j;
                json edges = json::array();
                for (int e = 0; e < tri.edge_count(); ++e)
                    edges.push_back({{"edge",
                                      {tri.ids[static_cast<size_t>(tri.edges[static_cast<size_t>(e)].i)],
                                       tri.ids[static_cast<size_t>(tri.edges[static_cast<size_t>(e)].j)]}},
                                     {"value", f[e]}});
                json verts = json::array();
                for (int v = 0; v < tri.n; ++v)
                    verts.push_back({{"vertex", tri.ids[static_cast<size_t>(v)]},
                                     {"value", f[tri.edge_count() + v]}});
                j["edge_entries"] = edges;
                j["vertex_entries"] = verts;
                std::cout << j.dump(2) << "\n";
            } else {
                char buf[48];
                for (int e = 0; e < tri.edge_count(); ++e) {
                    const auto& edge = tri.edges[static_cast<size_t>(e)];
                    std::snprintf(buf, sizeof(buf), "%.17g", f[e]);
                    std::cout << "edge " << tri.ids[static_cast<size_t>(edge.i)] << " "
                              << tri.ids[static_cast<size_t>(edge.j)] << ": " << buf << "\n";
                }
                for (int v = 0; v < tri.n; ++v) {
                    std::snprintf(buf, sizeof(buf), "%.17g", f[tri.edge_count() + v]);
                    std::cout << "vertex " << tri.ids[static_cast<size_t>(v)] << ": " << buf
                              << "\n";
                }
            }
            return 0;
        }

        if (*c_rank) {
            const cpoly::LoadResult lr = cpoly::load(file_a);
            print_warnings(lr);
            const cpoly::RigidityReport rep =
                cpoly::is_infinitesimally_rigid(cpoly::to_configuration(lr.polyhedron));
            if (as_json) {
                json j{{"rank", rep.rank},
                       {"expected", rep.expected_rank},
                       {"rigid", rep.rigid},
                       {"gap", std::isinf(rep.gap) ? json("inf") : json(rep.gap)},
                       {"strictly_convex_certified", rep.strictly_convex_certified}};
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "rank " << rep.rank << " / expected " << rep.expected_rank
                          << ", gap ";
                if (std::isinf(rep.gap))
                    std::cout << "inf";
                else
                    std::cout << rep.gap;
                std::cout << (rep.strictly_convex_certified
                                  ? ""
                                  : " (warning: not strictly convex, theorem not applicable)")
                          << "\n";
            }
            return rep.rigid ? 0 : 1;
        }

        if (*c_congruent) {
            const cpoly::LoadResult la = cpoly::load(file_a), lb = cpoly::load(file_b);
            print_warnings(la);
            print_warnings(lb);
            const cpoly::ConfigurationState A = cpoly::to_configuration(la.polyhedron);
            const cpoly::ConfigurationState B = cpoly::to_configuration(lb.polyhedron);

            cpoly::CongruenceResult res;
            json j;
            if (via_deformation) {
                const cpoly::DeformationCongruence out =
                    cpoly::congruent_via_deformation(A, B, mu, steps, tol);
                res = out.direct;
                j["deformed"] = out.deformed;
                j["congruent_at_positive_t"] = out.congruent_at_positive_t;
                j["cauchy"] = out.cauchy;
                j["final_successive_difference"] = out.final_diff;
                j["trail_t"] = out.trail_t;
                j["trail_difference"] = out.trail_diff;
                if (!as_json) {
                    std::cout << "deformation trail (t, map change):\n";
                    for (size_t k = 0; k < out.trail_diff.size(); ++k)
                        std::cout << "  t = " << out.trail_t[k + 1]
                                  << ", |dphi| = " << out.trail_diff[k] << "\n";
                    std::cout << "Cauchy: " << (out.cauchy ? "true" : "false")
                              << " (final difference " << out.final_diff << ")\n";
                }
            } else {
                res = cpoly::fit_congruence(A, B, -1, tol);
            }
            j["congruent"] = res.congruent;
            j["residual"] = res.residual;
            j["pairing_residual"] = res.pairing_residual;
            j["anchor_face"] = res.anchor_face;
            j["map"] = matrix_to_json(res.map.matrix());
            if (as_json) {
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "congruent: " << (res.congruent ? "true" : "false")
                          << "\nresidual: " << res.residual << "\nmap:\n";
                for (int r = 0; r < 4; ++r) {
                    for (int c = 0; c < 4; ++c) std::cout << " " << res.map.matrix()(r, c);
                    std::cout << "\n";
                }
            }
            return res.congruent ? 0 : 1;
        }

        if (*c_deform) {
            const cpoly::LoadResult lr = cpoly::load(file_a);
            print_warnings(lr);
            const cpoly::ConfigurationState S = cpoly::to_configuration(lr.polyhedron);
            cpoly::PathSpec spec;
            spec.unitary_edge_set = cpoly::unitary_edges(lr.polyhedron);
            spec.mu = mu;
            spec.steps = steps;
            spec.direction = direction == "overlap" ? -1 : +1;
            const cpoly::DeformationResult d = cpoly::deform(S, spec);
            const cpoly::CPolyhedron out = cpoly::to_cpolyhedron(d.final_state());
            cpoly::Metadata meta = lr.metadata;
            meta["deformed_from"] = file_a;
            meta["mu"] = std::to_string(mu);
            meta["steps"] = std::to_string(steps);
            meta["direction"] = direction;
            cpoly::save(out, out_path, meta);
            if (as_json) {
                json j{{"max_residual", d.max_residual},
                       {"accepted_steps", d.steps.size()},
                       {"certified", d.certified},
                       {"output", out_path}};
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "deformed in " << d.steps.size() - 1
                          << " accepted steps, max measure residual " << d.max_residual
                          << "\nwrote " << out_path << "\n";
            }
            return 0;
        }

        if (*c_generate) {
            cpoly::GenerateParams params;
            params.h = offset;
            params.k = gon;
            params.n = count;
            params.seed = seed;
            params.scale = scale;
            params.base_kind = base_kind;
            const cpoly::CPolyhedron P = cpoly::generate(kind, params);
            cpoly::Metadata meta;
            meta["generator"] = kind;
            if (kind == "tetra-hyperideal") meta["offset"] = std::to_string(offset);
            if (kind == "bipyramid-koebe") meta["gon"] = std::to_string(gon);
            if (kind == "random-shallow") {
                meta["count"] = std::to_string(count);
                meta["seed"] = std::to_string(seed);
            }
            if (kind == "transported") {
                meta["seed"] = std::to_string(seed);
                meta["scale"] = std::to_string(scale);
                meta["base"] = base_kind;
            }
            cpoly::save(P, out_path, meta);
            std::cout << "wrote " << out_path << "\n";
            return 0;
        }

        if (*c_render) {
            const cpoly::LoadResult lr = cpoly::load(file_a);
            print_warnings(lr);
            cpoly::RenderSpec spec;
            spec.draw_orthocircles = orthocircles;
            if (link_vertex >= 0) {
                // the option takes an external id; map to the dense index
                int idx = -1;
                for (size_t i = 0; i < lr.polyhedron.tri.ids.size(); ++i)
                    if (lr.polyhedron.tri.ids[i] == link_vertex) idx = static_cast<int>(i);
                if (idx < 0)
                    throw cpoly::SchemaError("no vertex with id " +
                                             std::to_string(link_vertex));
                spec.link_vertex = idx;
            }
            const std::string svg = cpoly::render(lr.polyhedron, spec);
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw cpoly::ParseError("cannot open '" + out_path + "'");
            out << svg;
            std::cout << "wrote " << out_path << "\n";
            return 0;
        }
    } catch (const cpoly::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
