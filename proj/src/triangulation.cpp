#include "cpoly/triangulation.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <string>

#include "cpoly/errors.hpp"

namespace cpoly {

int Triangulation::edge_index(int a, int b) const {
    if (a > b) std::swap(a, b);
    auto it = std::lower_bound(edges.begin(), edges.end(), std::pair(a, b),
                               [](const Edge& e, const std::pair<int, int>& key) {
                                   return std::pair(e.i, e.j) < key;
                               });
    if (it == edges.end() || it->i != a || it->j != b) return -1;
    return static_cast<int>(it - edges.begin());
}

int vertex_connectivity(int n, const std::vector<std::array<int, 2>>& undirected_edges) {
    std::vector<std::vector<int>> adj(n);
    std::vector<std::vector<char>> is_adj(n, std::vector<char>(n, 0));
    for (auto [a, b] : undirected_edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
        is_adj[a][b] = is_adj[b][a] = 1;
    }

    // Split-node flow network: node v -> (2v = in, 2v+1 = out).
    const int big = n + 7;
    auto max_flow = [&](int s, int t, int stop_at) {
        const int nodes = 2 * n;
        std::map<std::pair<int, int>, int> cap;
        auto add = [&](int u, int v, int c) { cap[{u, v}] += c; };
        for (int v = 0; v < n; ++v) add(2 * v, 2 * v + 1, (v == s || v == t) ? big : 1);
        for (auto [a, b] : undirected_edges) {
            add(2 * a + 1, 2 * b, big);
            add(2 * b + 1, 2 * a, big);
        }
        int flow = 0;
        while (flow < stop_at) {
            std::vector<int> prev(nodes, -1);
            std::queue<int> q;
            q.push(2 * s + 1);
            prev[2 * s + 1] = 2 * s + 1;
            while (!q.empty() && prev[2 * t] == -1) {
                int u = q.front();
                q.pop();
                for (int v = 0; v < nodes; ++v) {
                    auto it = cap.find({u, v});
                    if (it != cap.end() && it->second > 0 && prev[v] == -1) {
                        prev[v] = u;
                        q.push(v);
                    }
                }
            }
            if (prev[2 * t] == -1) break;
            for (int v = 2 * t; v != 2 * s + 1; v = prev[v]) {
                cap[{prev[v], v}] -= 1;
                cap[{v, prev[v]}] += 1;
            }
            ++flow;
        }
        return flow;
    };

    int best = n - 1;
    for (int s = 0; s < n; ++s)
        for (int t = s + 1; t < n; ++t) {
            if (is_adj[s][t]) continue;
            best = std::min(best, max_flow(s, t, best + 1));
        }
    return best;
}

Triangulation validate(int n, const std::vector<std::array<int, 3>>& raw_faces,
                       const std::vector<std::int64_t>* ids) {
    if (n < 4) throw TooFewVertices("triangulation needs n >= 4, got " + std::to_string(n));

    Triangulation tri;
    tri.n = n;
    tri.faces = raw_faces;
    if (ids) {
        tri.ids = *ids;
    } else {
        tri.ids.resize(n);
        for (int i = 0; i < n; ++i) tri.ids[i] = i + 1;
    }

    for (const auto& f : raw_faces) {
        for (int v : f)
            if (v < 0 || v >= n)
                throw SchemaError("face references vertex index " + std::to_string(v));
        if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2])
            throw SchemaError("face with a repeated vertex");
    }

    // Directed edge -> third vertex of its face; each must appear exactly once.
    std::map<std::pair<int, int>, int> third;
    std::map<std::pair<int, int>, int> undirected_count;
    for (const auto& f : raw_faces) {
        for (int r = 0; r < 3; ++r) {
            const int a = f[r], b = f[(r + 1) % 3], c = f[(r + 2) % 3];
            undirected_count[{std::min(a, b), std::max(a, b)}]++;
            auto [it, fresh] = third.insert({{a, b}, c});
            if (!fresh) {
                const auto cnt = undirected_count[{std::min(a, b), std::max(a, b)}];
                if (cnt <= 2)
                    throw InconsistentOrientation("directed edge (" + std::to_string(a) + "," +
                                                  std::to_string(b) + ") traversed twice");
                throw NonManifoldEdge("edge {" + std::to_string(a) + "," + std::to_string(b) +
                                      "} lies in more than two faces");
            }
        }
    }
    for (const auto& [key, cnt] : undirected_count) {
        if (cnt != 2)
            throw NonManifoldEdge("edge {" + std::to_string(key.first) + "," +
                                  std::to_string(key.second) + "} lies in " +
                                  std::to_string(cnt) + " faces");
    }

    const int m = static_cast<int>(undirected_count.size());
    const int fcount = static_cast<int>(raw_faces.size());
    if (n - m + fcount != 2)
        throw EulerViolation("n - m + f = " + std::to_string(n - m + fcount) + ", expected 2");
    if (m != 3 * n - 6)
        throw EulerViolation("edge count " + std::to_string(m) + " != 3n-6 = " +
                             std::to_string(3 * n - 6));

    // Frozen lexicographic edge order with oriented quadruples.
    tri.edges.reserve(m);
    for (const auto& [key, cnt] : undirected_count) {
        Triangulation::Edge e;
        e.i = key.first;
        e.j = key.second;
        e.k = third.at({e.i, e.j});
        e.l = third.at({e.j, e.i});
        tri.edges.push_back(e);  // std::map iterates keys in order
    }

    // Vertex links: around v the faces (v,a,b) chain through succ[a] = b and
    // must close into a single cycle covering every neighbor.
    std::vector<std::map<int, int>> succ(n);
    std::vector<std::map<int, int>> face_of(n);  // neighbor a -> face (v,a,b) index
    for (int fi = 0; fi < fcount; ++fi) {
        const auto& f = raw_faces[fi];
        for (int r = 0; r < 3; ++r) {
            const int v = f[r], a = f[(r + 1) % 3], b = f[(r + 2) % 3];
            succ[v][a] = b;
            face_of[v][a] = fi;
        }
    }
    tri.neighbors.resize(n);
    tri.vertex_faces.resize(n);
    for (int v = 0; v < n; ++v) {
        if (succ[v].empty()) throw EulerViolation("isolated vertex " + std::to_string(v));
        const int start = succ[v].begin()->first;
        int cur = start;
        do {
            tri.neighbors[v].push_back(cur);
            tri.vertex_faces[v].push_back(face_of[v].at(cur));
            auto it = succ[v].find(cur);
            if (it == succ[v].end())
                throw NonManifoldEdge("vertex " + std::to_string(v) + " has a broken link");
            cur = it->second;
            if (tri.neighbors[v].size() > succ[v].size())
                throw NonManifoldEdge("vertex " + std::to_string(v) +
                                      " link does not close into one cycle");
        } while (cur != start);
        if (tri.neighbors[v].size() != succ[v].size())
            throw NonManifoldEdge("vertex " + std::to_string(v) +
                                  " link is not a single cycle");
    }

    std::vector<std::array<int, 2>> und;
    und.reserve(m);
    for (const auto& e : tri.edges) und.push_back({e.i, e.j});
    const int kappa = vertex_connectivity(n, und);
    if (kappa < 3)
        throw NotThreeConnected("vertex connectivity is " + std::to_string(kappa));

    return tri;
}

std::vector<std::array<int, 3>> tetrahedron_faces() {
    return {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}};
}

std::vector<std::array<int, 3>> bipyramid_faces(int k) {
    // equator 0..k-1, north pole k, south pole k+1
    std::vector<std::array<int, 3>> f;
    for (int i = 0; i < k; ++i) {
        const int j = (i + 1) % k;
        f.push_back({i, j, k});
        f.push_back({j, i, k + 1});
    }
    return f;
}

std::vector<std::array<int, 3>> octahedron_faces() { return bipyramid_faces(4); }

}  // namespace cpoly
