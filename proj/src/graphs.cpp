#include "qz5/graphs.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qz5 {

namespace {

long factorial_l(int n) {
    long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// All vertex permutations of size V, as vectors p with p[i] = preimage
// (new label i corresponds to old vertex p[i]).
std::vector<std::vector<int>> all_perms(int V) {
    std::vector<int> p(static_cast<std::size_t>(V));
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::string encode_relabeled(const StableGraph& g, const std::vector<int>& p) {
    const int V = g.num_vertices();
    std::vector<int> inv(static_cast<std::size_t>(V));
    for (int i = 0; i < V; ++i) inv[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] = i;
    std::string s;
    s.reserve(64);
    auto put = [&s](int x) {
        s += std::to_string(x);
        s += '.';
    };
    for (int i = 0; i < V; ++i) put(g.genus[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])]);
    for (int i = 0; i < V; ++i)
        put(g.decoration.empty() ? -1 : g.decoration[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])]);
    for (int i = 0; i < V; ++i) put(g.loops[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])]);
    for (int i = 0; i < V; ++i)
        for (int j = i + 1; j < V; ++j)
            put(g.mult[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])]
                      [static_cast<std::size_t>(p[static_cast<std::size_t>(j)])]);
    for (int l : g.leg_vertex) put(inv[static_cast<std::size_t>(l)]);
    return s;
}

}  // namespace

int StableGraph::num_edges() const {
    int e = 0;
    for (int l : loops) e += l;
    const int V = num_vertices();
    for (int v = 0; v < V; ++v)
        for (int w = v + 1; w < V; ++w) e += mult[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)];
    return e;
}

int StableGraph::valence(int v) const {
    int n = 2 * loops[static_cast<std::size_t>(v)];
    for (int w = 0; w < num_vertices(); ++w)
        if (w != v) n += mult[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)];
    for (int l : leg_vertex)
        if (l == v) ++n;
    return n;
}

int StableGraph::h1() const { return num_edges() - num_vertices() + 1; }

int StableGraph::total_genus() const {
    return h1() + std::accumulate(genus.begin(), genus.end(), 0);
}

bool StableGraph::stable() const {
    for (int v = 0; v < num_vertices(); ++v)
        if (2 * genus[static_cast<std::size_t>(v)] - 2 + valence(v) <= 0) return false;
    return true;
}

bool StableGraph::connected() const {
    const int V = num_vertices();
    std::vector<int> root(static_cast<std::size_t>(V));
    std::iota(root.begin(), root.end(), 0);
    auto find = [&root](int x) {
        while (root[static_cast<std::size_t>(x)] != x) x = root[static_cast<std::size_t>(x)];
        return x;
    };
    for (int v = 0; v < V; ++v)
        for (int w = v + 1; w < V; ++w)
            if (mult[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] > 0)
                root[static_cast<std::size_t>(find(v))] = find(w);
    for (int v = 1; v < V; ++v)
        if (find(v) != find(0)) return false;
    return true;
}

std::string StableGraph::canonical_key() const {
    std::string best;
    for (const auto& p : all_perms(num_vertices())) {
        std::string e = encode_relabeled(*this, p);
        if (best.empty() || e < best) best = e;
    }
    return best;
}

std::vector<std::vector<int>> StableGraph::vertex_automorphisms() const {
    std::vector<std::vector<int>> out;
    std::string identity = encode_relabeled(*this, all_perms(num_vertices()).front());
    for (const auto& p : all_perms(num_vertices()))
        if (encode_relabeled(*this, p) == identity) out.push_back(p);
    return out;
}

long StableGraph::compute_aut_order() const {
    long base = static_cast<long>(vertex_automorphisms().size());
    const int V = num_vertices();
    for (int v = 0; v < V; ++v)
        for (int w = v + 1; w < V; ++w)
            base *= factorial_l(mult[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)]);
    for (int l : loops) base *= factorial_l(l) << l;
    return base;
}

std::string StableGraph::to_string() const {
    std::string s = "V=" + std::to_string(num_vertices()) + " g=(";
    for (std::size_t i = 0; i < genus.size(); ++i)
        s += (i ? "," : "") + std::to_string(genus[i]);
    s += ")";
    if (!decoration.empty()) {
        s += " p=(";
        for (std::size_t i = 0; i < decoration.size(); ++i)
            s += (i ? "," : "") + std::to_string(decoration[i]);
        s += ")";
    }
    s += " loops=(";
    for (std::size_t i = 0; i < loops.size(); ++i) s += (i ? "," : "") + std::to_string(loops[i]);
    s += ") edges=";
    for (int v = 0; v < num_vertices(); ++v)
        for (int w = v + 1; w < num_vertices(); ++w)
            for (int k = 0; k < mult[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)]; ++k)
                s += "(" + std::to_string(v) + "-" + std::to_string(w) + ")";
    s += " legs=(";
    for (std::size_t i = 0; i < leg_vertex.size(); ++i)
        s += (i ? "," : "") + std::to_string(leg_vertex[i]);
    s += ") |Aut|=" + std::to_string(aut_order);
    return s;
}

std::vector<StableGraph> enumerate_stable_graphs(int g, int n) {
    if (2 * g - 2 + n <= 0)
        throw std::domain_error("enumerate_stable_graphs: unstable (g,n)");
    std::vector<StableGraph> out;
    std::set<std::string> seen;

    const int vmax = std::max(1, 2 * g - 2 + n);
    for (int V = 1; V <= vmax; ++V) {
        // Genus assignments with sum <= g.
        std::vector<int> gv(static_cast<std::size_t>(V), 0);
        while (true) {
            int gsum = std::accumulate(gv.begin(), gv.end(), 0);
            if (gsum <= g) {
                int E = g - gsum + V - 1;
                if (E >= 0 && E <= 3 * g - 3 + n + 1) {
                    // Distribute E edges over V loop slots and V(V-1)/2 pair slots.
                    const int pair_slots = V * (V - 1) / 2;
                    const int slots = V + pair_slots;
                    std::vector<int> dist(static_cast<std::size_t>(slots), 0);
                    // Iterate compositions of E into `slots` parts.
                    std::vector<int> comp(static_cast<std::size_t>(slots), 0);
                    comp[0] = E;
                    bool more = slots > 0;
                    while (more) {
                        StableGraph base;
                        base.genus = gv;
                        base.loops.assign(static_cast<std::size_t>(V), 0);
                        base.mult.assign(static_cast<std::size_t>(V),
                                         std::vector<int>(static_cast<std::size_t>(V), 0));
                        for (int v = 0; v < V; ++v) base.loops[static_cast<std::size_t>(v)] = comp[static_cast<std::size_t>(v)];
                        int idx = V;
                        for (int v = 0; v < V; ++v)
                            for (int w = v + 1; w < V; ++w) {
                                base.mult[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] =
                                    base.mult[static_cast<std::size_t>(w)][static_cast<std::size_t>(v)] =
                                        comp[static_cast<std::size_t>(idx)];
                                ++idx;
                            }
                        if (base.connected()) {
                            // Attach labeled legs in every way.
                            std::vector<int> legs(static_cast<std::size_t>(n), 0);
                            bool more_legs = true;
                            while (more_legs) {
                                StableGraph cand = base;
                                cand.leg_vertex = legs;
                                if (cand.stable()) {
                                    std::string key = cand.canonical_key();
                                    if (seen.insert(key).second) {
                                        cand.aut_order = cand.compute_aut_order();
                                        out.push_back(std::move(cand));
                                    }
                                }
                                // next leg assignment
                                more_legs = false;
                                for (int i = 0; i < n; ++i) {
                                    if (legs[static_cast<std::size_t>(i)] + 1 < V) {
                                        ++legs[static_cast<std::size_t>(i)];
                                        for (int j = 0; j < i; ++j) legs[static_cast<std::size_t>(j)] = 0;
                                        more_legs = true;
                                        break;
                                    }
                                }
                            }
                        }
                        // next composition
                        more = false;
                        for (int i = 0; i + 1 < slots; ++i) {
                            if (comp[static_cast<std::size_t>(i)] > 0) {
                                int head = comp[static_cast<std::size_t>(i)];
                                comp[static_cast<std::size_t>(i)] = 0;
                                comp[0] = head - 1;
                                ++comp[static_cast<std::size_t>(i + 1)];
                                more = true;
                                break;
                            }
                        }
                    }
                }
            }
            // next genus vector
            bool carried = false;
            for (int i = 0; i < V; ++i) {
                if (gv[static_cast<std::size_t>(i)] < g) {
                    ++gv[static_cast<std::size_t>(i)];
                    for (int j = 0; j < i; ++j) gv[static_cast<std::size_t>(j)] = 0;
                    carried = true;
                    break;
                }
            }
            if (!carried) break;
        }
    }
    // Deterministic order independent of generation details.
    std::sort(out.begin(), out.end(), [](const StableGraph& a, const StableGraph& b) {
        return a.canonical_key() < b.canonical_key();
    });
    return out;
}

std::vector<StableGraph> enumerate_decorations(const StableGraph& base) {
    const int V = base.num_vertices();
    auto sigmas = base.vertex_automorphisms();
    long half_edge_factor = base.compute_aut_order() / static_cast<long>(sigmas.size());

    std::vector<StableGraph> out;
    std::vector<int> dec(static_cast<std::size_t>(V), 0);
    while (true) {
        // Orbit-minimal representative test and stabilizer count.
        bool minimal = true;
        long stab = 0;
        for (const auto& p : sigmas) {
            std::vector<int> img(static_cast<std::size_t>(V));
            for (int i = 0; i < V; ++i)
                img[static_cast<std::size_t>(i)] = dec[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])];
            if (img < dec) {
                minimal = false;
                break;
            }
            if (img == dec) ++stab;
        }
        if (minimal) {
            StableGraph d = base;
            d.decoration = dec;
            d.aut_order = stab * half_edge_factor;
            out.push_back(std::move(d));
        }
        bool carried = false;
        for (int i = 0; i < V; ++i) {
            if (dec[static_cast<std::size_t>(i)] < 4) {
                ++dec[static_cast<std::size_t>(i)];
                for (int j = 0; j < i; ++j) dec[static_cast<std::size_t>(j)] = 0;
                carried = true;
                break;
            }
        }
        if (!carried) break;
    }
    return out;
}

std::vector<StableGraph> all_decorations_labeled(const StableGraph& base) {
    const int V = base.num_vertices();
    std::vector<StableGraph> out;
    std::vector<int> dec(static_cast<std::size_t>(V), 0);
    while (true) {
        StableGraph d = base;
        d.decoration = dec;
        d.aut_order = base.aut_order;
        out.push_back(std::move(d));
        bool carried = false;
        for (int i = 0; i < V; ++i) {
            if (dec[static_cast<std::size_t>(i)] < 4) {
                ++dec[static_cast<std::size_t>(i)];
                for (int j = 0; j < i; ++j) dec[static_cast<std::size_t>(j)] = 0;
                carried = true;
                break;
            }
        }
        if (!carried) break;
    }
    return out;
}

}  // namespace qz5
