#pragma once

// Stable graphs of the moduli of curves with (here) decorations in
// {0..4} per vertex, enumerated one representative per isomorphism
// class, with exact automorphism counts at the half-edge level.
//
// An automorphism permutes vertices preserving genus (and decoration,
// when present) and leg attachment, maps edges to edges, may permute
// parallel edges, and may swap the two halves of a self-loop; legs are
// fixed pointwise.  So
//
//   |Aut| = #{valid vertex permutations} * prod_{v<w} mu_vw! * prod_v lambda_v! 2^lambda_v.
//
// Graphs here are tiny (<= 4 vertices through genus 3), so enumeration
// and canonicalization go through explicit permutation search.

#include <string>
#include <vector>

namespace qz5 {

struct StableGraph {
    std::vector<int> genus;                 // per vertex
    std::vector<int> loops;                 // self-loop count per vertex
    std::vector<std::vector<int>> mult;     // symmetric multiplicity matrix, mult[v][v] unused
    std::vector<int> leg_vertex;            // leg i (label i+1) -> vertex
    std::vector<int> decoration;            // empty when undecorated, else one of 0..4 per vertex

    long aut_order = 0;                     // filled by the enumerator

    int num_vertices() const { return static_cast<int>(genus.size()); }
    int num_edges() const;                  // loops count once
    int valence(int v) const;               // legs + 2*loops + sum of mult
    int h1() const;                         // E - V + 1
    int total_genus() const;
    bool stable() const;                    // per-vertex 2g-2+n > 0
    bool connected() const;

    // Lexicographically minimal encoding over all vertex relabelings;
    // isomorphism-class identifier (legs kept labeled).
    std::string canonical_key() const;

    // Vertex permutations preserving genus, decoration, legs and adjacency.
    std::vector<std::vector<int>> vertex_automorphisms() const;
    // |Aut| at the half-edge level (see header comment).
    long compute_aut_order() const;

    std::string to_string() const;
};

// All isomorphism classes of stable graphs of genus g with n labeled
// legs, each with |Aut| filled; deterministic order.  Throws on
// unstable (g,n).
std::vector<StableGraph> enumerate_stable_graphs(int g, int n);

// All decoration orbits of a stable graph: one representative per orbit
// of {0..4}^V under Aut, each with the decorated |Aut|.
std::vector<StableGraph> enumerate_decorations(const StableGraph& base);

// Every decoration map (5^V of them) with the *undecorated* |Aut| kept;
// summing f over this list divided by |Aut(base)| equals summing f over
// decoration orbits divided by the decorated |Aut| for any invariant f.
// Used as a cross-check and by callers that prefer the plain sum.
std::vector<StableGraph> all_decorations_labeled(const StableGraph& base);

}  // namespace qz5
