#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "stabspread/code.hpp"

namespace stabspread {

// [[7,1,3]] self-dual CSS code: X and Z checks on supports
// {1,2,3,4}, {2,3,5,6}, {3,4,5,7}; logicals X1..X7 / Z1..Z7.
StabiliserCode steane();

// [[15,1,3]] punctured Reed-Muller code (transversal T on the dual pair with
// the Steane code); X checks on four weight-8 supports, Z checks on ten
// weight-4 supports; logicals X1..X7 / Z1..Z7.
StabiliserCode reed_muller15();

// [[1,1,1]]: no stabilisers, X̄ = X1, Z̄ = Z1.
StabiliserCode trivial_code();

// [[n,1,1]] classical bit-flip repetition code: Z_i Z_{i+1} checks,
// X̄ = X on all qubits, Z̄ = Z1 (detects/corrects X errors only).
StabiliserCode repetition_bitflip(std::size_t n);

// [[2l²,2,l]] toric code on an l×l torus.  Qubit h(r,c) = r·l+c lies on the
// horizontal edge leaving vertex (r,c); v(r,c) = l² + r·l + c on the vertical
// edge.  X checks on vertices, Z checks on plaquettes.
StabiliserCode toric(std::size_t l);

// Open-boundary lattice of qubits-on-edges with X checks on interior vertices
// and Z checks on faces.  The first axis is the rough one: x-edges stick out
// of the lattice at both x-ends (virtual end vertices), so Z̄ is an x-directed
// string of weight lx and X̄ an x-normal sheet of weight ly·lz.
struct SurfaceLattice {
    std::size_t lx = 0, ly = 0, lz = 0;

    // Edge = qubit.  axis: 0 = x-edge, 1 = y-edge, 2 = z-edge.  `at` are the
    // lattice coordinates used below.
    struct Edge {
        int axis;
        std::array<int, 3> at;
    };
    std::vector<Edge> edges;

    std::size_t n() const { return edges.size(); }

    // Index lookups; nullopt when out of range.
    // x-edge (p,y,z), p∈[0,lx): spans vertices (p-1,y,z)..(p,y,z).
    // y-edge (x,q,z), q∈[0,ly-1): spans (x,q,z)..(x,q+1,z).
    // z-edge (x,y,r), r∈[0,lz-1): spans (x,y,r)..(x,y,r+1).
    // Interior vertices have x∈[0,lx-1), y∈[0,ly), z∈[0,lz).
    std::optional<std::size_t> x_edge(int p, int y, int z) const;
    std::optional<std::size_t> y_edge(int x, int q, int z) const;
    std::optional<std::size_t> z_edge(int x, int y, int r) const;

    std::array<double, 3> midpoint(std::size_t q) const;
    // Pairs of qubits whose edge midpoints are at Euclidean distance ≤ 1.
    std::vector<std::pair<std::size_t, std::size_t>> nearest_neighbour_pairs() const;

    StabiliserCode code() const;
};

SurfaceLattice make_surface_lattice(std::size_t lx, std::size_t ly, std::size_t lz);

// Distance-l planar surface code: the lz = 1 layer of the lattice above.
StabiliserCode surface2d(std::size_t l);

// Three-dimensional surface code with one rough axis (the first argument).
StabiliserCode surface3d(std::size_t lx, std::size_t ly, std::size_t lz);

// Concatenation: every qubit of `outer` becomes a block of `inner` (inner
// must have k = 1).  Outer stabilisers and logicals are lifted letter by
// letter through the inner logical representatives.
StabiliserCode concatenate(const StabiliserCode& outer, const StabiliserCode& inner);

// Greedily selects a maximal independent subset of the given commuting
// generators (used to turn overcomplete check lists into a basis).
std::vector<PauliOperator> independent_subset(const std::vector<PauliOperator>& gens,
                                              std::size_t n);

} // namespace stabspread
