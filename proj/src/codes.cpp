#include "stabspread/codes.hpp"

#include <cmath>
#include <string>

#include "stabspread/error.hpp"

namespace stabspread {

namespace {

PauliOperator on_support(std::size_t n, char letter, const std::vector<std::size_t>& support_1based) {
    PauliOperator p(n);
    for (std::size_t q : support_1based) {
        if (q == 0 || q > n) throw PreconditionError("support index out of range");
        p.set_letter(q - 1, letter);
    }
    return p;
}

PauliOperator all_qubits(std::size_t n, char letter) {
    PauliOperator p(n);
    for (std::size_t q = 0; q < n; ++q) p.set_letter(q, letter);
    return p;
}

} // namespace

std::vector<PauliOperator> independent_subset(const std::vector<PauliOperator>& gens,
                                              std::size_t n) {
    gf2::RowBasis basis(2 * n);
    std::vector<PauliOperator> out;
    for (const auto& g : gens)
        if (basis.add(symplectic_row(g))) out.push_back(g);
    return out;
}

StabiliserCode steane() {
    const std::vector<std::vector<std::size_t>> checks = {
        {1, 2, 3, 4}, {2, 3, 5, 6}, {3, 4, 5, 7}};
    StabiliserCode c;
    c.n = 7;
    c.k = 1;
    c.label = "steane";
    for (const auto& s : checks) c.stabilisers.push_back(on_support(7, 'X', s));
    for (const auto& s : checks) c.stabilisers.push_back(on_support(7, 'Z', s));
    c.logical_x = {all_qubits(7, 'X')};
    c.logical_z = {all_qubits(7, 'Z')};
    c.validate();
    return c;
}

StabiliserCode reed_muller15() {
    const std::vector<std::vector<std::size_t>> x_checks = {
        {1, 2, 3, 4, 8, 9, 10, 11},
        {2, 3, 5, 6, 9, 10, 12, 13},
        {3, 4, 5, 7, 10, 11, 12, 14},
        {8, 9, 10, 11, 12, 13, 14, 15}};
    // Qubit q carries the nonzero point of F_2^4 whose four coordinates are
    // membership in the four X checks; every Z check below is the support of
    // a degree-2 polynomial in those coordinates, e.g. {10,11,12,14} is the
    // x3·x4 product (both of the last two hyperplane conditions hold).
    const std::vector<std::vector<std::size_t>> z_checks = {
        {1, 2, 3, 4}, {2, 3, 5, 6}, {3, 4, 5, 7},
        {8, 9, 10, 11}, {9, 10, 12, 13}, {10, 11, 12, 14}, {12, 13, 14, 15},
        {1, 4, 8, 11}, {2, 5, 9, 12}, {6, 7, 13, 14}};
    StabiliserCode c;
    c.n = 15;
    c.k = 1;
    c.label = "reed_muller15";
    for (const auto& s : x_checks) c.stabilisers.push_back(on_support(15, 'X', s));
    for (const auto& s : z_checks) c.stabilisers.push_back(on_support(15, 'Z', s));
    c.logical_x = {on_support(15, 'X', {1, 2, 3, 4, 5, 6, 7})};
    c.logical_z = {on_support(15, 'Z', {1, 2, 3, 4, 5, 6, 7})};
    c.validate();
    return c;
}

StabiliserCode trivial_code() {
    StabiliserCode c;
    c.n = 1;
    c.k = 1;
    c.label = "trivial";
    c.logical_x = {PauliOperator::single(1, 0, 'X')};
    c.logical_z = {PauliOperator::single(1, 0, 'Z')};
    c.validate();
    return c;
}

StabiliserCode repetition_bitflip(std::size_t n) {
    if (n == 0) throw PreconditionError("repetition_bitflip: n must be positive");
    StabiliserCode c;
    c.n = n;
    c.k = 1;
    c.label = "repetition" + std::to_string(n);
    for (std::size_t i = 0; i + 1 < n; ++i)
        c.stabilisers.push_back(on_support(n, 'Z', {i + 1, i + 2}));
    c.logical_x = {all_qubits(n, 'X')};
    c.logical_z = {PauliOperator::single(n, 0, 'Z')};
    c.validate();
    return c;
}

StabiliserCode toric(std::size_t l) {
    if (l < 2) throw PreconditionError("toric: l must be at least 2");
    const std::size_t n = 2 * l * l;
    auto h = [&](std::size_t r, std::size_t c) { return (r % l) * l + (c % l); };
    auto v = [&](std::size_t r, std::size_t c) { return l * l + (r % l) * l + (c % l); };

    std::vector<PauliOperator> vertex_checks, plaquette_checks;
    for (std::size_t r = 0; r < l; ++r) {
        for (std::size_t c = 0; c < l; ++c) {
            PauliOperator vx(n);
            vx.set_letter(h(r, c), 'X');
            vx.set_letter(h(r, c + l - 1), 'X');
            vx.set_letter(v(r, c), 'X');
            vx.set_letter(v(r + l - 1, c), 'X');
            vertex_checks.push_back(vx);

            PauliOperator pz(n);
            pz.set_letter(h(r, c), 'Z');
            pz.set_letter(h(r + 1, c), 'Z');
            pz.set_letter(v(r, c), 'Z');
            pz.set_letter(v(r, c + 1), 'Z');
            plaquette_checks.push_back(pz);
        }
    }

    StabiliserCode code;
    code.n = n;
    code.k = 2;
    code.label = "toric" + std::to_string(l);
    std::vector<PauliOperator> all = vertex_checks;
    all.insert(all.end(), plaquette_checks.begin(), plaquette_checks.end());
    code.stabilisers = independent_subset(all, n);

    PauliOperator z1(n), x1(n), z2(n), x2(n);
    for (std::size_t i = 0; i < l; ++i) {
        z1.set_letter(h(0, i), 'Z'); // horizontal primal loop, row 0
        x1.set_letter(h(i, 0), 'X'); // dual loop crossing column-0 horizontal edges
        z2.set_letter(v(i, 0), 'Z'); // vertical primal loop, column 0
        x2.set_letter(v(0, i), 'X'); // dual loop crossing row-0 vertical edges
    }
    code.logical_x = {x1, x2};
    code.logical_z = {z1, z2};
    code.validate();
    return code;
}

std::optional<std::size_t> SurfaceLattice::x_edge(int p, int y, int z) const {
    if (p < 0 || p >= static_cast<int>(lx) || y < 0 || y >= static_cast<int>(ly) || z < 0 ||
        z >= static_cast<int>(lz))
        return std::nullopt;
    return (static_cast<std::size_t>(p) * ly + static_cast<std::size_t>(y)) * lz +
           static_cast<std::size_t>(z);
}

std::optional<std::size_t> SurfaceLattice::y_edge(int x, int q, int z) const {
    if (x < 0 || x >= static_cast<int>(lx) - 1 || q < 0 || q >= static_cast<int>(ly) - 1 ||
        z < 0 || z >= static_cast<int>(lz))
        return std::nullopt;
    std::size_t base = lx * ly * lz;
    return base + (static_cast<std::size_t>(x) * (ly - 1) + static_cast<std::size_t>(q)) * lz +
           static_cast<std::size_t>(z);
}

std::optional<std::size_t> SurfaceLattice::z_edge(int x, int y, int r) const {
    if (x < 0 || x >= static_cast<int>(lx) - 1 || y < 0 || y >= static_cast<int>(ly) || r < 0 ||
        r >= static_cast<int>(lz) - 1)
        return std::nullopt;
    std::size_t base = lx * ly * lz + (lx - 1) * (ly - 1) * lz;
    return base + (static_cast<std::size_t>(x) * ly + static_cast<std::size_t>(y)) * (lz - 1) +
           static_cast<std::size_t>(r);
}

std::array<double, 3> SurfaceLattice::midpoint(std::size_t q) const {
    const Edge& e = edges.at(q);
    std::array<double, 3> m = {static_cast<double>(e.at[0]), static_cast<double>(e.at[1]),
                               static_cast<double>(e.at[2])};
    m[static_cast<std::size_t>(e.axis)] += e.axis == 0 ? -0.5 : 0.5;
    return m;
}

std::vector<std::pair<std::size_t, std::size_t>> SurfaceLattice::nearest_neighbour_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < n(); ++a) {
        auto ma = midpoint(a);
        for (std::size_t b = a + 1; b < n(); ++b) {
            auto mb = midpoint(b);
            double d2 = 0;
            for (int i = 0; i < 3; ++i) d2 += (ma[i] - mb[i]) * (ma[i] - mb[i]);
            if (d2 <= 1.0 + 1e-9) out.emplace_back(a, b);
        }
    }
    return out;
}

SurfaceLattice make_surface_lattice(std::size_t lx, std::size_t ly, std::size_t lz) {
    if (lx < 1 || ly < 1 || lz < 1)
        throw PreconditionError("surface lattice: all sizes must be at least 1");
    SurfaceLattice lat;
    lat.lx = lx;
    lat.ly = ly;
    lat.lz = lz;
    for (int p = 0; p < static_cast<int>(lx); ++p)
        for (int y = 0; y < static_cast<int>(ly); ++y)
            for (int z = 0; z < static_cast<int>(lz); ++z)
                lat.edges.push_back({0, {p, y, z}});
    for (int x = 0; x + 1 < static_cast<int>(lx); ++x)
        for (int q = 0; q + 1 < static_cast<int>(ly); ++q)
            for (int z = 0; z < static_cast<int>(lz); ++z)
                lat.edges.push_back({1, {x, q, z}});
    for (int x = 0; x + 1 < static_cast<int>(lx); ++x)
        for (int y = 0; y < static_cast<int>(ly); ++y)
            for (int r = 0; r + 1 < static_cast<int>(lz); ++r)
                lat.edges.push_back({2, {x, y, r}});
    return lat;
}

StabiliserCode SurfaceLattice::code() const {
    const std::size_t nq = n();
    std::vector<PauliOperator> checks;

    // X checks on interior vertices (x,y,z).
    for (int x = 0; x + 1 < static_cast<int>(lx); ++x) {
        for (int y = 0; y < static_cast<int>(ly); ++y) {
            for (int z = 0; z < static_cast<int>(lz); ++z) {
                PauliOperator s(nq);
                auto touch = [&](std::optional<std::size_t> q) {
                    if (q) s.set_letter(*q, 'X');
                };
                touch(x_edge(x, y, z));
                touch(x_edge(x + 1, y, z));
                touch(y_edge(x, y - 1, z));
                touch(y_edge(x, y, z));
                touch(z_edge(x, y, z - 1));
                touch(z_edge(x, y, z));
                checks.push_back(s);
            }
        }
    }

    auto add_face = [&](std::initializer_list<std::optional<std::size_t>> qs) {
        PauliOperator s(nq);
        for (const auto& q : qs)
            if (q) s.set_letter(*q, 'Z');
        if (s.weight() > 0) checks.push_back(s);
    };
    // xy faces (p,q,z): two x-edges at y = q,q+1, plus side y-edges.
    for (int p = 0; p < static_cast<int>(lx); ++p)
        for (int q = 0; q + 1 < static_cast<int>(ly); ++q)
            for (int z = 0; z < static_cast<int>(lz); ++z)
                add_face({x_edge(p, q, z), x_edge(p, q + 1, z), y_edge(p - 1, q, z),
                          y_edge(p, q, z)});
    // xz faces (p,y,r): two x-edges at z = r,r+1, plus side z-edges.
    for (int p = 0; p < static_cast<int>(lx); ++p)
        for (int y = 0; y < static_cast<int>(ly); ++y)
            for (int r = 0; r + 1 < static_cast<int>(lz); ++r)
                add_face({x_edge(p, y, r), x_edge(p, y, r + 1), z_edge(p - 1, y, r),
                          z_edge(p, y, r)});
    // yz faces (x,q,r): two y-edges at z = r,r+1 and two z-edges at y = q,q+1.
    for (int x = 0; x + 1 < static_cast<int>(lx); ++x)
        for (int q = 0; q + 1 < static_cast<int>(ly); ++q)
            for (int r = 0; r + 1 < static_cast<int>(lz); ++r)
                add_face({y_edge(x, q, r), y_edge(x, q, r + 1), z_edge(x, q, r),
                          z_edge(x, q + 1, r)});

    StabiliserCode code;
    code.n = nq;
    code.label = "surface_lattice(" + std::to_string(lx) + "," + std::to_string(ly) + "," +
                 std::to_string(lz) + ")";
    code.stabilisers = independent_subset(checks, nq);
    if (code.stabilisers.size() + 1 != nq)
        throw InvariantError("surface lattice: stabiliser rank " +
                             std::to_string(code.stabilisers.size()) + " does not give k = 1 on " +
                             std::to_string(nq) + " qubits");
    code.k = 1;

    PauliOperator zbar(nq), xbar(nq);
    for (int p = 0; p < static_cast<int>(lx); ++p) zbar.set_letter(*x_edge(p, 0, 0), 'Z');
    for (int y = 0; y < static_cast<int>(ly); ++y)
        for (int z = 0; z < static_cast<int>(lz); ++z) xbar.set_letter(*x_edge(0, y, z), 'X');
    code.logical_x = {xbar};
    code.logical_z = {zbar};
    code.validate();
    return code;
}

StabiliserCode surface2d(std::size_t l) {
    if (l < 2) throw PreconditionError("surface2d: l must be at least 2");
    auto c = make_surface_lattice(l, l, 1).code();
    c.label = "surface2d(" + std::to_string(l) + ")";
    return c;
}

StabiliserCode surface3d(std::size_t lx, std::size_t ly, std::size_t lz) {
    std::size_t big = (lx >= 2) + (ly >= 2) + (lz >= 2);
    if (lx < 1 || ly < 1 || lz < 1 || big < 2)
        throw PreconditionError("surface3d: sizes must be >= 1 with at least two >= 2");
    auto c = make_surface_lattice(lx, ly, lz).code();
    c.label = "surface3d(" + std::to_string(lx) + "," + std::to_string(ly) + "," +
              std::to_string(lz) + ")";
    return c;
}

StabiliserCode concatenate(const StabiliserCode& outer, const StabiliserCode& inner) {
    if (inner.k != 1)
        throw PreconditionError("concatenate: inner code must have exactly one logical qubit");
    const std::size_t n = outer.n * inner.n;

    const PauliOperator lx = inner.logical_x[0];
    const PauliOperator lz = inner.logical_z[0];

    // Homomorphic lift: i^phase · ∏_b X̄_b^{x_b} · ∏_b Z̄_b^{z_b}, mirroring the
    // canonical form of the outer operator with blocks substituted for qubits.
    auto lift = [&](const PauliOperator& op) {
        PauliOperator out = PauliOperator::identity(n);
        for (std::size_t b = 0; b < outer.n; ++b)
            if (op.x_bits().get(b)) out = out * lx.embed(n, b * inner.n);
        for (std::size_t b = 0; b < outer.n; ++b)
            if (op.z_bits().get(b)) out = out * lz.embed(n, b * inner.n);
        out.multiply_phase(op.phase());
        return out;
    };

    StabiliserCode c;
    c.n = n;
    c.k = outer.k;
    c.label = outer.label + "@" + inner.label;
    for (std::size_t b = 0; b < outer.n; ++b)
        for (const auto& s : inner.stabilisers) c.stabilisers.push_back(s.embed(n, b * inner.n));
    for (const auto& s : outer.stabilisers) c.stabilisers.push_back(lift(s));
    for (const auto& l : outer.logical_x) c.logical_x.push_back(lift(l));
    for (const auto& l : outer.logical_z) c.logical_z.push_back(lift(l));
    c.validate();
    return c;
}

} // namespace stabspread
