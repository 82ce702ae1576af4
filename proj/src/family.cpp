#include "stabspread/family.hpp"

#include <stdexcept>

#include "stabspread/codes.hpp"
#include "stabspread/error.hpp"

namespace stabspread {

CodeFamily::CodeFamily(std::string name, std::vector<std::size_t> index_domain, Builder builder,
                       HintBuilder hint_builder, std::map<std::string, std::string> metadata)
    : name_(std::move(name)),
      domain_(std::move(index_domain)),
      builder_(std::move(builder)),
      hint_builder_(std::move(hint_builder)),
      metadata_(std::move(metadata)),
      cache_(std::make_shared<Cache>()) {
    if (!builder_) throw PreconditionError("code family '" + name_ + "' needs a builder");
}

bool CodeFamily::in_domain(std::size_t l) const {
    for (auto d : domain_)
        if (d == l) return true;
    return false;
}

const StabiliserCode& CodeFamily::instantiate(std::size_t l) const {
    if (!in_domain(l))
        throw PreconditionError("size " + std::to_string(l) + " is outside the index domain of family '" +
                                name_ + "'");
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->built.find(l);
    if (it == cache_->built.end()) it = cache_->built.emplace(l, builder_(l)).first;
    return it->second;
}

DistanceHints CodeFamily::hints(std::size_t l) const {
    if (!in_domain(l))
        throw PreconditionError("size " + std::to_string(l) + " is outside the index domain of family '" +
                                name_ + "'");
    if (!hint_builder_) return {};
    return hint_builder_(l);
}

namespace {

std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> out;
    for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
    return out;
}

// ---- toric -----------------------------------------------------------------

// Qubit layout of codes::toric — horizontal edge (r,c) -> r*l + c, vertical
// edge (r,c) -> l*l + r*l + c, all indices mod l.
DistanceHints toric_hints(std::size_t l) {
    DistanceHints h;
    auto hq = [l](std::size_t r, std::size_t c) { return r * l + c; };
    auto vq = [l](std::size_t r, std::size_t c) { return l * l + r * l + c; };

    // Four families of l pairwise-disjoint homologous loops.  Adjacent members
    // differ by a product of vertex (for X loops) or plaquette (for Z loops)
    // stabilisers, so each family stays inside one logical class.
    std::vector<PauliOperator> x1, z1, x2, z2;
    for (std::size_t i = 0; i < l; ++i) {
        PauliOperator a(2 * l * l), b(2 * l * l), c(2 * l * l), d(2 * l * l);
        for (std::size_t j = 0; j < l; ++j) {
            a.set_letter(hq(j, i), 'X'); // vertical column of horizontal edges
            b.set_letter(hq(i, j), 'Z'); // horizontal row of horizontal edges
            c.set_letter(vq(i, j), 'X'); // row of vertical edges
            d.set_letter(vq(j, i), 'Z'); // column of vertical edges
        }
        x1.push_back(a);
        z1.push_back(b);
        x2.push_back(c);
        z2.push_back(d);
    }
    h.partner_families = {x1, z1, x2, z2};

    // Upper-bound witnesses: all non-trivial products of the canonical logicals.
    auto code = toric(l);
    std::vector<PauliOperator> gens = {code.logical_x[0], code.logical_z[0], code.logical_x[1],
                                       code.logical_z[1]};
    for (unsigned mask = 1; mask < 16; ++mask) {
        PauliOperator w = PauliOperator::identity(2 * l * l);
        for (unsigned b = 0; b < 4; ++b)
            if (mask & (1u << b)) w = w * gens[b];
        h.witnesses.push_back(w);
    }
    return h;
}

// ---- surface lattices -------------------------------------------------------

// Z strings along x at every (y,z), and X sheets at every x-layer p.  Strings
// at different (y,z) are disjoint, as are sheets at different p; adjacent
// members differ by face-column / vertex-layer stabiliser products.
DistanceHints surface_hints(std::size_t lx, std::size_t ly, std::size_t lz) {
    DistanceHints h;
    auto lat = make_surface_lattice(lx, ly, lz);
    const std::size_t n = lat.n();

    std::vector<PauliOperator> strings;
    for (std::size_t y = 0; y < ly; ++y)
        for (std::size_t z = 0; z < lz; ++z) {
            PauliOperator s(n);
            for (std::size_t p = 0; p < lx; ++p)
                s.set_letter(*lat.x_edge(static_cast<int>(p), static_cast<int>(y), static_cast<int>(z)),
                             'Z');
            strings.push_back(s);
        }

    std::vector<PauliOperator> sheets;
    for (std::size_t p = 0; p < lx; ++p) {
        PauliOperator s(n);
        for (std::size_t y = 0; y < ly; ++y)
            for (std::size_t z = 0; z < lz; ++z)
                s.set_letter(*lat.x_edge(static_cast<int>(p), static_cast<int>(y), static_cast<int>(z)),
                             'X');
        sheets.push_back(s);
    }

    h.witnesses = {strings[0], sheets[0], strings[0] * sheets[0]};
    h.partner_families = {std::move(strings), std::move(sheets)};
    return h;
}

// ---- concatenated families ---------------------------------------------------

StabiliserCode fold_chain(const std::vector<StabiliserCode>& chain) {
    StabiliserCode c = chain.back();
    for (std::size_t i = chain.size() - 1; i-- > 0;) c = concatenate(chain[i], c);
    return c;
}

std::vector<StabiliserCode> concat_chain(const std::string& kind, std::size_t l) {
    std::vector<StabiliserCode> chain;
    for (std::size_t level = 1; level <= l; ++level) {
        if (kind == "steane_concat")
            chain.push_back(steane());
        else if (kind == "rm_concat")
            chain.push_back(reed_muller15());
        else // alternating: Reed-Muller at odd levels, level 1 outermost
            chain.push_back(level % 2 == 1 ? reed_muller15() : steane());
    }
    return chain;
}

CodeFamily make_concat_family(const std::string& kind, std::vector<std::size_t> domain) {
    auto builder = [kind](std::size_t l) {
        auto code = fold_chain(concat_chain(kind, l));
        code.label = kind + "(" + std::to_string(l) + ")";
        return code;
    };
    auto hints = [kind](std::size_t l) {
        DistanceHints h;
        h.concat_chain = concat_chain(kind, l);
        return h;
    };
    return CodeFamily(kind, std::move(domain), builder, hints,
                      {{"kind", kind}, {"construction", "concatenation"}});
}

} // namespace

CodeFamily make_family(const std::string& kind) {
    if (kind == "toric")
        return CodeFamily(
            kind, range(2, 6), [](std::size_t l) { return toric(l); },
            [](std::size_t l) { return toric_hints(l); }, {{"kind", kind}, {"dimension", "2"}});
    if (kind == "surface2d")
        return CodeFamily(
            kind, range(2, 6), [](std::size_t l) { return surface2d(l); },
            [](std::size_t l) { return surface_hints(l, l, 1); },
            {{"kind", kind}, {"dimension", "2"}});
    if (kind == "surface3d")
        return CodeFamily(
            kind, range(2, 4), [](std::size_t l) { return surface3d(l, l, l); },
            [](std::size_t l) { return surface_hints(l, l, l); },
            {{"kind", kind}, {"dimension", "3"}});
    if (kind == "steane_concat") return make_concat_family(kind, range(1, 3));
    if (kind == "rm_concat") return make_concat_family(kind, range(1, 2));
    if (kind == "alternating_concat") return make_concat_family(kind, range(1, 3));
    throw PreconditionError("unknown code family kind '" + kind + "'");
}

std::vector<std::string> family_kinds() {
    return {"toric", "surface2d", "surface3d", "steane_concat", "rm_concat", "alternating_concat"};
}

} // namespace stabspread
