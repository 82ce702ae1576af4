#pragma once

#include <string>
#include <vector>

#include "stabspread/pauli.hpp"

namespace stabspread::clifford {

using pauli::PauliOperator;

// A Clifford unitary U on n qubits represented by its conjugation action:
// the images U X_i U^dagger and U Z_i U^dagger as phase-exact Pauli
// operators (each Hermitian, so displayed sign +/-). This determines U up to
// global phase and composes exactly, including signs.
class CliffordMap {
public:
    CliffordMap() = default;

    static CliffordMap identity(std::size_t n);

    // Elementary generators, as maps on an n-qubit register.
    static CliffordMap hadamard(std::size_t n, std::size_t q);
    static CliffordMap phase_s(std::size_t n, std::size_t q);
    static CliffordMap phase_sdg(std::size_t n, std::size_t q);
    static CliffordMap pauli_x(std::size_t n, std::size_t q);
    static CliffordMap pauli_y(std::size_t n, std::size_t q);
    static CliffordMap pauli_z(std::size_t n, std::size_t q);
    static CliffordMap cnot(std::size_t n, std::size_t c, std::size_t t);
    static CliffordMap cz(std::size_t n, std::size_t a, std::size_t b);
    static CliffordMap swap(std::size_t n, std::size_t a, std::size_t b);

    // Builds a map from explicit images; validates the symplectic and
    // hermiticity conditions.
    static CliffordMap from_images(std::vector<PauliOperator> image_x,
                                   std::vector<PauliOperator> image_z);

    std::size_t num_qubits() const { return n_; }
    const PauliOperator& image_x(std::size_t i) const { return img_x_[i]; }
    const PauliOperator& image_z(std::size_t i) const { return img_z_[i]; }

    // U P U^dagger with exact phase tracking.
    PauliOperator conjugate(const PauliOperator& p) const;

    // (*this) after `first`: returns the map of "apply first, then this".
    CliffordMap compose_after(const CliffordMap& first) const;

    CliffordMap inverse() const;
    CliffordMap tensor(const CliffordMap& other) const;

    bool is_valid() const;
    bool operator==(const CliffordMap& o) const;
    bool operator!=(const CliffordMap& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    std::size_t n_ = 0;
    std::vector<PauliOperator> img_x_, img_z_;
};

} // namespace stabspread::clifford
