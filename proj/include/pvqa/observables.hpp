#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pvqa/linalg.hpp"
#include "pvqa/state.hpp"

namespace pvqa {

enum class Pauli : char { I = 'I', X = 'X', Y = 'Y', Z = 'Z' };

/// Four-qubit Pauli string. Qubits 1-2 live on the idler ququart, 3-4 on the
/// signal ququart; qubit 1 (3) is the most significant bit of its ququart.
struct PauliString {
    std::array<Pauli, 4> ops{Pauli::I, Pauli::I, Pauli::I, Pauli::I};

    static PauliString parse(std::string_view s);
    std::string str() const;
    bool is_identity() const;
    bool diagonal() const;  // only I/Z factors
    bool operator==(const PauliString&) const = default;
};

Mat2 pauli_matrix(Pauli p);

/// Ququart mode index (1-based) of qubit pair (b1, b2): m = 1 + 2 b1 + b2.
int qubit_to_ququart(int b1, int b2);

/// Bits (b1, b2) of ququart mode m (1-based).
std::array<int, 2> ququart_bits(int m);

/// 4x4 action of a string's idler half (qubits 1, 2) or signal half (3, 4)
/// on its ququart.
Mat4 idler_block(const PauliString& s);
Mat4 signal_block(const PauliString& s);

/// Dense 16x16 Kronecker representation, qubit 1 most significant.
Mat16 dense16(const PauliString& s);

/// Eigenvalue of a diagonal (I/Z only) string on the basis state with the
/// given qubit bits. Throws for non-diagonal strings.
int diagonal_eigenvalue(const PauliString& s, const std::array<int, 4>& bits);

/// Weighted sum of Pauli strings; duplicate strings are merged on insert.
struct WeightedObservable {
    struct Term {
        double coeff = 0.0;
        PauliString ops;
    };
    std::vector<Term> terms;

    void add(double coeff, const PauliString& s);
    void add(double coeff, std::string_view s) { add(coeff, PauliString::parse(s)); }
};

/// One simultaneously measurable slice of an observable: the member indices,
/// a per-photon eigenbasis (kets), and the eigenvalue product tensor
/// pi[k](m1, m2) of every member over the 16 common eigenstates.
struct CommutingGroup {
    std::vector<int> members;
    std::array<Vec4, 4> idler_basis;
    std::array<Vec4, 4> signal_basis;
    std::vector<Eigen::Matrix4d> pi;  // aligned with members
    bool computational = false;
};

/// Readout rotation whose detected row realizes the XY-sector coherences:
///   (1/sqrt2) [ sqrt2 0 0 0 ; 0 1 i 0 ; 0 1 -i 0 ; 0 0 0 sqrt2 ].
Mat4 xy_readout_rotation();

/// Rows of the rotation matrix that measures in the given ket basis
/// (row m = conj(basis[m])).
Mat4 rotation_from_basis(const std::array<Vec4, 4>& basis);

/// Greedy partition into groups whose per-photon factors commute pairwise,
/// so each group admits one product measurement setting.
std::vector<std::vector<int>> commuting_partition(const WeightedObservable& obs);

/// Constructs the common per-photon eigenbasis of a group and the pi tensor
/// of every member by direct matrix action. Throws numeric_error if the
/// members are not simultaneously diagonalized by the constructed basis.
CommutingGroup build_setting(const WeightedObservable& obs, const std::vector<int>& members);

std::vector<CommutingGroup> group_commuting(const WeightedObservable& obs);

/// Measurement setting of a group: the 4x4 grid of basis projector pairs.
MeasurementSetting group_setting(const CommutingGroup& g, const std::string& id);

// --- Bundled molecular data -------------------------------------------------

/// Hydrogen molecule in the minimal basis: 15 weighted strings per bond
/// length. R must be one of the bundled grid points (no interpolation).
WeightedObservable load_h2_table(double r_angstrom);

const std::vector<double>& h2_table_radii();
const std::array<const char*, 15>& h2_operator_strings();
bool h2_grid_contains(double r_angstrom);

/// Coefficients of one bundled row, in the bundled operator order.
std::array<double, 15> h2_table_coefficients(double r_angstrom);

// --- Factoring Hamiltonian ----------------------------------------------------

/// Cost operator (N - p q)^2 with p = 1 + 4 x1 + 2 x2, q = 1 + 4 y1 + 2 y2,
/// expanded over binary variables with x^2 = x and mapped through
/// x -> (1 - Z)/2. Exact integer coefficients; only I/Z strings.
WeightedObservable build_vqf_hamiltonian(int n, int mx = 2, int my = 2);

/// All 16 integer coefficients in fixed operator order (including zeros).
std::array<std::int64_t, 16> vqf_coefficients(int n);

const std::array<const char*, 16>& vqf_operator_strings();

/// (N - p q)^2 for one bit assignment, exact.
std::int64_t vqf_eigenvalue(int n, int x1, int x2, int y1, int y2);

}  // namespace pvqa
