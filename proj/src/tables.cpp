#include "pvqa/tables.hpp"

#include <cmath>
#include <stdexcept>

namespace pvqa {
namespace tables {

namespace {
constexpr double kP2 = kPi / 2.0;
constexpr double kP4 = kPi / 4.0;
const double kAt2 = std::atan(std::sqrt(2.0));
const double kAt12 = std::atan(1.0 / std::sqrt(2.0));
}  // namespace

const std::array<Triplet, 4>& single_source_phases() {
    static const std::array<Triplet, 4> t = {{{kP2, 0.0, kP2},
                                              {kP2, kP2, kP2},
                                              {0.0, kP2, kP2},
                                              {0.0, kP2, 0.0}}};
    return t;
}

const std::array<ProjectorPhases, 4>& computational_projector_phases() {
    static const std::array<ProjectorPhases, 4> t = {{
        {"P1", {kP2, 0.0, kP2}, {0, 0, 0, 0}},
        {"P2", {kP2, kP2, kP2}, {0, 0, 0, 0}},
        {"P3", {0.0, kP2, kP2}, {0, 0, 0, 0}},
        {"P4", {0.0, kP2, 0.0}, {0, 0, 0, 0}},
    }};
    return t;
}

const std::array<ProjectorPhases, 4>& rotated_projector_phases() {
    static const std::array<ProjectorPhases, 4> t = {{
        {"P1-R", {kP2, 0.0, kP2}, {0, 0, 0, 0}},
        {"P2-R", {kP4, kP2, kP2}, {0, kPi, kP2, 0}},
        {"P3-R", {-kP4, kP2, kP2}, {0, 0, -kP2, 0}},
        {"P4-R", {0.0, kP2, 0.0}, {0, 0, 0, 0}},
    }};
    return t;
}

const std::array<VqfMapEntry, 16>& vqf_projector_map() {
    const Triplet p1 = {kP2, 0.0, kP2};
    const Triplet p2 = {kP2, kP2, kP2};
    const Triplet p3 = {0.0, kP2, kP2};
    const Triplet p4 = {0.0, kP2, 0.0};
    static const std::array<VqfMapEntry, 16> t = {{
        {1, 1, p1, p3}, {1, 2, p1, p2}, {1, 3, p1, p3}, {1, 4, p1, p4},
        {2, 1, p2, p1}, {2, 2, p2, p2}, {2, 3, p1, p1}, {2, 4, p2, p4},
        {3, 1, p3, p1}, {3, 2, p3, p2}, {3, 3, p3, p1}, {3, 4, p3, p4},
        {4, 1, p4, p1}, {4, 2, p3, p3}, {4, 3, p4, p4}, {4, 4, p4, p3},
    }};
    return t;
}

const std::array<EntangledPrep, 7>& entangled_prep_settings() {
    static const std::array<EntangledPrep, 7> t = {{
        {"2-3", 2, {-kP4, kP2, kP2}},
        {"1-3", 2, {kP4, 0.0, kP2}},
        {"3-4", 2, {0.0, kP2, kP4}},
        {"1-2-3", 3, {kAt2, -kP4, kP2}},
        {"1-3-4", 3, {kAt12, 0.0, kP4}},
        {"2-3-4", 3, {-kAt12, kP2, kP4}},
        {"all", 4, {kP4, -kP4, kP4}},
    }};
    return t;
}

const std::array<DimWitnessSetting, 7>& dim_witness_settings() {
    static const std::array<DimWitnessSetting, 7> t = {{
        {"2-3",
         2,
         {{kP2, kP2, kP2}, {0.0, kP2, kP2}},
         {{kP2, kP2, kP2}, {0.0, kP2, kP2}},
         {{-kP4, kP2, kP2}, {kP4, kP2, kP2}}},
        {"1-3",
         2,
         {{kP2, 0.0, kP2}, {0.0, 0.0, kP2}},
         {{kP2, 0.0, kP2}, {0.0, 0.0, kP2}},
         {{-kP4, 0.0, kP2}, {kP4, 0.0, kP2}}},
        {"3-4",
         2,
         {{0.0, kP2, kP2}, {0.0, kP2, 0.0}},
         {{0.0, kP2, kP2}, {0.0, kP2, 0.0}},
         {{0.0, kP2, -kP4}, {0.0, kP2, kP4}}},
        {"1-2-3",
         3,
         {{kP2, 0.0, kP2}, {kP2, kP2, kP2}, {0.0, kP2, kP2}},
         {{kP2, 0.0, kP2}, {kP2, kP2, kP2}, {0.0, kP2, kP2}},
         {{kP2, 0.0, kP2}, {-kP4, kP2, kP2}, {kP4, kP2, kP2}}},
        {"1-3-4",
         3,
         {{kP2, 0.0, kP2}, {0.0, 0.0, kP2}, {0.0, 0.0, 0.0}},
         {{kP2, 0.0, kP2}, {0.0, 0.0, kP2}, {0.0, 0.0, 0.0}},
         {{kP2, 0.0, 0.0}, {0.0, 0.0, -kP4}, {0.0, 0.0, kP4}}},
        {"2-3-4",
         3,
         {{kP2, kP2, kP2}, {0.0, kP2, kP2}, {0.0, kP2, 0.0}},
         {{kP2, kP2, kP2}, {0.0, kP2, kP2}, {0.0, kP2, 0.0}},
         {{kP2, kP2, 0.0}, {0.0, kP2, -kP4}, {0.0, kP2, kP4}}},
        {"all",
         4,
         {{kP2, 0.0, kP2}, {kP2, kP2, kP2}, {0.0, kP2, kP2}, {0.0, kP2, 0.0}},
         {{kP2, 0.0, kP2}, {kP2, kP2, kP2}, {0.0, kP2, kP2}, {0.0, kP2, 0.0}},
         {{kP2, 0.0, kP2}, {-kP4, kP2, kP2}, {kP4, kP2, kP2}, {0.0, kP2, 0.0}}},
    }};
    return t;
}

const std::array<InterferencePair, 3>& interference_settings() {
    static const std::array<InterferencePair, 3> t = {{
        {"2-3", 2, {-kP4, kP2, kP2}, Stage::Idler, 2},
        {"1-3", 1, {kP4, 0.0, kP2}, Stage::Signal, 1},
        {"3-4", 4, {0.0, kP2, kP4}, Stage::Signal, 4},
    }};
    return t;
}

Vec4 projector_ket(const Triplet& theta, const std::array<double, 4>& phi) {
    PhaseVector p = make_phase_vector(Stage::Idler, theta, phi);
    return projection_mesh_matrix(p).row(1).conjugate().transpose();
}

std::array<int, 2> vqf_raw_cell(const VqfMapEntry& e) {
    auto decode = [](const Triplet& th) {
        Vec4 ket = projector_ket(th);
        for (int m = 0; m < 4; ++m)
            if (std::abs(std::abs(ket(m)) - 1.0) < 1e-9) return m + 1;
        throw std::logic_error("vqf_raw_cell: projector is not a basis vector");
    };
    return {decode(e.theta_i), decode(e.theta_s)};
}

}  // namespace tables
}  // namespace pvqa
