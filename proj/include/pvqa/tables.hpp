#pragma once

#include <array>
#include <string>
#include <vector>

#include "pvqa/mesh.hpp"
#include "pvqa/state.hpp"

namespace pvqa {
namespace tables {

using Triplet = std::array<double, 3>;

/// Mesh settings routing all pump power to one source; the same triplet on
/// the idler/signal mesh projects that source's photons onto the detected
/// output. Index by source 1..4.
const std::array<Triplet, 4>& single_source_phases();

struct ProjectorPhases {
    const char* label;
    Triplet theta;
    std::array<double, 4> phi;
};

/// Computational-basis projectors P1..P4.
const std::array<ProjectorPhases, 4>& computational_projector_phases();

/// Projectors composed with the XY readout rotation. The straight-arm
/// phases realize the rotated rows exactly; hardware leaves them to the
/// spurious-phase calibration, which is why printed settings quote zeros.
const std::array<ProjectorPhases, 4>& rotated_projector_phases();

struct VqfMapEntry {
    int n1, n2;  // labeled computational outcome, 1-based ququart pair
    Triplet theta_i;
    Triplet theta_s;
};

/// The 16 projector settings of the factoring run. The labels follow the
/// admissible-state relabeling, so several entries reuse one raw projector.
const std::array<VqfMapEntry, 16>& vqf_projector_map();

struct EntangledPrep {
    const char* label;  // participating sources, e.g. "2-3" or "all"
    int d;
    Triplet theta_pump;
};

const std::array<EntangledPrep, 7>& entangled_prep_settings();

struct DimWitnessSetting {
    const char* label;
    int d;
    std::vector<Triplet> alice;  // one setting, d projectors
    std::vector<Triplet> bob1;   // computational setting
    std::vector<Triplet> bob2;   // superposition setting
};

const std::array<DimWitnessSetting, 7>& dim_witness_settings();

struct InterferencePair {
    const char* label;
    int other_source;  // partner of reference source 3
    Triplet theta;     // pump and both projection meshes
    Stage swept_stage;
    int swept_mode;  // 1-based straight-arm phase being swept
};

const std::array<InterferencePair, 3>& interference_settings();

/// Projector ket realized by a projection mesh at the given phases
/// (conjugate of the detected row).
Vec4 projector_ket(const Triplet& theta, const std::array<double, 4>& phi = {0, 0, 0, 0});

/// Raw computational cell (m1, m2) measured by a factoring map entry.
std::array<int, 2> vqf_raw_cell(const VqfMapEntry& e);

}  // namespace tables
}  // namespace pvqa
