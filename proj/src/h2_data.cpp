#include <cmath>
#include <stdexcept>

#include "pvqa/observables.hpp"

namespace pvqa {

namespace {

// Minimal-basis hydrogen coefficients (Hartree) per bond length (Angstrom).
// Each row stores the independent values; the full 15-term list repeats them
// as (h0, h1, h1, h3, h3, h5, h6, h7, h7, h6, h10, h11, -h11, -h11, h11).
struct H2Row {
    double r;
    double h0, h1, h3, h5, h6, h7, h10, h11;
};

const H2Row kH2Rows[] = {
    {0.1, 5.0607, 0.30084, -0.72648, 0.19297, 0.15205, 0.19109, 0.20307, -0.039043},
    {0.2, 2.3103, 0.28221, -0.64828, 0.19101, 0.14936, 0.18886, 0.20032, -0.039493},
    {0.3, 1.3007, 0.25869, -0.54996, 0.18801, 0.14527, 0.18548, 0.19623, -0.040205},
    {0.4, 0.74077, 0.23529, -0.45353, 0.18422, 0.1402, 0.18133, 0.19136, -0.041129},
    {0.5, 0.37983, 0.21393, -0.36914, 0.17993, 0.13459, 0.17681, 0.18621, -0.042218},
    {0.6, 0.13237, 0.19481, -0.2992, 0.17533, 0.12877, 0.1722, 0.18113, -0.043433},
    {0.7, -0.042079, 0.17771, -0.24274, 0.1706, 0.12293, 0.16768, 0.17628, -0.04475},
    {0.736, -0.097066, 0.17141, -0.22343, 0.16869, 0.12062, 0.16593, 0.17441, -0.045303},
    {0.8, -0.16733, 0.16252, -0.19744, 0.16583, 0.1172, 0.16336, 0.1717, -0.046157},
    {0.9, -0.25905, 0.14908, -0.16071, 0.16114, 0.11163, 0.15927, 0.16737, -0.047643},
    {1.0, -0.32761, 0.13717, -0.13036, 0.1566, 0.10623, 0.15543, 0.16327, -0.049198},
    {1.1, -0.37969, 0.12654, -0.10486, 0.15229, 0.10103, 0.15183, 0.15937, -0.050806},
    {1.2, -0.4196, 0.11699, -0.083203, 0.14827, 0.096044, 0.14849, 0.15568, -0.052448},
    {1.3, -0.45027, 0.10835, -0.064754, 0.14457, 0.091292, 0.1454, 0.15219, -0.054104},
    {1.4, -0.4738, 0.10054, -0.049032, 0.1412, 0.086788, 0.14254, 0.14891, -0.055755},
    {1.5, -0.49179, 0.093456, -0.035645, 0.13818, 0.082537, 0.13992, 0.14586, -0.057384},
    {1.6, -0.50548, 0.087055, -0.024253, 0.13547, 0.078543, 0.13752, 0.14302, -0.058975},
    {1.7, -0.51585, 0.081281, -0.014563, 0.13306, 0.074803, 0.13532, 0.14039, -0.060518},
    {1.8, -0.52368, 0.076088, -0.0063218, 0.13093, 0.071308, 0.13331, 0.13796, -0.062004},
    {1.9, -0.52955, 0.071434, 0.00068821, 0.12904, 0.06805, 0.13148, 0.13573, -0.063428},
    {2.0, -0.53394, 0.067279, 0.0066513, 0.12737, 0.065016, 0.1298, 0.13367, -0.064785},
    {2.1, -0.53719, 0.063585, 0.011725, 0.12588, 0.062192, 0.12826, 0.13177, -0.066073},
    {2.2, -0.5396, 0.060312, 0.016042, 0.12457, 0.059564, 0.12686, 0.13001, -0.067294},
    {2.3, -0.54137, 0.057422, 0.019718, 0.1234, 0.05712, 0.12557, 0.1284, -0.068446},
    {2.4, -0.54266, 0.054879, 0.022848, 0.12236, 0.054845, 0.12438, 0.1269, -0.069531},
    {2.5, -0.5436, 0.052649, 0.025514, 0.12142, 0.052726, 0.12328, 0.12551, -0.070553},
    {2.6, -0.54427, 0.050699, 0.027784, 0.12057, 0.050751, 0.12226, 0.12423, -0.071513},
    {2.7, -0.54476, 0.049001, 0.029716, 0.1198, 0.048909, 0.12132, 0.12305, -0.072414},
    {2.8, -0.5451, 0.047528, 0.031358, 0.1191, 0.047188, 0.12045, 0.12195, -0.073261},
    {2.9, -0.54534, 0.046256, 0.03275, 0.11845, 0.045579, 0.11964, 0.12093, -0.074056},
    {3.0, -0.54551, 0.045164, 0.033928, 0.11784, 0.044072, 0.11887, 0.11998, -0.074803},
};

const std::array<const char*, 15> kH2Ops = {"IIII", "ZIII", "IIZI", "IZII", "IIIZ",
                                            "ZIZI", "ZZII", "IZZI", "ZIIZ", "IIZZ",
                                            "IZIZ", "YXYX", "XYYX", "YXXY", "XYXY"};

const H2Row* find_row(double r) {
    for (const auto& row : kH2Rows)
        if (std::abs(row.r - r) < 1e-9) return &row;
    return nullptr;
}

}  // namespace

const std::vector<double>& h2_table_radii() {
    static const std::vector<double> radii = [] {
        std::vector<double> v;
        for (const auto& row : kH2Rows) v.push_back(row.r);
        return v;
    }();
    return radii;
}

const std::array<const char*, 15>& h2_operator_strings() { return kH2Ops; }

bool h2_grid_contains(double r_angstrom) { return find_row(r_angstrom) != nullptr; }

std::array<double, 15> h2_table_coefficients(double r_angstrom) {
    const H2Row* row = find_row(r_angstrom);
    if (!row)
        throw std::out_of_range(
            "H2 coefficients: bond length is not on the bundled grid {0.1..3.0 step 0.1, 0.736}");
    return {row->h0, row->h1,   row->h1,   row->h3,   row->h3,
            row->h5, row->h6,   row->h7,   row->h7,   row->h6,
            row->h10, row->h11, -row->h11, -row->h11, row->h11};
}

WeightedObservable load_h2_table(double r_angstrom) {
    auto coeffs = h2_table_coefficients(r_angstrom);
    WeightedObservable obs;
    for (int k = 0; k < 15; ++k) obs.add(coeffs[k], kH2Ops[k]);
    return obs;
}

}  // namespace pvqa
