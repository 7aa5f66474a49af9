#include "pvqa/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "pvqa/errors.hpp"
#include "pvqa/tables.hpp"

namespace pvqa {

namespace {

json params_json(const Eigen::VectorXd& p) {
    json out = json::array();
    for (Eigen::Index i = 0; i < p.size(); ++i) out.push_back(p(i));
    return out;
}

/// Angles that are exact rational multiples of pi keep a symbolic rendering
/// next to the numeric value.
json angle_symbol(double a) {
    for (int q = 1; q <= 8; ++q) {
        double scaled = a * q / kPi;
        double r = std::round(scaled);
        if (std::abs(scaled - r) < 1e-12 && std::abs(r) <= 2 * q) {
            int p = static_cast<int>(r);
            if (p == 0) return "0";
            std::string s = q == 1 ? "pi" : "pi/" + std::to_string(q);
            if (p == 1) return s;
            if (p == -1) return "-" + s;
            return std::to_string(p) + "*" + s;
        }
    }
    return nullptr;
}

json angles_json(const double* a, int n) {
    json num = json::array(), sym = json::array();
    for (int i = 0; i < n; ++i) {
        num.push_back(a[i]);
        sym.push_back(angle_symbol(a[i]));
    }
    return json{{"rad", num}, {"over_pi", sym}};
}

}  // namespace

json to_json(const CountsRecord& rec) {
    json cc = json::array();
    for (Eigen::Index i = 0; i < rec.cc.size(); ++i) cc.push_back(rec.cc(i));
    char stream[32];
    std::snprintf(stream, sizeof(stream), "0x%016llx",
                  static_cast<unsigned long long>(rec.stream));
    return json{{"setting_id", rec.setting_id},
                {"cc", cc},
                {"cc_total", rec.cc_total},
                {"seed_path", stream}};
}

json to_json(const TwoQuquartState& state) {
    json re = json::array(), im = json::array(), delta = json::array();
    for (int m = 0; m < 4; ++m) {
        re.push_back(state.alpha(m).real());
        im.push_back(state.alpha(m).imag());
        delta.push_back(state.delta[m]);
    }
    return json{{"alpha_re", re}, {"alpha_im", im}, {"delta", delta}, {"epsilon", state.epsilon}};
}

json to_json(const OptRun& run) {
    json traj = json::array();
    for (std::size_t i = 0; i < run.trajectory.size(); ++i) {
        const auto& p = run.trajectory[i];
        traj.push_back(json{{"step", i},
                            {"params", params_json(p.params)},
                            {"cost", p.cost},
                            {"std_err", p.std_err}});
    }
    return json{{"trajectory", traj},
                {"best", json{{"params", params_json(run.best.params)},
                              {"cost", run.best.cost},
                              {"std_err", run.best.std_err}}},
                {"converged", run.converged},
                {"iterations", run.iterations},
                {"evaluations", run.evaluations}};
}

json to_json(const FringeScan& scan) {
    return json{{"pair", scan.pair},
                {"phase_grid", scan.phase_grid},
                {"normalized_cc", scan.normalized_cc},
                {"visibility", scan.visibility},
                {"fit", json{{"amplitude", scan.fit.amplitude},
                             {"offset", scan.fit.offset},
                             {"phase0", scan.fit.phase0},
                             {"valid", scan.fit.valid}}}};
}

json to_json(const DimCertResult& res) {
    auto mat = [](const Eigen::MatrixXd& m) {
        json rows = json::array();
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            json row = json::array();
            for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
            rows.push_back(row);
        }
        return rows;
    };
    return json{{"d", res.d},
                {"sources", res.sources},
                {"p1", mat(res.p1)},
                {"p2", mat(res.p2)},
                {"certified_dimension", res.certified_dimension}};
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw numeric_error("cannot open " + path.string() + " for writing");
    f << text;
}

void write_json_file(const std::filesystem::path& path, const json& j) {
    write_text(path, j.dump(2) + "\n");
}

void append_jsonl(const std::filesystem::path& path, const json& j) {
    std::ofstream f(path, std::ios::binary | std::ios::app);
    if (!f) throw numeric_error("cannot open " + path.string() + " for writing");
    f << j.dump() << "\n";
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw numeric_error("cannot open " + path.string() + " for writing");
    for (std::size_t i = 0; i < header.size(); ++i) f << (i ? "," : "") << header[i];
    f << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) f << (i ? "," : "") << fmt17(row[i]);
        f << "\n";
    }
}

void dump_bundled_tables(const std::filesystem::path& dir) {
    namespace tb = tables;
    std::filesystem::create_directories(dir);

    {
        json rows = json::array();
        const char* names[] = {"source-1", "source-2", "source-3", "source-4"};
        for (int m = 0; m < 4; ++m) {
            const auto& th = tb::single_source_phases()[m];
            rows.push_back(json{{"label", names[m]}, {"theta", angles_json(th.data(), 3)}});
        }
        write_json_file(dir / "single_source.json",
                        json{{"table_id", "single-source"}, {"version", 1}, {"rows", rows}});
    }
    {
        json rows = json::array();
        for (const auto& r : tb::computational_projector_phases())
            rows.push_back(json{{"label", r.label},
                                {"theta", angles_json(r.theta.data(), 3)},
                                {"phi", angles_json(r.phi.data(), 4)}});
        for (const auto& r : tb::rotated_projector_phases())
            rows.push_back(json{{"label", r.label},
                                {"theta", angles_json(r.theta.data(), 3)},
                                {"phi", angles_json(r.phi.data(), 4)}});
        write_json_file(dir / "h2_projectors.json",
                        json{{"table_id", "h2-projectors"}, {"version", 1}, {"rows", rows}});
    }
    {
        json rows = json::array();
        for (const auto& e : tb::vqf_projector_map())
            rows.push_back(json{{"label", "P" + std::to_string(e.n1) + "xP" + std::to_string(e.n2)},
                                {"theta_idler", angles_json(e.theta_i.data(), 3)},
                                {"theta_signal", angles_json(e.theta_s.data(), 3)}});
        write_json_file(dir / "vqf_projector_map.json",
                        json{{"table_id", "vqf-projector-map"}, {"version", 1}, {"rows", rows}});
    }
    {
        json rows = json::array();
        for (const auto& r : tb::entangled_prep_settings())
            rows.push_back(json{{"label", r.label},
                                {"d", r.d},
                                {"theta", angles_json(r.theta_pump.data(), 3)}});
        write_json_file(dir / "entangled_prep.json",
                        json{{"table_id", "entangled-prep"}, {"version", 1}, {"rows", rows}});
    }
    {
        json rows = json::array();
        for (const auto& r : tb::dim_witness_settings()) {
            auto list = [](const std::vector<tb::Triplet>& v) {
                json out = json::array();
                for (const auto& t : v) out.push_back(angles_json(t.data(), 3));
                return out;
            };
            rows.push_back(json{{"label", r.label},
                                {"d", r.d},
                                {"alice", list(r.alice)},
                                {"bob_1", list(r.bob1)},
                                {"bob_2", list(r.bob2)}});
        }
        write_json_file(dir / "dim_witness.json",
                        json{{"table_id", "dim-witness"}, {"version", 1}, {"rows", rows}});
    }
    {
        json rows = json::array();
        for (const auto& r : tb::interference_settings())
            rows.push_back(
                json{{"label", r.label},
                     {"theta", angles_json(r.theta.data(), 3)},
                     {"swept", json{{"stage", r.swept_stage == Stage::Idler ? "idler" : "signal"},
                                    {"mode", r.swept_mode}}}});
        write_json_file(dir / "interference.json",
                        json{{"table_id", "interference"}, {"version", 1}, {"rows", rows}});
    }
    {
        json ops = json::array();
        for (const char* s : h2_operator_strings()) ops.push_back(s);
        json rows = json::array();
        for (double r : h2_table_radii()) {
            auto c = h2_table_coefficients(r);
            json coeffs = json::array();
            for (double v : c) coeffs.push_back(v);
            rows.push_back(json{{"R", r}, {"coeffs", coeffs}});
        }
        write_json_file(dir / "h2_sto3g.json", json{{"system", "H2-STO3G"},
                                                    {"version", 1},
                                                    {"operators", ops},
                                                    {"rows", rows}});
    }
    {
        json ops = json::array();
        for (const char* s : vqf_operator_strings()) ops.push_back(s);
        json rows = json::array();
        for (int n : {15, 21, 35}) {
            auto w = vqf_coefficients(n);
            json coeffs = json::array();
            for (auto v : w) coeffs.push_back(v);
            rows.push_back(json{{"N", n}, {"coeffs", coeffs}});
        }
        write_json_file(dir / "vqf_weights.json", json{{"system", "semiprime-factoring"},
                                                       {"version", 1},
                                                       {"operators", ops},
                                                       {"rows", rows}});
    }
}

}  // namespace pvqa
