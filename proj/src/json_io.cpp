#include "frirq/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "frirq/boundary.hpp"
#include "frirq/errors.hpp"

namespace frirq {

namespace {

using nlohmann::json;

constexpr double kTolHermitian = 1e-9;

double cell(const json& rows, int r, int c, const char* label) {
    if (!rows.is_array() || rows.size() != 2 || !rows.at(r).is_array() || rows.at(r).size() != 2)
        throw ParseError(std::string(label) + " must be a 2x2 array of numbers");
    return rows.at(r).at(c).get<double>();
}

HermitianOp matrix_object(const json& m, const std::string& label) {
    const json& re = m.at("re");
    double r00 = cell(re, 0, 0, (label + ".re").c_str());
    double r01 = cell(re, 0, 1, (label + ".re").c_str());
    double r10 = cell(re, 1, 0, (label + ".re").c_str());
    double r11 = cell(re, 1, 1, (label + ".re").c_str());
    double i00 = 0, i01 = 0, i10 = 0, i11 = 0;
    if (m.contains("im")) {
        const json& im = m.at("im");
        i00 = cell(im, 0, 0, (label + ".im").c_str());
        i01 = cell(im, 0, 1, (label + ".im").c_str());
        i10 = cell(im, 1, 0, (label + ".im").c_str());
        i11 = cell(im, 1, 1, (label + ".im").c_str());
    }
    if (std::abs(i00) > kTolHermitian || std::abs(i11) > kTolHermitian)
        throw ParseError(label + " has a non-real diagonal");
    if (std::abs(r01 - r10) > kTolHermitian || std::abs(i01 + i10) > kTolHermitian)
        throw ParseError(label + " is not hermitian");
    return {r00, r11, Cx(r01, i01)};
}

HermitianOp state_from_json(const json& node, const std::string& label) {
    if (node.contains("bloch")) {
        const json& b = node.at("bloch");
        if (!b.is_array() || b.size() != 3)
            throw ParseError(label + ".bloch must be an array of 3 numbers");
        BlochVector v{b.at(0).get<double>(), b.at(1).get<double>(), b.at(2).get<double>()};
        return from_bloch(v, 1.0);
    }
    if (node.contains("matrix")) return matrix_object(node.at("matrix"), label + ".matrix");
    throw ParseError(label + " needs a \"bloch\" or \"matrix\" entry");
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

json matrix_json(const HermitianOp& h) {
    return json{
        {"re", {{h.a11, h.a12.real()}, {h.a12.real(), h.a22}}},
        {"im", {{0.0, h.a12.imag()}, {-h.a12.imag(), 0.0}}},
    };
}

json interval_json(const PiInterval& iv) {
    return json::array({iv.lo, iv.hi});
}

}  // namespace

TwoStateEnsemble ensemble_from_json_text(const std::string& text) {
    const json j = parse_text(text);
    TwoStateEnsemble ens;
    try {
        ens.q1 = j.at("q1").get<double>();
        ens.q2 = 1.0 - ens.q1;
        if (j.contains("q2") && std::abs(ens.q1 + j.at("q2").get<double>() - 1.0) > 1e-9)
            throw ParseError("q1 and q2 must sum to 1");
        ens.rho1 = state_from_json(j.at("state1"), "state1");
        ens.rho2 = state_from_json(j.at("state2"), "state2");
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad ensemble file: ") + e.what());
    }
    ens.validate();
    return ens;
}

TwoStateEnsemble ensemble_from_json_file(const std::string& path) {
    return ensemble_from_json_text(slurp(path));
}

StoredSolution solution_from_json_file(const std::string& path) {
    const json j = parse_text(slurp(path));
    StoredSolution s;
    try {
        s.Q = j.at("Q").get<double>();
        s.P_cor = j.at("P_cor").get<double>();
        s.R_cor = j.contains("R_cor") ? j.at("R_cor").get<double>()
                                      : s.P_cor / (1.0 - s.Q);
        const json& arr = j.at("povm");
        if (!arr.is_array() || arr.size() != 3)
            throw ParseError("povm must be an array of 3 matrices");
        for (int i = 0; i < 3; ++i)
            s.povm[static_cast<size_t>(i)] =
                matrix_object(arr.at(i), "povm[" + std::to_string(i) + "]");
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad solution file: ") + e.what());
    }
    return s;
}

std::string solution_to_json(const FrirSolution& sol) {
    json j{
        {"schema_version", 1},
        {"Q", sol.Q},
        {"R_cor", sol.R_cor},
        {"P_cor", sol.P_cor},
        {"Pbar_cor", sol.Pbar_cor},
        {"q_used", sol.q_used},
        {"regime", regime_name(sol.regime)},
        {"unique", sol.unique},
    };
    j["epsilon"] = sol.epsilon ? json(*sol.epsilon) : json(nullptr);
    j["povm"] = json::array({matrix_json(sol.povm[0]), matrix_json(sol.povm[1]),
                             matrix_json(sol.povm[2])});
    return j.dump(2);
}

std::string analysis_to_json(const DerivedData& d) {
    const BoundaryCase lower = q0_lower(d);
    const BoundaryCase upper = q0_upper(d);
    json j{
        {"schema_version", 1},
        {"swapped", d.swapped},
        {"C1", d.C1},
        {"C2", d.C2},
        {"abs_rho12", std::abs(d.rho12)},
        {"rho11", d.rho11},
        {"rho22", d.rho22},
        {"e", d.e},
        {"l", d.l},
        {"Q1", d.Q1()},
        {"Q2", d.Q2()},
    };
    j["chi"] = d.chi_available ? json(d.chi) : json(nullptr);
    j["lower"] = json{{"q0", lower.q0},
                      {"regime", boundary_regime_name(lower.regime)},
                      {"interval", interval_json(lower.interval)}};
    j["upper"] = json{{"q0", upper.q0},
                      {"regime", boundary_regime_name(upper.regime)},
                      {"interval", interval_json(upper.interval)}};
    return j.dump(2);
}

}  // namespace frirq
