#pragma once

#include <string>

#include "frirq/ensemble.hpp"
#include "frirq/solver.hpp"

namespace frirq {

// Input file schema:
//   {
//     "q1": 0.4,
//     "q2": 0.6,                       // optional, checked against 1 - q1
//     "state1": {"bloch": [x, y, z]},  // or {"matrix": {"re": [[..],[..]],
//     "state2": {...}                  //                "im": [[..],[..]]}}
//   }
// Malformed JSON or schema raises ParseError; unphysical data InvalidEnsemble.
TwoStateEnsemble ensemble_from_json_text(const std::string& text);
TwoStateEnsemble ensemble_from_json_file(const std::string& path);

// Subset of a serialized solution used to re-verify a stored measurement.
struct StoredSolution {
    double Q = 0;
    double P_cor = 0;
    double R_cor = 0;
    Povm povm;
};

StoredSolution solution_from_json_file(const std::string& path);

std::string solution_to_json(const FrirSolution& sol);
std::string analysis_to_json(const DerivedData& d);

}  // namespace frirq
