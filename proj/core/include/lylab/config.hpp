#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "lylab/model.hpp"

namespace lylab {

// Model file schema:
//   {"lattice": {"extents": [L...], "boundary": "periodic"|"free"},
//    "measure": {"kind": "ising"} | {"kind": "atoms", "points": [[s, w], ...]}
//             | {"kind": "uniform", "lo", "hi", "mass", "order"}
//             | {"kind": "quartic", "a", "b", "order"} | {"kind": "sphere", "dimension"},
//    "beta": b,
//    "couplings": {"kernel": {"pairs": [{"offset": [...], "J": [J1, ...]}],
//                             "quartic": [{"offsets": [[...] x4], "J": j}]}}
//               | {"dense": {"pairs": [{"sites": [x, y], "J": [J1, ...]}],
//                            "quartic": [{"sites": [a, b, c, d], "J": j}]}},
//    "field": {"mode": "uniform", "h": h} | {"mode": "per_site", "h": [h...]}
//           | {"mode": "modulated", "h": h, "perturbations": [{"eps": e, "mode": [n...]}]},
//             optional "transverse": [h2, ...]}
// Complex numbers are [re, im] or a plain number; J may be a number for one axis.
// Unknown keys are rejected.
SpinModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const SpinModel& model);
SpinModel load_model(const std::string& path);

SingleSpinMeasure measure_from_json(const nlohmann::json& j);
nlohmann::json measure_to_json(const SingleSpinMeasure& m);

Complex complex_from_json(const nlohmann::json& j);
nlohmann::json complex_to_json(Complex z);

// Rejects keys outside `allowed`.
void check_keys(const nlohmann::json& obj, std::initializer_list<const char*> allowed, const std::string& where);

nlohmann::json read_json_file(const std::string& path);

}  // namespace lylab
