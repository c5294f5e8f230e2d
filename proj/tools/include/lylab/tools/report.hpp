#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lylab/correlations.hpp"
#include "lylab/leeyang.hpp"
#include "lylab/quantum.hpp"
#include "lylab/thermo.hpp"

namespace lylab::tools {

// Plot-ready numeric table; cells are written with 17 significant digits.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Report {
  nlohmann::json json = nlohmann::json::object();
  Table table;
  bool passed = true;
};

// Hex-float encodings; complex values become [re, im].
nlohmann::json hexj(double v);
nlohmann::json hexj(Complex z);
nlohmann::json hexj(ComplexLD z);
nlohmann::json hexj(const std::vector<double>& v);

// Adds "model_hash" and "precision" to a report object.
void stamp(nlohmann::json& j, std::uint64_t model_hash, Precision precision);

nlohmann::json to_json(const ScanReport& r);
nlohmann::json to_json(const CircleReport& r);
nlohmann::json to_json(const ConverseResult& r);
nlohmann::json to_json(const UrsellResult& r);
nlohmann::json to_json(const InequalityReport& r);
nlohmann::json to_json(const MagnetizationTable& t);

Table roots_table(const RootResult& r);             // re, im, modulus, residual
Table scan_table(const ScanReport& r);              // witnesses
Table magnetization_table(const MagnetizationTable& t);

// Keys sorted, two-space indent, trailing newline.
std::string dump_json(const nlohmann::json& j);
std::string dump_csv(const Table& t);

// Writes to the path, or to `out` when the path is empty or "-".
void write_text(const std::string& text, const std::string& path, std::ostream& out);

}  // namespace lylab::tools
