#include "lylab/tools/report.hpp"

#include <fstream>
#include <ostream>

#include "lylab/error.hpp"

namespace lylab::tools {

nlohmann::json hexj(double v) { return to_hex(v); }

nlohmann::json hexj(Complex z) { return nlohmann::json::array({to_hex(z.real()), to_hex(z.imag())}); }

nlohmann::json hexj(ComplexLD z) {
  return hexj(Complex(static_cast<double>(z.real()), static_cast<double>(z.imag())));
}

nlohmann::json hexj(const std::vector<double>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (double x : v) a.push_back(to_hex(x));
  return a;
}

void stamp(nlohmann::json& j, std::uint64_t model_hash, Precision precision) {
  j["model_hash"] = hash_hex(model_hash);
  j["precision"] = std::string(to_string(precision));
}

namespace {

nlohmann::json point_json(const std::vector<Complex>& p) {
  nlohmann::json a = nlohmann::json::array();
  for (Complex z : p) a.push_back(hexj(z));
  return a;
}

}  // namespace

nlohmann::json to_json(const ScanReport& r) {
  nlohmann::json j;
  j["region"] = r.region;
  j["grid"] = r.grid;
  j["points"] = r.points;
  j["points_inside"] = r.points_inside;
  j["margin"] = hexj(r.margin);
  j["min_normalized"] = hexj(r.min_normalized);
  j["argmin"] = point_json(r.argmin);
  j["passed"] = r.passed();
  j["inside_failures"] = r.inside_failures();
  nlohmann::json w = nlohmann::json::array();
  for (const auto& x : r.witnesses)
    w.push_back({{"point", point_json(x.point)},
                 {"normalized_modulus", hexj(x.normalized_modulus)},
                 {"inside_region", x.inside_region}});
  j["witnesses"] = w;
  j["notes"] = r.notes;
  stamp(j, r.model_hash, r.precision);
  return j;
}

nlohmann::json to_json(const CircleReport& r) {
  nlohmann::json j;
  j["verdict"] = std::string(to_string(r.verdict));
  j["max_deviation"] = hexj(r.max_deviation);
  j["tolerance"] = hexj(r.tolerance);
  j["palindrome_defect"] = hexj(r.palindrome_defect);
  j["preconditions_ok"] = r.preconditions_ok;
  j["precondition_notes"] = r.precondition_notes;
  j["converged"] = r.roots.converged;
  j["iterations"] = r.roots.iterations;
  nlohmann::json cl = nlohmann::json::array();
  for (const auto& c : r.roots.clusters)
    cl.push_back({{"centroid", hexj(c.centroid)},
                  {"multiplicity", c.multiplicity},
                  {"centroid_deviation", hexj(c.centroid_deviation)},
                  {"radius", hexj(c.radius)}});
  j["clusters"] = cl;
  nlohmann::json roots = nlohmann::json::array();
  for (const auto& z : r.roots.roots)
    roots.push_back({{"z", hexj(z.z)},
                     {"modulus_deviation", hexj(z.modulus_deviation)},
                     {"residual", hexj(z.residual)},
                     {"cluster", z.cluster}});
  j["roots"] = roots;
  stamp(j, r.model_hash, r.precision);
  return j;
}

nlohmann::json to_json(const ConverseResult& r) {
  nlohmann::json j;
  j["kind"] = r.kind == ConverseResult::Kind::Factorization ? "factorization" : "violation";
  nlohmann::json c = nlohmann::json::array();
  for (const auto& p : r.couplings) c.push_back({{"x", p.x}, {"y", p.y}, {"J", hexj(p.J)}});
  j["couplings"] = c;
  j["residual"] = hexj(r.residual);
  j["min_coupling"] = hexj(r.min_coupling);
  j["constant"] = hexj(r.constant);
  nlohmann::json w = nlohmann::json::array();
  for (ComplexLD z : r.witness) w.push_back(hexj(z));
  j["witness"] = w;
  j["witness_scale"] = hexj(r.witness_scale);
  j["witness_modulus"] = hexj(r.witness_modulus);
  j["witness_kind"] = r.witness_kind;
  j["scales_checked"] = hexj(r.scales_checked);
  j["notes"] = r.notes;
  return j;
}

nlohmann::json to_json(const UrsellResult& r) {
  return {{"value", hexj(r.value)},
          {"route", std::string(to_string(r.route))},
          {"method", r.method},
          {"error_estimate", hexj(r.error_estimate)}};
}

nlohmann::json to_json(const InequalityReport& r) {
  nlohmann::json j;
  j["kind"] = std::string(to_string(r.kind));
  j["preconditions_ok"] = r.preconditions_ok;
  j["exploratory"] = r.exploratory;
  j["notes"] = r.notes;
  j["family"] = r.family;
  j["checks"] = r.checks;
  j["worst"] = hexj(r.worst);
  j["passed"] = r.passed();
  nlohmann::json v = nlohmann::json::array();
  for (const auto& c : r.violations) v.push_back({{"label", c.label}, {"value", hexj(c.value)}});
  j["violations"] = v;
  return j;
}

nlohmann::json to_json(const MagnetizationTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"h", hexj(r.h)}, {"m", hexj(r.m)}, {"dm", hexj(r.dm)}, {"d2m", hexj(r.d2m)}});
  return {{"site", t.site},
          {"concavity_tol", hexj(t.concavity_tol)},
          {"positive", t.positive},
          {"increasing", t.increasing},
          {"concave", t.concave},
          {"rows", rows}};
}

Table roots_table(const RootResult& r) {
  Table t{{"re", "im", "modulus", "residual"}, {}};
  for (const auto& z : r.roots)
    t.rows.push_back({static_cast<double>(z.z.real()), static_cast<double>(z.z.imag()), z.modulus, z.residual});
  return t;
}

Table scan_table(const ScanReport& r) {
  std::size_t width = r.argmin.size();
  for (const auto& w : r.witnesses) width = std::max(width, w.point.size());
  Table t;
  for (std::size_t k = 0; k < width; ++k) {
    std::string name = k == 0 ? "h" : "c" + std::to_string(k);
    t.columns.push_back("re_" + name);
    t.columns.push_back("im_" + name);
  }
  t.columns.push_back("normalized_modulus");
  t.columns.push_back("inside_region");
  for (const auto& w : r.witnesses) {
    std::vector<double> row;
    for (std::size_t k = 0; k < width; ++k) {
      Complex z = k < w.point.size() ? w.point[k] : Complex(0);
      row.push_back(z.real());
      row.push_back(z.imag());
    }
    row.push_back(w.normalized_modulus);
    row.push_back(w.inside_region ? 1 : 0);
    t.rows.push_back(row);
  }
  return t;
}

Table magnetization_table(const MagnetizationTable& m) {
  Table t{{"h", "m", "dm", "d2m"}, {}};
  for (const auto& r : m.rows) t.rows.push_back({r.h, r.m, r.dm, r.d2m});
  return t;
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::string dump_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_g17(row[i]);
    out += "\n";
  }
  return out;
}

void write_text(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text << std::flush;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::InvalidInput, "cannot write " + path);
  f << text;
}

}  // namespace lylab::tools
