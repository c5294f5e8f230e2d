#include "lylab/config.hpp"

#include <fstream>
#include <set>

#include "lylab/error.hpp"

namespace lylab {

using nlohmann::json;

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  require(obj.is_object(), where + " must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : obj.items())
    require(ok.count(k) == 1, "unknown key '" + k + "' in " + where);
}

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(), "complex value must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

namespace {

double number(const json& obj, const char* key, const std::string& where) {
  require(obj.contains(key) && obj.at(key).is_number(), where + "." + key + " must be a number");
  return obj.at(key).get<double>();
}

std::vector<double> couplings(const json& j) {
  if (j.is_number()) return {j.get<double>()};
  require(j.is_array() && !j.empty(), "J must be a number or a non-empty array");
  std::vector<double> out;
  for (const auto& v : j) {
    require(v.is_number(), "J entries must be numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<int> ints(const json& j, const std::string& what) {
  require(j.is_array(), what + " must be an array of integers");
  std::vector<int> out;
  for (const auto& v : j) {
    require(v.is_number_integer(), what + " must be an array of integers");
    out.push_back(v.get<int>());
  }
  return out;
}

Boundary parse_boundary(const std::string& s) {
  if (s == "periodic") return Boundary::Periodic;
  if (s == "free") return Boundary::Free;
  fail(ErrorCode::InvalidInput, "boundary must be 'periodic' or 'free'");
}

}  // namespace

SingleSpinMeasure measure_from_json(const json& j) {
  require(j.is_object() && j.contains("kind") && j.at("kind").is_string(), "measure needs a kind");
  std::string kind = j.at("kind");
  if (kind == "ising") {
    check_keys(j, {"kind"}, "measure");
    return SingleSpinMeasure::ising();
  }
  if (kind == "atoms") {
    check_keys(j, {"kind", "points", "symmetry"}, "measure");
    require(j.contains("points") && j.at("points").is_array(), "atoms measure needs points");
    std::vector<Atom> atoms;
    for (const auto& p : j.at("points")) {
      require(p.is_array() && p.size() == 2 && p[0].is_number() && p[1].is_number(), "atom must be [location, weight]");
      atoms.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    std::optional<Symmetry> sym;
    if (j.contains("symmetry")) sym = parse_symmetry(j.at("symmetry").get<std::string>());
    return SingleSpinMeasure::atoms(std::move(atoms), sym);
  }
  if (kind == "uniform") {
    check_keys(j, {"kind", "lo", "hi", "mass", "order"}, "measure");
    double mass = j.contains("mass") ? number(j, "mass", "measure") : 1.0;
    int order = j.contains("order") ? j.at("order").get<int>() : 64;
    return SingleSpinMeasure::uniform(number(j, "lo", "measure"), number(j, "hi", "measure"), mass, order);
  }
  if (kind == "quartic") {
    check_keys(j, {"kind", "a", "b", "order"}, "measure");
    int order = j.contains("order") ? j.at("order").get<int>() : 64;
    return SingleSpinMeasure::quartic(number(j, "a", "measure"), j.contains("b") ? number(j, "b", "measure") : 0.0,
                                      order);
  }
  if (kind == "sphere") {
    check_keys(j, {"kind", "dimension", "order"}, "measure");
    int order = j.contains("order") ? j.at("order").get<int>() : 0;
    return SingleSpinMeasure::sphere_uniform(j.at("dimension").get<int>(), order);
  }
  fail(ErrorCode::InvalidInput, "unknown measure kind '" + kind + "'");
}

json measure_to_json(const SingleSpinMeasure& m) {
  switch (m.kind()) {
    case MeasureKind::Atoms: {
      json pts = json::array();
      for (const auto& a : m.atom_list()) pts.push_back({a.location, a.weight});
      return {{"kind", "atoms"}, {"points", pts}, {"symmetry", to_string(m.symmetry())}};
    }
    case MeasureKind::Density:
      if (m.density_tag() == DensityTag::Uniform)
        return {{"kind", "uniform"}, {"lo", m.lo()}, {"hi", m.hi()}, {"mass", m.normalization()}, {"order", m.order()}};
      return {{"kind", "quartic"}, {"a", m.quartic_a()}, {"b", m.quartic_b()}, {"order", m.order()}};
    case MeasureKind::SphereUniform:
      return {{"kind", "sphere"}, {"dimension", m.dimension()}, {"order", m.order()}};
  }
  return {};
}

SpinModel model_from_json(const json& j) {
  try {
    check_keys(j, {"lattice", "measure", "beta", "couplings", "field"}, "model");
    require(j.contains("lattice"), "model needs a lattice");
    const auto& jl = j.at("lattice");
    check_keys(jl, {"extents", "boundary"}, "lattice");
    LatticeSpec lattice;
    lattice.extents = ints(jl.at("extents"), "lattice.extents");
    lattice.boundary = parse_boundary(jl.value("boundary", std::string("periodic")));
    lattice.validate();

    SingleSpinMeasure measure = j.contains("measure") ? measure_from_json(j.at("measure")) : SingleSpinMeasure::ising();
    require(j.contains("beta") && j.at("beta").is_number(), "model needs a numeric beta");
    double beta = j.at("beta").get<double>();

    Interaction interaction = Interaction::dense(lattice.volume(), measure.components());
    if (j.contains("couplings")) {
      const auto& jc = j.at("couplings");
      check_keys(jc, {"kernel", "dense"}, "couplings");
      require(jc.size() == 1, "couplings must be either kernel or dense");
      if (jc.contains("kernel")) {
        const auto& jk = jc.at("kernel");
        check_keys(jk, {"pairs", "quartic"}, "couplings.kernel");
        Kernel k;
        for (const auto& b : jk.value("pairs", json::array())) {
          check_keys(b, {"offset", "J"}, "kernel pair");
          k.pairs.push_back({ints(b.at("offset"), "offset"), couplings(b.at("J"))});
          require(static_cast<int>(k.pairs.back().offset.size()) == lattice.dimension(), "offset dimension mismatch");
        }
        for (const auto& q : jk.value("quartic", json::array())) {
          check_keys(q, {"offsets", "J"}, "kernel quartic");
          QuarticShape s;
          require(q.at("offsets").is_array() && q.at("offsets").size() == 4, "quartic shape needs four offsets");
          for (int a = 0; a < 4; ++a) s.offsets[a] = ints(q.at("offsets")[a], "offset");
          s.J = q.at("J").get<double>();
          k.quartic.push_back(s);
        }
        interaction = Interaction::from_kernel(lattice, k);
      } else {
        const auto& jd = jc.at("dense");
        check_keys(jd, {"pairs", "quartic"}, "couplings.dense");
        for (const auto& b : jd.value("pairs", json::array())) {
          check_keys(b, {"sites", "J"}, "dense pair");
          auto s = ints(b.at("sites"), "sites");
          require(s.size() == 2, "dense pair needs two sites");
          auto J = couplings(b.at("J"));
          require(static_cast<int>(J.size()) <= measure.components(), "more coupling axes than spin components");
          for (std::size_t c = 0; c < J.size(); ++c) interaction.add_pair(s[0], s[1], J[c], static_cast<int>(c));
        }
        for (const auto& q : jd.value("quartic", json::array())) {
          check_keys(q, {"sites", "J"}, "dense quartic");
          auto s = ints(q.at("sites"), "sites");
          require(s.size() == 4, "quartic term needs four sites");
          interaction.add_quartic({s[0], s[1], s[2], s[3]}, q.at("J").get<double>());
        }
      }
    }

    FieldSpec field;
    if (j.contains("field")) {
      const auto& jf = j.at("field");
      check_keys(jf, {"mode", "h", "perturbations", "transverse"}, "field");
      std::string mode = jf.value("mode", std::string("uniform"));
      if (mode == "uniform") {
        field = FieldSpec::uniform(jf.contains("h") ? complex_from_json(jf.at("h")) : Complex(0));
      } else if (mode == "per_site") {
        std::vector<Complex> hs;
        for (const auto& v : jf.at("h")) hs.push_back(complex_from_json(v));
        field = FieldSpec::site_fields(std::move(hs));
      } else if (mode == "modulated") {
        std::vector<Perturbation> ps;
        for (const auto& p : jf.value("perturbations", json::array())) {
          check_keys(p, {"eps", "mode"}, "perturbation");
          ps.push_back({complex_from_json(p.at("eps")), ints(p.at("mode"), "mode")});
        }
        field = FieldSpec::modulated(jf.contains("h") ? complex_from_json(jf.at("h")) : Complex(0), std::move(ps));
      } else {
        fail(ErrorCode::InvalidInput, "unknown field mode '" + mode + "'");
      }
      for (const auto& t : jf.value("transverse", json::array())) field.transverse.push_back(complex_from_json(t));
    }
    return SpinModel(lattice, measure, interaction, field, beta);
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidInput, std::string("model config: ") + e.what());
  }
}

json model_to_json(const SpinModel& model) {
  const auto& I = model.interaction();
  json pairs = json::array(), quartic = json::array();
  for (int x = 0; x < model.sites(); ++x)
    for (int y = x + 1; y < model.sites(); ++y) {
      if (!I.coupled(x, y)) continue;
      json J = json::array();
      for (int c = 0; c < I.components(); ++c) J.push_back(I.pair(x, y, c));
      pairs.push_back({{"sites", {x, y}}, {"J", J}});
    }
  for (const auto& q : I.quartic()) quartic.push_back({{"sites", q.sites}, {"J", q.J}});
  const auto& f = model.field();
  json field;
  switch (f.mode) {
    case FieldMode::Uniform: field = {{"mode", "uniform"}, {"h", complex_to_json(f.h)}}; break;
    case FieldMode::PerSite: {
      json hs = json::array();
      for (auto h : f.per_site) hs.push_back(complex_to_json(h));
      field = {{"mode", "per_site"}, {"h", hs}};
      break;
    }
    case FieldMode::Modulated: {
      json ps = json::array();
      for (const auto& p : f.perturbations) ps.push_back({{"eps", complex_to_json(p.eps)}, {"mode", p.mode}});
      field = {{"mode", "modulated"}, {"h", complex_to_json(f.h)}, {"perturbations", ps}};
      break;
    }
  }
  if (!f.transverse.empty()) {
    json t = json::array();
    for (auto h : f.transverse) t.push_back(complex_to_json(h));
    field["transverse"] = t;
  }
  return {{"lattice",
           {{"extents", model.lattice().extents},
            {"boundary", model.lattice().boundary == Boundary::Periodic ? "periodic" : "free"}}},
          {"measure", measure_to_json(model.measure())},
          {"beta", model.beta()},
          {"couplings", {{"dense", {{"pairs", pairs}, {"quartic", quartic}}}}},
          {"field", field}};
}

std::uint64_t model_hash(const SpinModel& model) { return fnv1a(model_to_json(model).dump()); }

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidInput, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::InvalidInput, "'" + path + "' is not valid JSON: " + e.what());
  }
}

SpinModel load_model(const std::string& path) { return model_from_json(read_json_file(path)); }

}  // namespace lylab
