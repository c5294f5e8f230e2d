#include "lylab/scan.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "lylab/error.hpp"

namespace lylab {

GridSpec GridSpec::parse(std::string_view text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  require(parts.size() == 6, "grid must be re0,re1,nre,im0,im1,nim");
  GridSpec g;
  try {
    std::size_t pos = 0;
    auto num = [&](const std::string& s) {
      double v = std::stod(s, &pos);
      require(pos == s.size(), "bad grid number '" + s + "'");
      return v;
    };
    auto count = [&](const std::string& s) {
      int v = std::stoi(s, &pos);
      require(pos == s.size() && v >= 1, "bad grid count '" + s + "'");
      return v;
    };
    g.re0 = num(parts[0]);
    g.re1 = num(parts[1]);
    g.nre = count(parts[2]);
    g.im0 = num(parts[3]);
    g.im1 = num(parts[4]);
    g.nim = count(parts[5]);
  } catch (const std::logic_error&) {
    fail(ErrorCode::InvalidInput, "malformed grid '" + std::string(text) + "'");
  }
  return g;
}

std::string GridSpec::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << re0 << ',' << re1 << ',' << nre << ',' << im0 << ',' << im1 << ',' << nim;
  return os.str();
}

double GridSpec::re(int i) const { return nre == 1 ? re0 : re0 + (re1 - re0) * i / (nre - 1); }
double GridSpec::im(int j) const { return nim == 1 ? im0 : im0 + (im1 - im0) * j / (nim - 1); }

Complex GridSpec::point(std::size_t index) const {
  int i = static_cast<int>(index / nim), j = static_cast<int>(index % nim);
  return {re(i), im(j)};
}

RegionSpec RegionSpec::rectangle(double re0, double re1, double im0, double im1) {
  require(re0 <= re1 && im0 <= im1, "empty rectangle");
  RegionSpec r;
  r.kind = RegionKind::Rectangle;
  r.re0 = re0, r.re1 = re1, r.im0 = im0, r.im1 = im1;
  return r;
}

RegionSpec RegionSpec::disc(Complex center, double radius) {
  require(radius > 0, "disc radius must be positive");
  RegionSpec r;
  r.kind = RegionKind::Disc;
  r.center = center;
  r.radius = radius;
  return r;
}

RegionSpec RegionSpec::cone(int modes) {
  require(modes >= 1, "cone needs at least one perturbation");
  RegionSpec r;
  r.kind = RegionKind::ConeD;
  r.n = modes;
  return r;
}

RegionSpec RegionSpec::omega_plus(int components) {
  require(components >= 1, "Omega needs N >= 1");
  RegionSpec r;
  r.kind = RegionKind::OmegaPlus;
  r.n = components;
  return r;
}

RegionSpec RegionSpec::omega_minus(int components) {
  RegionSpec r = omega_plus(components);
  r.kind = RegionKind::OmegaMinus;
  return r;
}

RegionSpec RegionSpec::parse(std::string_view name) {
  if (name == "half-plane") return half_plane();
  if (name == "cone") return cone(1);
  if (name == "omega") return omega_plus(3);
  fail(ErrorCode::InvalidInput, "unknown region '" + std::string(name) + "'");
}

bool RegionSpec::contains(Complex h) const {
  switch (kind) {
    case RegionKind::HalfPlane: return h.real() > 0;
    case RegionKind::Rectangle:
      return h.real() > 0 && h.real() >= re0 && h.real() <= re1 && h.imag() >= im0 && h.imag() <= im1;
    case RegionKind::Disc: return h.real() > 0 && std::abs(h - center) <= radius;
    case RegionKind::ConeD: return h.real() > 0;
    case RegionKind::OmegaPlus: return h.real() > 0;
    case RegionKind::OmegaMinus: return h.real() < 0;
  }
  return false;
}

bool RegionSpec::contains(Complex h, std::span<const Complex> eps) const {
  double s = 0;
  for (auto e : eps) s += std::abs(e);
  return h.real() > s;
}

bool RegionSpec::contains_vector(std::span<const Complex> hvec) const {
  if (hvec.empty()) return false;
  double s = 0;
  for (std::size_t i = 1; i < hvec.size(); ++i) s += std::abs(hvec[i]);
  if (kind == RegionKind::OmegaMinus) return -hvec[0].real() > s;
  return hvec[0].real() > s;
}

std::string RegionSpec::name() const {
  switch (kind) {
    case RegionKind::HalfPlane: return "half-plane";
    case RegionKind::Rectangle: return "rectangle";
    case RegionKind::Disc: return "disc";
    case RegionKind::ConeD: return "cone";
    case RegionKind::OmegaPlus: return "omega+";
    case RegionKind::OmegaMinus: return "omega-";
  }
  return "?";
}

bool ScanReport::passed() const { return inside_failures() == 0; }

std::size_t ScanReport::inside_failures() const {
  std::size_t n = 0;
  for (const auto& w : witnesses)
    if (w.inside_region) ++n;
  return n;
}

void scan_record(ScanReport& report, std::vector<Complex> point, double normalized, bool inside) {
  if (report.points == 0) report.min_normalized = std::numeric_limits<double>::infinity();
  ++report.points;
  if (inside) {
    ++report.points_inside;
    if (normalized < report.min_normalized || report.argmin.empty()) {
      report.min_normalized = normalized;
      report.argmin = point;
    }
  }
  if (!(normalized >= report.margin))
    report.witnesses.push_back({std::move(point), normalized, inside});
}

std::vector<Complex> random_split(SplitMix64& rng, int k, double total) {
  std::vector<double> w(k);
  double s = 0;
  for (auto& v : w) s += (v = -std::log(1.0 - rng.uniform()) + 1e-12);
  std::vector<Complex> out(k);
  for (int i = 0; i < k; ++i) out[i] = std::polar(total * w[i] / s, 2 * std::numbers::pi * rng.uniform());
  return out;
}

}  // namespace lylab
