#include "lylab/numeric.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <quadmath.h>

#include "lylab/error.hpp"

namespace lylab {

Precision precision_from_env() {
  const char* env = std::getenv("LYLAB_PRECISION");
  if (!env || !*env) return Precision::Extended;
  return parse_precision(env);
}

std::string_view to_string(Precision p) { return p == Precision::Double ? "double" : "extended"; }

Precision parse_precision(std::string_view text) {
  if (text == "double") return Precision::Double;
  if (text == "extended") return Precision::Extended;
  fail(ErrorCode::InvalidInput, "unknown precision mode '" + std::string(text) + "'");
}

std::string to_hex(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  bool neg = std::signbit(v);
  auto res = std::to_chars(buf, buf + sizeof buf, std::fabs(v), std::chars_format::hex);
  return std::string(neg ? "-0x" : "0x") + std::string(buf, res.ptr);
}

double hex_to_double(std::string_view text) {
  std::string s(text);
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    fail(ErrorCode::InvalidInput, "malformed hex float '" + s + "'");
  return v;
}

std::string to_hex(const Quad& v) {
  char buf[96];
  quadmath_snprintf(buf, sizeof buf, "%Qa", v.backend().value());
  return buf;
}

Quad hex_to_quad(std::string_view text) {
  std::string s(text);
  char* end = nullptr;
  __float128 v = strtoflt128(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    fail(ErrorCode::InvalidInput, "malformed hex float '" + s + "'");
  return Quad(v);
}

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

GaussRule gauss_legendre(int order) {
  require(order >= 1, "quadrature order must be >= 1");
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const long double pi = std::numbers::pi_v<long double>;
  for (int i = 0; i < (order + 1) / 2; ++i) {
    long double x = std::cos(pi * (i + 0.75L) / (order + 0.5L));
    long double pp = 1;
    for (int it = 0; it < 100; ++it) {
      long double p1 = 1, p2 = 0;
      for (int j = 1; j <= order; ++j) {
        long double p3 = p2;
        p2 = p1;
        p1 = ((2 * j - 1) * x * p2 - (j - 1) * p3) / j;
      }
      pp = order * (x * p1 - p2) / (x * x - 1);
      long double dx = p1 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-19L) {
        if (it > 0) break;
      }
    }
    long double w = 2 / ((1 - x * x) * pp * pp);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = rule.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0;
  return rule;
}

GaussRule gauss_gegenbauer(int order, double a) {
  require(order >= 1, "quadrature order must be >= 1");
  require(a > -1, "Jacobi exponent must exceed -1");
  GaussRule rule;
  if (a == 0) {
    rule = gauss_legendre(order);
    for (auto& w : rule.weights) w /= 2;
    return rule;
  }
  if (a == -0.5) {
    const long double pi = std::numbers::pi_v<long double>;
    for (int j = order; j >= 1; --j) {
      rule.nodes.push_back(std::cos((2 * j - 1) * pi / (2 * order)));
      rule.weights.push_back(1.0L / order);
    }
    return rule;
  }
  // Golub-Welsch on the symmetric Jacobi matrix.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
  Eigen::VectorXd sub(std::max(order - 1, 0));
  for (int k = 1; k < order; ++k) {
    double num = k * (k + 2 * a);
    double den = (2 * k + 2 * a + 1) * (2 * k + 2 * a - 1);
    sub[k - 1] = std::sqrt(num / den);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  for (int i = 0; i < order; ++i) {
    double v0 = es.eigenvectors()(0, i);
    rule.nodes.push_back(es.eigenvalues()[i]);
    rule.weights.push_back(v0 * v0);
  }
  return rule;
}

}  // namespace lylab
