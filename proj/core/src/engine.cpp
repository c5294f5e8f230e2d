#include "lylab/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lylab/error.hpp"

namespace lylab {

SiteRule site_rule(const SpinModel& model, const EngineOptions& options) {
  const auto& m = model.measure();
  SiteRule r;
  r.ncomp = m.components();
  switch (m.kind()) {
    case MeasureKind::Atoms:
      for (const auto& a : m.atom_list()) {
        r.weight.push_back(a.weight);
        r.spin.push_back(a.location);
      }
      break;
    case MeasureKind::Density: {
      double bound = options.field_bound;
      if (bound < 0) {
        bound = 0;
        for (auto h : effective_fields(model)) bound = std::max(bound, std::fabs(h.real()));
      }
      double quad = 0;
      const auto& I = model.interaction();
      for (int x = 0; x < model.sites(); ++x) {
        double s = 0;
        for (int y = 0; y < model.sites(); ++y) s += std::fabs(I.pair(x, y));
        quad = std::max(quad, 0.5 * model.beta() * s);
      }
      int order = options.order > 0 ? options.order : m.order();
      for (const auto& q : quadrature_rule(m, order, model.beta() * bound, quad)) {
        r.weight.push_back(q.weight);
        r.spin.push_back(q.node);
      }
      break;
    }
    case MeasureKind::SphereUniform: {
      int N = m.dimension();
      const double pi = std::numbers::pi;
      if (N == 2) {
        int M = options.sphere_order > 0 ? options.sphere_order : 32;
        for (int k = 0; k < M; ++k) {
          double t = 2 * pi * k / M;
          r.weight.push_back(1.0 / M);
          r.spin.push_back(std::cos(t));
          r.spin.push_back(std::sin(t));
        }
      } else if (N == 3) {
        int nt = options.sphere_order > 0 ? options.sphere_order : 16;
        int nphi = 3 * nt / 2;
        GaussRule g = gauss_legendre(nt);
        for (int a = 0; a < nt; ++a) {
          double t = static_cast<double>(g.nodes[a]), st = std::sqrt(std::max(0.0, 1 - t * t));
          for (int b = 0; b < nphi; ++b) {
            double phi = 2 * pi * (b + 0.5) / nphi;
            r.weight.push_back(static_cast<double>(g.weights[a]) / (2.0 * nphi));
            r.spin.push_back(t);
            r.spin.push_back(st * std::cos(phi));
            r.spin.push_back(st * std::sin(phi));
          }
        }
      } else {
        fail(ErrorCode::Unsupported, "multi-site sphere integration supports N = 2 and N = 3");
      }
      break;
    }
  }
  return r;
}

PartitionEngine::PartitionEngine(const SpinModel& model, EngineOptions options)
    : n_(model.sites()), N_(model.components()), beta_(model.beta()) {
  rule_ = site_rule(model, options);
  fields_ = effective_field_vectors(model);
  const auto& I = model.interaction();
  int m = rule_.size();
  pair_in_.resize(n_);
  quartic_in_.resize(n_);
  last_.resize(n_);
  for (int i = 0; i < n_; ++i) last_[i] = i;
  for (int i = 0; i < n_; ++i)
    for (int a = 0; a < i; ++a) {
      if (!I.coupled(a, i)) continue;
      last_[a] = std::max(last_[a], i);
      PairIn p{a, std::vector<double>(static_cast<std::size_t>(m) * m)};
      for (int ka = 0; ka < m; ++ka)
        for (int ki = 0; ki < m; ++ki) {
          double e = 0;
          for (int c = 0; c < I.components(); ++c)
            e += I.pair(a, i, c) * rule_.spin[ka * N_ + c] * rule_.spin[ki * N_ + c];
          p.factor[static_cast<std::size_t>(ka) * m + ki] = std::exp(beta_ * e);
        }
      pair_in_[i].push_back(std::move(p));
    }
  for (const auto& q : I.quartic()) {
    if (q.J == 0) continue;
    int top = q.sites[3];
    for (int k = 0; k < 3; ++k) last_[q.sites[k]] = std::max(last_[q.sites[k]], top);
    quartic_in_[top].push_back({{q.sites[0], q.sites[1], q.sites[2]}, beta_ * q.J});
  }
  // dry run for the table budget
  std::vector<int> active;
  for (int i = 0; i < n_; ++i) {
    active.push_back(i);
    double size = std::pow(static_cast<double>(m), static_cast<double>(active.size()));
    if (size > static_cast<double>(options.budget)) {
      ErrorCode code = model.measure().kind() == MeasureKind::Atoms ? ErrorCode::SizeOverflow
                                                                     : ErrorCode::QuadratureBudget;
      fail(code, "partition sum exceeds the table budget (" + std::to_string(static_cast<long long>(size)) +
                     " entries)");
    }
    peak_ = std::max(peak_, static_cast<std::size_t>(size));
    std::erase_if(active, [&](int a) { return last_[a] <= i; });
  }
}

template <class T, class F>
std::complex<T> PartitionEngine::run(std::span<const F> fields, std::span<const SpinInsertion> insert) const {
  using C = std::complex<T>;
  require(static_cast<int>(fields.size()) == n_ * N_, "field vector size mismatch");
  for (const auto& s : insert)
    require(s.site >= 0 && s.site < n_ && s.axis >= 0 && s.axis < N_, "spin insertion out of range");
  const int m = rule_.size();
  std::vector<int> active;
  std::vector<C> table{C(1)};
  std::vector<C> single(m), next;
  std::vector<int> digits;
  std::vector<const double*> rows;
  std::vector<int> pos_of(n_, -1);
  for (int i = 0; i < n_; ++i) {
    for (int k = 0; k < m; ++k) {
      C e = 0;
      for (int c = 0; c < N_; ++c) {
        const F& h = fields[i * N_ + c];
        e += C(static_cast<T>(h.real()), static_cast<T>(h.imag())) * static_cast<T>(rule_.spin[k * N_ + c]);
      }
      C v = static_cast<T>(rule_.weight[k]) * std::exp(static_cast<T>(beta_) * e);
      for (const auto& s : insert)
        if (s.site == i) v *= static_cast<T>(rule_.spin[k * N_ + s.axis]);
      single[k] = v;
    }
    const int depth = static_cast<int>(active.size());
    for (int p = 0; p < depth; ++p) pos_of[active[p]] = p;
    const auto& pairs = pair_in_[i];
    const auto& quartics = quartic_in_[i];
    rows.assign(pairs.size(), nullptr);
    next.assign(table.size() * m, C(0));
    digits.assign(depth, 0);
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
      C base = table[idx];
      if (base != C(0)) {
        for (std::size_t q = 0; q < pairs.size(); ++q)
          rows[q] = pairs[q].factor.data() + static_cast<std::size_t>(digits[pos_of[pairs[q].partner]]) * m;
        C* out = next.data() + idx * m;
        for (int k = 0; k < m; ++k) {
          T f = 1;
          for (std::size_t q = 0; q < pairs.size(); ++q) f *= static_cast<T>(rows[q][k]);
          C v = base * single[k] * f;
          if (!quartics.empty()) {
            T e = 0;
            for (const auto& q : quartics) {
              T prod = rule_.spin[k];
              for (int s : q.partners) prod *= static_cast<T>(rule_.spin[digits[pos_of[s]]]);
              e += static_cast<T>(q.coupling) * prod;
            }
            v *= std::exp(e);
          }
          out[k] = v;
        }
      }
      for (int p = depth - 1; p >= 0; --p) {
        if (++digits[p] < m) break;
        digits[p] = 0;
      }
    }
    active.push_back(i);
    table.swap(next);
    // eliminate sites without later partners, highest position first
    for (int p = static_cast<int>(active.size()) - 1; p >= 0; --p) {
      if (last_[active[p]] > i) continue;
      std::size_t inner = 1;
      for (std::size_t r = p + 1; r < active.size(); ++r) inner *= m;
      std::size_t outer = table.size() / (inner * m);
      next.assign(outer * inner, C(0));
      for (std::size_t o = 0; o < outer; ++o)
        for (int k = 0; k < m; ++k) {
          const C* src = table.data() + (o * m + k) * inner;
          C* dst = next.data() + o * inner;
          for (std::size_t r = 0; r < inner; ++r) dst[r] += src[r];
        }
      table.swap(next);
      active.erase(active.begin() + p);
    }
  }
  return table.at(0);
}

Complex PartitionEngine::evaluate(std::span<const Complex> fields, std::span<const SpinInsertion> insert) const {
  return run<double>(fields, insert);
}

ComplexLD PartitionEngine::evaluate_ext(std::span<const Complex> fields,
                                        std::span<const SpinInsertion> insert) const {
  return run<long double>(fields, insert);
}

ComplexLD PartitionEngine::evaluate_ext(std::span<const ComplexLD> fields,
                                        std::span<const SpinInsertion> insert) const {
  return run<long double>(fields, insert);
}

Complex PartitionEngine::evaluate(Precision p, std::span<const Complex> fields,
                                  std::span<const SpinInsertion> insert) const {
  if (p == Precision::Double) return run<double>(fields, insert);
  auto v = run<long double>(fields, insert);
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

}  // namespace lylab
