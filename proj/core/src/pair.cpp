#include "hypernorm/pair.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>

#include "hypernorm/errors.hpp"

namespace hypernorm {

namespace {

void check_same_box(const HypergraphPair& a, const HypergraphPair& b,
                    const char* op) {
  if (a.k != b.k || a.dims != b.dims) {
    throw DimensionError(std::string(op) +
                         ": operands live over different boxes");
  }
}

void prune(ExponentMap& m) {
  for (auto it = m.begin(); it != m.end();) {
    if (std::abs(it->second) < kPruneEpsilon) {
      it = m.erase(it);
    } else {
      ++it;
    }
  }
}

ExponentMap merged(const ExponentMap& a, const ExponentMap& b, double sign) {
  ExponentMap out = a;
  for (const auto& [w, v] : b) out[w] += sign * v;
  prune(out);
  return out;
}

}  // namespace

void HypergraphPair::validate() const {
  if (k < 1) throw ValidationError("pair: k must be at least 1");
  if (static_cast<int>(dims.size()) != k) {
    throw DimensionError("pair: dims must list one size per axis");
  }
  for (int d : dims) {
    if (d < 1) throw DimensionError("pair: every axis needs a vertex");
  }
  for (const ExponentMap* m : {&alpha, &beta}) {
    for (const auto& [w, v] : *m) {
      if (static_cast<int>(w.size()) != k) {
        throw DimensionError("pair: cell arity differs from k");
      }
      for (int i = 0; i < k; ++i) {
        if (w[i] < 0 || w[i] >= dims[i]) {
          throw DimensionError("pair: cell index out of range on axis " +
                               std::to_string(i));
        }
      }
      if (!std::isfinite(v)) {
        throw ValidationError("pair: non-finite exponent");
      }
    }
  }
}

double HypergraphPair::size() const {
  double total = 0.0;
  for (const auto& [w, v] : alpha) total += v;
  for (const auto& [w, v] : beta) total += v;
  return total;
}

int HypergraphPair::total_vertices() const {
  int total = 0;
  for (int d : dims) total += d;
  return total;
}

double HypergraphPair::box_cells() const {
  double cells = 1.0;
  for (int d : dims) cells *= d;
  return cells;
}

std::vector<Omega> enumerate_cells(const std::vector<int>& dims) {
  std::vector<Omega> cells;
  if (dims.empty()) return cells;
  std::size_t total = 1;
  for (int d : dims) {
    if (d < 1) return cells;
    total *= static_cast<std::size_t>(d);
  }
  cells.reserve(total);
  Omega cell(dims.size(), 0);
  while (true) {
    cells.push_back(cell);
    int axis = static_cast<int>(dims.size()) - 1;
    while (axis >= 0) {
      if (++cell[static_cast<std::size_t>(axis)] <
          dims[static_cast<std::size_t>(axis)]) {
        break;
      }
      cell[static_cast<std::size_t>(axis)] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return cells;
}

bool HypergraphPair::is_nonnegative() const {
  for (const ExponentMap* m : {&alpha, &beta}) {
    for (const auto& [w, v] : *m) {
      if (v < 0.0) return false;
    }
  }
  return true;
}

bool HypergraphPair::is_zero_one(double tol) const {
  for (const ExponentMap* m : {&alpha, &beta}) {
    for (const auto& [w, v] : *m) {
      if (std::abs(v - 1.0) > tol) return false;
    }
  }
  return true;
}

bool HypergraphPair::is_integer_valued(double tol) const {
  for (const ExponentMap* m : {&alpha, &beta}) {
    for (const auto& [w, v] : *m) {
      if (std::abs(v - std::round(v)) > tol) return false;
    }
  }
  return true;
}

std::vector<Omega> HypergraphPair::support() const {
  std::set<Omega> cells;
  for (const auto& [w, v] : alpha) cells.insert(w);
  for (const auto& [w, v] : beta) cells.insert(w);
  return {cells.begin(), cells.end()};
}

double HypergraphPair::total_at(const Omega& w) const {
  double total = 0.0;
  if (auto it = alpha.find(w); it != alpha.end()) total += it->second;
  if (auto it = beta.find(w); it != beta.end()) total += it->second;
  return total;
}

std::string HypergraphPair::describe() const {
  std::ostringstream out;
  out << k << "-pair over [";
  for (int i = 0; i < k; ++i) out << (i ? "," : "") << dims[i];
  out << "], |alpha|=" << alpha.size() << ", |beta|=" << beta.size()
      << ", size=" << size();
  return out.str();
}

HypergraphPair make_zero_pair(int k, std::vector<int> dims) {
  HypergraphPair h;
  h.k = k;
  h.dims = std::move(dims);
  h.validate();
  return h;
}

HypergraphPair delta(int k, const std::vector<int>& dims, const Omega& psi) {
  HypergraphPair h = make_zero_pair(k, dims);
  h.alpha[psi] = 1.0;
  h.validate();
  return h;
}

HypergraphPair add(const HypergraphPair& a, const HypergraphPair& b) {
  check_same_box(a, b, "add");
  HypergraphPair out = make_zero_pair(a.k, a.dims);
  out.alpha = merged(a.alpha, b.alpha, +1.0);
  out.beta = merged(a.beta, b.beta, +1.0);
  return out;
}

HypergraphPair sub(const HypergraphPair& a, const HypergraphPair& b) {
  check_same_box(a, b, "sub");
  HypergraphPair out = make_zero_pair(a.k, a.dims);
  out.alpha = merged(a.alpha, b.alpha, -1.0);
  out.beta = merged(a.beta, b.beta, -1.0);
  return out;
}

HypergraphPair conjugate(const HypergraphPair& h) {
  HypergraphPair out = h;
  std::swap(out.alpha, out.beta);
  return out;
}

HypergraphPair scale(const HypergraphPair& h, double r) {
  HypergraphPair out = make_zero_pair(h.k, h.dims);
  for (const auto& [w, v] : h.alpha) out.alpha[w] = v * r;
  for (const auto& [w, v] : h.beta) out.beta[w] = v * r;
  prune(out.alpha);
  prune(out.beta);
  return out;
}

HypergraphPair disjoint_union(const HypergraphPair& a,
                              const HypergraphPair& b) {
  if (a.k != b.k) throw DimensionError("disjoint_union: axis counts differ");
  std::vector<int> dims(a.k);
  for (int i = 0; i < a.k; ++i) dims[i] = a.dims[i] + b.dims[i];
  HypergraphPair out = make_zero_pair(a.k, dims);
  out.alpha = a.alpha;
  out.beta = a.beta;
  for (const ExponentMap* src : {&b.alpha, &b.beta}) {
    ExponentMap& dst = (src == &b.alpha) ? out.alpha : out.beta;
    for (const auto& [w, v] : *src) {
      Omega shifted = w;
      for (int i = 0; i < a.k; ++i) shifted[i] += a.dims[i];
      dst[shifted] = v;
    }
  }
  out.validate();
  return out;
}

HypergraphPair tensor(const HypergraphPair& a, const HypergraphPair& b) {
  if (a.k != b.k) throw DimensionError("tensor: axis counts differ");
  std::vector<int> dims(a.k);
  for (int i = 0; i < a.k; ++i) dims[i] = a.dims[i] * b.dims[i];
  HypergraphPair out = make_zero_pair(a.k, dims);

  auto flatten = [&](const Omega& v, const Omega& w) {
    Omega cell(a.k);
    for (int i = 0; i < a.k; ++i) cell[i] = v[i] * b.dims[i] + w[i];
    return cell;
  };
  auto accumulate = [&](ExponentMap& dst, const ExponentMap& lhs,
                        const ExponentMap& rhs) {
    for (const auto& [v, x] : lhs) {
      for (const auto& [w, y] : rhs) {
        dst[flatten(v, w)] += x * y;
      }
    }
  };
  accumulate(out.alpha, a.alpha, b.alpha);
  accumulate(out.alpha, a.beta, b.beta);
  accumulate(out.beta, a.alpha, b.beta);
  accumulate(out.beta, a.beta, b.alpha);
  prune(out.alpha);
  prune(out.beta);
  out.validate();
  return out;
}

HypergraphPair project(const HypergraphPair& h, const std::vector<int>& axes) {
  if (axes.empty()) throw ValidationError("project: need at least one axis");
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (axes[i] < 0 || axes[i] >= h.k) {
      throw DimensionError("project: axis out of range");
    }
    if (i > 0 && axes[i] <= axes[i - 1]) {
      throw ValidationError("project: axes must be strictly increasing");
    }
  }
  std::vector<int> dims;
  dims.reserve(axes.size());
  for (int axis : axes) dims.push_back(h.dims[axis]);
  HypergraphPair out = make_zero_pair(static_cast<int>(axes.size()), dims);
  for (const ExponentMap* src : {&h.alpha, &h.beta}) {
    ExponentMap& dst = (src == &h.alpha) ? out.alpha : out.beta;
    for (const auto& [w, v] : *src) {
      Omega cell(axes.size());
      for (std::size_t i = 0; i < axes.size(); ++i) cell[i] = w[axes[i]];
      dst[cell] += v;
    }
  }
  prune(out.alpha);
  prune(out.beta);
  return out;
}

}  // namespace hypernorm
