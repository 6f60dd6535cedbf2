#include "hypernorm/space.hpp"

#include <algorithm>
#include <cmath>

#include "hypernorm/errors.hpp"

namespace hypernorm {

DiscreteMeasureSpace DiscreteMeasureSpace::counting(int n) {
  DiscreteMeasureSpace s;
  s.n = n;
  s.weights.assign(static_cast<std::size_t>(n), 1.0);
  s.validate();
  return s;
}

DiscreteMeasureSpace DiscreteMeasureSpace::uniform_probability(int n) {
  DiscreteMeasureSpace s;
  s.n = n;
  s.weights.assign(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n));
  s.validate();
  return s;
}

double DiscreteMeasureSpace::total_mass() const {
  double total = 0.0;
  for (double w : weights) total += w;
  return total;
}

bool DiscreteMeasureSpace::is_probability(double tol) const {
  return std::abs(total_mass() - 1.0) <= tol;
}

void DiscreteMeasureSpace::validate() const {
  if (n < 1) throw ValidationError("space: need at least one point");
  if (static_cast<int>(weights.size()) != n) {
    throw DimensionError("space: weight count differs from n");
  }
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw ValidationError("space: weights must be positive and finite");
    }
  }
}

namespace {

std::size_t power_size(int n, int k) {
  std::size_t size = 1;
  for (int i = 0; i < k; ++i) size *= static_cast<std::size_t>(n);
  return size;
}

void check_same_shape(const GridFunction& f, const GridFunction& g,
                      const char* op) {
  if (f.k != g.k || f.space != g.space) {
    throw DimensionError(std::string(op) +
                         ": functions live on different grids");
  }
}

}  // namespace

GridFunction GridFunction::constant(const DiscreteMeasureSpace& space, int k,
                                    Complex value) {
  GridFunction f;
  f.space = space;
  f.k = k;
  f.values.assign(power_size(space.n, k), value);
  f.validate();
  return f;
}

GridFunction GridFunction::zero(const DiscreteMeasureSpace& space, int k) {
  return constant(space, k, Complex(0.0, 0.0));
}

GridFunction GridFunction::diagonal(const DiscreteMeasureSpace& space, int k,
                                    std::span<const Complex> a) {
  if (static_cast<int>(a.size()) != space.n) {
    throw DimensionError("diagonal: need one value per point");
  }
  GridFunction f = zero(space, k);
  for (int i = 0; i < space.n; ++i) {
    std::size_t idx = 0;
    for (int axis = 0; axis < k; ++axis) {
      idx = idx * static_cast<std::size_t>(space.n) +
            static_cast<std::size_t>(i);
    }
    f.values[idx] = a[static_cast<std::size_t>(i)];
  }
  return f;
}

void GridFunction::validate() const {
  space.validate();
  if (k < 1) throw ValidationError("function: k must be at least 1");
  if (values.size() != power_size(space.n, k)) {
    throw DimensionError("function: value count differs from n^k");
  }
  for (const Complex& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw ValidationError("function: non-finite value");
    }
  }
}

std::size_t GridFunction::index_of(std::span<const int> idx) const {
  std::size_t flat = 0;
  for (int axis = 0; axis < k; ++axis) {
    flat = flat * static_cast<std::size_t>(space.n) +
           static_cast<std::size_t>(idx[static_cast<std::size_t>(axis)]);
  }
  return flat;
}

Complex GridFunction::at(std::span<const int> idx) const {
  return values[index_of(idx)];
}

Complex& GridFunction::at(std::span<const int> idx) {
  return values[index_of(idx)];
}

double GridFunction::infinity_norm() const {
  double best = 0.0;
  for (const Complex& v : values) best = std::max(best, std::abs(v));
  return best;
}

double GridFunction::l1_norm() const {
  double total = 0.0;
  std::vector<int> idx(static_cast<std::size_t>(k), 0);
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    double w = 1.0;
    for (int axis = 0; axis < k; ++axis) {
      w *= space.weights[static_cast<std::size_t>(idx[axis])];
    }
    total += w * std::abs(values[flat]);
    for (int axis = k - 1; axis >= 0; --axis) {
      if (++idx[axis] < space.n) break;
      idx[axis] = 0;
    }
  }
  return total;
}

Complex GridFunction::mean_integral() const {
  Complex total(0.0, 0.0);
  std::vector<int> idx(static_cast<std::size_t>(k), 0);
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    double w = 1.0;
    for (int axis = 0; axis < k; ++axis) {
      w *= space.weights[static_cast<std::size_t>(idx[axis])];
    }
    total += w * values[flat];
    for (int axis = k - 1; axis >= 0; --axis) {
      if (++idx[axis] < space.n) break;
      idx[axis] = 0;
    }
  }
  return total;
}

GridFunction add(const GridFunction& f, const GridFunction& g) {
  check_same_shape(f, g, "add");
  GridFunction out = f;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += g.values[i];
  return out;
}

GridFunction sub(const GridFunction& f, const GridFunction& g) {
  check_same_shape(f, g, "sub");
  GridFunction out = f;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= g.values[i];
  return out;
}

GridFunction scale(const GridFunction& f, Complex c) {
  GridFunction out = f;
  for (Complex& v : out.values) v *= c;
  return out;
}

GridFunction abs_value(const GridFunction& f) {
  GridFunction out = f;
  for (Complex& v : out.values) v = Complex(std::abs(v), 0.0);
  return out;
}

GridFunction tensor_function(const GridFunction& f, const GridFunction& g) {
  if (f.k != g.k) throw DimensionError("tensor_function: axis counts differ");
  DiscreteMeasureSpace product;
  product.n = f.space.n * g.space.n;
  product.weights.reserve(static_cast<std::size_t>(product.n));
  for (int x = 0; x < f.space.n; ++x) {
    for (int y = 0; y < g.space.n; ++y) {
      product.weights.push_back(f.space.weights[static_cast<std::size_t>(x)] *
                                g.space.weights[static_cast<std::size_t>(y)]);
    }
  }
  GridFunction out = GridFunction::zero(product, f.k);
  std::vector<int> fx(static_cast<std::size_t>(f.k), 0);
  std::vector<int> gy(static_cast<std::size_t>(f.k), 0);
  std::vector<int> idx(static_cast<std::size_t>(f.k), 0);
  // Walk every (x, y) pair of argument tuples.
  const std::size_t f_cells = f.values.size();
  const std::size_t g_cells = g.values.size();
  for (std::size_t a = 0; a < f_cells; ++a) {
    for (std::size_t b = 0; b < g_cells; ++b) {
      for (int axis = 0; axis < f.k; ++axis) {
        idx[static_cast<std::size_t>(axis)] =
            fx[static_cast<std::size_t>(axis)] * g.space.n +
            gy[static_cast<std::size_t>(axis)];
      }
      out.at(idx) = f.values[a] * g.values[b];
      for (int axis = f.k - 1; axis >= 0; --axis) {
        if (++gy[static_cast<std::size_t>(axis)] < g.space.n) break;
        gy[static_cast<std::size_t>(axis)] = 0;
      }
    }
    for (int axis = f.k - 1; axis >= 0; --axis) {
      if (++fx[static_cast<std::size_t>(axis)] < f.space.n) break;
      fx[static_cast<std::size_t>(axis)] = 0;
    }
  }
  return out;
}

GridFunction integrate_out_axes(const GridFunction& f,
                                const std::vector<int>& axes) {
  if (axes.empty()) throw ValidationError("integrate_out_axes: no axes given");
  std::vector<bool> drop(static_cast<std::size_t>(f.k), false);
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (axes[i] < 0 || axes[i] >= f.k) {
      throw DimensionError("integrate_out_axes: axis out of range");
    }
    if (i > 0 && axes[i] <= axes[i - 1]) {
      throw ValidationError("integrate_out_axes: axes must be increasing");
    }
    drop[static_cast<std::size_t>(axes[i])] = true;
  }
  const int kept = f.k - static_cast<int>(axes.size());
  if (kept < 1) {
    throw ValidationError("integrate_out_axes: must keep at least one axis");
  }
  GridFunction out = GridFunction::zero(f.space, kept);
  std::vector<int> idx(static_cast<std::size_t>(f.k), 0);
  std::vector<int> kept_idx(static_cast<std::size_t>(kept), 0);
  for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
    double w = 1.0;
    int j = 0;
    for (int axis = 0; axis < f.k; ++axis) {
      if (drop[static_cast<std::size_t>(axis)]) {
        w *= f.space.weights[static_cast<std::size_t>(
            idx[static_cast<std::size_t>(axis)])];
      } else {
        kept_idx[static_cast<std::size_t>(j++)] =
            idx[static_cast<std::size_t>(axis)];
      }
    }
    out.at(kept_idx) += w * f.values[flat];
    for (int axis = f.k - 1; axis >= 0; --axis) {
      if (++idx[static_cast<std::size_t>(axis)] < f.space.n) break;
      idx[static_cast<std::size_t>(axis)] = 0;
    }
  }
  return out;
}

}  // namespace hypernorm
