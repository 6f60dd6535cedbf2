#pragma once

#include <complex>
#include <span>
#include <vector>

namespace hypernorm {

using Complex = std::complex<double>;

// Finite measure space on {0, ..., n-1} with strictly positive weights.
struct DiscreteMeasureSpace {
  int n = 0;
  std::vector<double> weights;

  static DiscreteMeasureSpace counting(int n);
  static DiscreteMeasureSpace uniform_probability(int n);

  bool operator==(const DiscreteMeasureSpace&) const = default;

  double total_mass() const;
  bool is_probability(double tol = 1e-12) const;
  void validate() const;
};

// f : Omega^k -> C stored row-major (axis 0 slowest). The measure space is
// carried with the values so integrals know their weights.
struct GridFunction {
  DiscreteMeasureSpace space;
  int k = 0;
  std::vector<Complex> values;

  static GridFunction constant(const DiscreteMeasureSpace& space, int k,
                               Complex value);
  static GridFunction zero(const DiscreteMeasureSpace& space, int k);
  // f_a(i_1, ..., i_k) = a_i when i_1 = ... = i_k = i, else 0.
  static GridFunction diagonal(const DiscreteMeasureSpace& space, int k,
                               std::span<const Complex> a);

  bool operator==(const GridFunction&) const = default;

  void validate() const;
  std::size_t cell_count() const { return values.size(); }
  std::size_t index_of(std::span<const int> idx) const;
  Complex at(std::span<const int> idx) const;
  Complex& at(std::span<const int> idx);

  double infinity_norm() const;
  // Integral of |f| against the product measure.
  double l1_norm() const;
  // Plain integral of f against the product measure.
  Complex mean_integral() const;
};

// Pointwise arithmetic; operands must share the space and k.
GridFunction add(const GridFunction& f, const GridFunction& g);
GridFunction sub(const GridFunction& f, const GridFunction& g);
GridFunction scale(const GridFunction& f, Complex c);
// |f| taken pointwise.
GridFunction abs_value(const GridFunction& f);

// (f (x) g)[(x_1,y_1),...,(x_k,y_k)] = f(x_1..x_k) g(y_1..y_k) on the product
// space; point (x, y) flattens to x * g.space.n + y.
GridFunction tensor_function(const GridFunction& f, const GridFunction& g);

// Integrate out the listed axes (0-indexed, strictly increasing) against the
// function's own measure, producing a function of the remaining axes.
GridFunction integrate_out_axes(const GridFunction& f,
                                const std::vector<int>& axes);

}  // namespace hypernorm
