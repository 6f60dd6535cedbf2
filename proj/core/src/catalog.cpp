#include "hypernorm/catalog.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "hypernorm/errors.hpp"

namespace hypernorm {

HypergraphPair make_lp(double p, bool allow_subunit) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw ValidationError("make_lp: p must be positive and finite");
  }
  if (p < 1.0 && !allow_subunit) {
    throw ValidationError(
        "make_lp: p < 1 defines only a quasi-norm; pass allow_subunit to "
        "experiment anyway");
  }
  HypergraphPair h;
  h.k = 1;
  h.dims = {1};
  h.alpha[{0}] = p / 2.0;
  h.beta[{0}] = p / 2.0;
  h.validate();
  return h;
}

HypergraphPair make_gowers(int k) {
  if (k < 1) throw ValidationError("make_gowers: k must be >= 1");
  HypergraphPair h;
  h.k = k;
  h.dims.assign(static_cast<std::size_t>(k), 2);
  Omega cell(static_cast<std::size_t>(k), 0);
  const int total = 1 << k;
  for (int code = 0; code < total; ++code) {
    int parity = 0;
    for (int i = 0; i < k; ++i) {
      cell[static_cast<std::size_t>(i)] = (code >> i) & 1;
      parity ^= (code >> i) & 1;
    }
    if (parity == 1) {
      h.alpha[cell] = 1.0;
    } else {
      h.beta[cell] = 1.0;
    }
  }
  h.validate();
  return h;
}

HypergraphPair make_schatten(int two_m) {
  if (two_m < 2 || two_m % 2 != 0) {
    throw ValidationError("make_schatten: parameter must be an even integer >= 2");
  }
  const int m = two_m / 2;
  HypergraphPair h;
  h.k = 2;
  h.dims = {m, m};
  for (int i = 0; i < m; ++i) {
    h.alpha[{i, i}] += 1.0;
    h.beta[{(i + 1) % m, i}] += 1.0;
  }
  h.validate();
  return h;
}

HypergraphPair make_complete(double p, const std::vector<int>& dims) {
  if (!(p >= 0.5) || !std::isfinite(p)) {
    throw ValidationError("make_complete: p must satisfy p >= 1/2");
  }
  if (dims.empty()) throw ValidationError("make_complete: dims must be nonempty");
  HypergraphPair h;
  h.k = static_cast<int>(dims.size());
  h.dims = dims;
  for (const Omega& cell : enumerate_cells(dims)) {
    h.alpha[cell] = p;
    h.beta[cell] = p;
  }
  h.validate();
  return h;
}

HypergraphPair make_sqrt2_pair() {
  const double d = std::sqrt(2.0) / 2.0;
  HypergraphPair h;
  h.k = 2;
  h.dims = {2, 2};
  h.alpha[{0, 0}] = d;
  h.alpha[{1, 1}] = d;
  h.alpha[{0, 1}] = 0.5;
  h.alpha[{1, 0}] = 0.5;
  h.beta = h.alpha;
  h.validate();
  return h;
}

namespace {

using Matrix = std::vector<std::vector<Complex>>;

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  Matrix out(n, std::vector<Complex>(n, Complex{0.0, 0.0}));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < n; ++l) {
      const Complex ail = a[i][l];
      if (ail == Complex{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < n; ++j) {
        out[i][j] += ail * b[l][j];
      }
    }
  }
  return out;
}

}  // namespace

double schatten_oracle(const GridFunction& f, int two_m) {
  f.validate();
  if (two_m < 2 || two_m % 2 != 0) {
    throw ValidationError("schatten_oracle: parameter must be an even integer >= 2");
  }
  if (f.k != 2) throw ValidationError("schatten_oracle: function must have k = 2");
  for (double w : f.space.weights) {
    if (w != 1.0) {
      throw ValidationError("schatten_oracle: requires counting measure");
    }
  }
  const int m = two_m / 2;
  const std::size_t n = static_cast<std::size_t>(f.space.n);
  Matrix a(n, std::vector<Complex>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = f.values[i * n + j];
    }
  }
  Matrix gram(n, std::vector<Complex>(n, Complex{0.0, 0.0}));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex s{0.0, 0.0};
      for (std::size_t l = 0; l < n; ++l) {
        s += a[i][l] * std::conj(a[j][l]);
      }
      gram[i][j] = s;
    }
  }
  Matrix power = gram;
  for (int step = 1; step < m; ++step) power = multiply(power, gram);
  double trace = 0.0;
  for (std::size_t i = 0; i < n; ++i) trace += power[i][i].real();
  if (trace < 0.0) trace = 0.0;
  return std::pow(trace, 1.0 / static_cast<double>(two_m));
}

DegenerateExtension make_degenerate_extension(const HypergraphPair& base,
                                              int k_prime) {
  base.validate();
  if (k_prime < 1) {
    throw ValidationError("make_degenerate_extension: k' must be >= 1");
  }
  const std::vector<Omega> support = base.support();
  if (support.empty()) {
    throw ValidationError("make_degenerate_extension: base has empty support");
  }
  // The construction needs a uniform even integer exponent split equally
  // between alpha and beta on every support cell.
  double s = -1.0;
  for (const Omega& w : support) {
    double a = 0.0, b = 0.0;
    if (auto it = base.alpha.find(w); it != base.alpha.end()) a = it->second;
    if (auto it = base.beta.find(w); it != base.beta.end()) b = it->second;
    if (std::abs(a - b) > 1e-9) {
      throw ValidationError(
          "make_degenerate_extension: base must weight alpha and beta equally "
          "on every cell");
    }
    const double total = a + b;
    if (s < 0.0) {
      s = total;
    } else if (std::abs(total - s) > 1e-9) {
      throw ValidationError(
          "make_degenerate_extension: base exponent sum must be constant on "
          "the support");
    }
  }
  const long rounded = std::lround(s);
  if (std::abs(s - static_cast<double>(rounded)) > 1e-9 || rounded < 2 ||
      rounded % 2 != 0) {
    throw ValidationError(
        "make_degenerate_extension: base parameter must be an even integer "
        ">= 2");
  }
  const int two_m = static_cast<int>(rounded);
  const int m = two_m / 2;

  const int new_size = static_cast<int>(support.size()) * two_m;
  DegenerateExtension out;
  out.base = base;
  HypergraphPair g;
  g.k = base.k + k_prime;
  g.dims = base.dims;
  g.dims.insert(g.dims.end(), static_cast<std::size_t>(k_prime), new_size);

  for (std::size_t psi_index = 0; psi_index < support.size(); ++psi_index) {
    const Omega& psi = support[psi_index];
    for (int i = 1; i <= two_m; ++i) {
      const int fresh = static_cast<int>(psi_index) * two_m + (i - 1);
      Omega cell = psi;
      cell.insert(cell.end(), static_cast<std::size_t>(k_prime), fresh);
      if (i <= m) {
        g.alpha[cell] = 1.0;
      } else {
        g.beta[cell] = 1.0;
      }
    }
  }
  g.validate();
  out.pair = std::move(g);
  for (int j = 0; j < k_prime; ++j) out.new_axes.push_back(base.k + j);
  return out;
}

}  // namespace hypernorm
