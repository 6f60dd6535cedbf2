#include "hypernorm/isomorphism.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>

#include "hypernorm/errors.hpp"

namespace hypernorm {

namespace {

constexpr double kValueTol = 1e-9;

bool close(double a, double b) { return std::abs(a - b) <= kValueTol; }

// Quantized (alpha, beta) pair so profiles compare exactly.
using WeightKey = std::pair<std::int64_t, std::int64_t>;

std::int64_t quantize(double v) {
  return static_cast<std::int64_t>(std::llround(v / kValueTol));
}

// profile[i][u] = sorted multiset of quantized (alpha, beta) weights over
// the support cells through vertex u on axis i.
std::vector<std::vector<std::vector<WeightKey>>> vertex_profiles(
    const HypergraphPair& h) {
  std::vector<std::vector<std::vector<WeightKey>>> profile(
      static_cast<std::size_t>(h.k));
  for (int i = 0; i < h.k; ++i) {
    profile[static_cast<std::size_t>(i)].resize(
        static_cast<std::size_t>(h.dims[static_cast<std::size_t>(i)]));
  }
  for (const Omega& w : h.support()) {
    double a = 0.0, b = 0.0;
    if (auto it = h.alpha.find(w); it != h.alpha.end()) a = it->second;
    if (auto it = h.beta.find(w); it != h.beta.end()) b = it->second;
    const WeightKey key{quantize(a), quantize(b)};
    for (int i = 0; i < h.k; ++i) {
      profile[static_cast<std::size_t>(i)]
             [static_cast<std::size_t>(w[static_cast<std::size_t>(i)])]
                 .push_back(key);
    }
  }
  for (auto& axis : profile) {
    for (auto& p : axis) std::sort(p.begin(), p.end());
  }
  return profile;
}

struct SearchState {
  const HypergraphPair* a = nullptr;
  const HypergraphPair* b = nullptr;
  std::vector<std::vector<int>> maps;        // maps[i][u] = image or -1
  std::vector<std::vector<char>> used;       // used[i][w] image taken
  std::vector<std::vector<std::vector<WeightKey>>> prof_a, prof_b;
  std::vector<Omega> support_a;
};

// Check every support cell of A whose vertices are all mapped: its image
// must carry identical weights in B.
bool partial_consistent(const SearchState& st) {
  const HypergraphPair& a = *st.a;
  const HypergraphPair& b = *st.b;
  Omega image(static_cast<std::size_t>(a.k));
  for (const Omega& w : st.support_a) {
    bool complete = true;
    for (int i = 0; i < a.k && complete; ++i) {
      const int img = st.maps[static_cast<std::size_t>(i)]
                             [static_cast<std::size_t>(
                                 w[static_cast<std::size_t>(i)])];
      if (img < 0) {
        complete = false;
      } else {
        image[static_cast<std::size_t>(i)] = img;
      }
    }
    if (!complete) continue;
    double aa = 0.0, ab = 0.0, ba = 0.0, bb = 0.0;
    if (auto it = a.alpha.find(w); it != a.alpha.end()) aa = it->second;
    if (auto it = a.beta.find(w); it != a.beta.end()) ab = it->second;
    if (auto it = b.alpha.find(image); it != b.alpha.end()) ba = it->second;
    if (auto it = b.beta.find(image); it != b.beta.end()) bb = it->second;
    if (!close(aa, ba) || !close(ab, bb)) return false;
  }
  return true;
}

bool assign(SearchState& st, int axis, int vertex) {
  const HypergraphPair& a = *st.a;
  if (axis == a.k) return true;
  if (vertex == a.dims[static_cast<std::size_t>(axis)]) {
    return assign(st, axis + 1, 0);
  }
  const auto& profile_here =
      st.prof_a[static_cast<std::size_t>(axis)][static_cast<std::size_t>(vertex)];
  for (int img = 0; img < a.dims[static_cast<std::size_t>(axis)]; ++img) {
    if (st.used[static_cast<std::size_t>(axis)][static_cast<std::size_t>(img)]) {
      continue;
    }
    if (st.prof_b[static_cast<std::size_t>(axis)]
                 [static_cast<std::size_t>(img)] != profile_here) {
      continue;
    }
    st.maps[static_cast<std::size_t>(axis)][static_cast<std::size_t>(vertex)] =
        img;
    st.used[static_cast<std::size_t>(axis)][static_cast<std::size_t>(img)] = 1;
    if (partial_consistent(st) && assign(st, axis, vertex + 1)) return true;
    st.maps[static_cast<std::size_t>(axis)][static_cast<std::size_t>(vertex)] =
        -1;
    st.used[static_cast<std::size_t>(axis)][static_cast<std::size_t>(img)] = 0;
  }
  return false;
}

// Union-find over flat vertex ids.
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x != y) parent[static_cast<std::size_t>(std::max(x, y))] = std::min(x, y);
  }
};

}  // namespace

std::optional<IsomorphismWitness> find_isomorphism(const HypergraphPair& a,
                                                   const HypergraphPair& b) {
  a.validate();
  b.validate();
  if (a.k != b.k || a.dims != b.dims) return std::nullopt;
  if (a.alpha.size() != b.alpha.size() || a.beta.size() != b.beta.size()) {
    return std::nullopt;
  }

  SearchState st;
  st.a = &a;
  st.b = &b;
  st.prof_a = vertex_profiles(a);
  st.prof_b = vertex_profiles(b);
  // Axis-wise profile multisets must agree before any search.
  for (int i = 0; i < a.k; ++i) {
    auto pa = st.prof_a[static_cast<std::size_t>(i)];
    auto pb = st.prof_b[static_cast<std::size_t>(i)];
    std::sort(pa.begin(), pa.end());
    std::sort(pb.begin(), pb.end());
    if (pa != pb) return std::nullopt;
  }
  st.support_a = a.support();
  st.maps.assign(static_cast<std::size_t>(a.k), {});
  st.used.assign(static_cast<std::size_t>(a.k), {});
  for (int i = 0; i < a.k; ++i) {
    st.maps[static_cast<std::size_t>(i)].assign(
        static_cast<std::size_t>(a.dims[static_cast<std::size_t>(i)]), -1);
    st.used[static_cast<std::size_t>(i)].assign(
        static_cast<std::size_t>(a.dims[static_cast<std::size_t>(i)]), 0);
  }
  if (!assign(st, 0, 0)) return std::nullopt;
  return IsomorphismWitness{st.maps};
}

bool isomorphic(const HypergraphPair& a, const HypergraphPair& b) {
  return find_isomorphism(a, b).has_value();
}

Factorization factorize(const HypergraphPair& h) {
  h.validate();
  std::vector<int> offsets(static_cast<std::size_t>(h.k), 0);
  int nvars = 0;
  for (int i = 0; i < h.k; ++i) {
    offsets[static_cast<std::size_t>(i)] = nvars;
    nvars += h.dims[static_cast<std::size_t>(i)];
  }

  const std::vector<Omega> support = h.support();
  UnionFind uf(nvars);
  std::vector<char> touched(static_cast<std::size_t>(nvars), 0);
  for (const Omega& w : support) {
    const int first = offsets[0] + w[0];
    for (int i = 0; i < h.k; ++i) {
      const int var = offsets[static_cast<std::size_t>(i)] +
                      w[static_cast<std::size_t>(i)];
      touched[static_cast<std::size_t>(var)] = 1;
      uf.unite(first, var);
    }
  }

  Factorization out;
  out.isolated_vertices.assign(static_cast<std::size_t>(h.k), {});
  for (int i = 0; i < h.k; ++i) {
    for (int v = 0; v < h.dims[static_cast<std::size_t>(i)]; ++v) {
      const int var = offsets[static_cast<std::size_t>(i)] + v;
      if (!touched[static_cast<std::size_t>(var)]) {
        out.isolated_vertices[static_cast<std::size_t>(i)].push_back(v);
      }
    }
  }

  // Components keyed by union-find root, ordered by smallest member id.
  std::map<int, std::vector<std::vector<int>>> members;  // root -> per-axis ids
  for (int i = 0; i < h.k; ++i) {
    for (int v = 0; v < h.dims[static_cast<std::size_t>(i)]; ++v) {
      const int var = offsets[static_cast<std::size_t>(i)] + v;
      if (!touched[static_cast<std::size_t>(var)]) continue;
      auto& axes = members[uf.find(var)];
      if (axes.empty()) axes.resize(static_cast<std::size_t>(h.k));
      axes[static_cast<std::size_t>(i)].push_back(v);
    }
  }

  for (auto& [root, axes] : members) {
    // Local reindex: vertex -> position within the component, per axis.
    std::vector<std::map<int, int>> local(static_cast<std::size_t>(h.k));
    std::vector<int> dims(static_cast<std::size_t>(h.k), 0);
    for (int i = 0; i < h.k; ++i) {
      for (std::size_t j = 0; j < axes[static_cast<std::size_t>(i)].size(); ++j) {
        local[static_cast<std::size_t>(i)]
             [axes[static_cast<std::size_t>(i)][j]] = static_cast<int>(j);
      }
      dims[static_cast<std::size_t>(i)] =
          static_cast<int>(axes[static_cast<std::size_t>(i)].size());
    }
    HypergraphPair comp = make_zero_pair(h.k, dims);
    for (const Omega& w : support) {
      const int var = offsets[0] + w[0];
      if (uf.find(var) != root) continue;
      Omega cell(static_cast<std::size_t>(h.k));
      for (int i = 0; i < h.k; ++i) {
        cell[static_cast<std::size_t>(i)] =
            local[static_cast<std::size_t>(i)].at(w[static_cast<std::size_t>(i)]);
      }
      if (auto it = h.alpha.find(w); it != h.alpha.end()) {
        comp.alpha[cell] = it->second;
      }
      if (auto it = h.beta.find(w); it != h.beta.end()) {
        comp.beta[cell] = it->second;
      }
    }
    out.components.push_back(std::move(comp));
    out.component_vertices.push_back(axes);
  }
  return out;
}

MinimalityResult is_minimal(const HypergraphPair& h) {
  Factorization f = factorize(h);
  for (int i = 0; i < h.k; ++i) {
    if (!f.isolated_vertices[static_cast<std::size_t>(i)].empty()) {
      return {false, "axis " + std::to_string(i) + " vertex " +
                         std::to_string(
                             f.isolated_vertices[static_cast<std::size_t>(i)][0]) +
                         " is incident to no support cell"};
    }
  }
  if (f.components.empty()) {
    return {false, "empty support"};
  }
  // Group components into isomorphism classes and look for an odd class.
  std::vector<int> multiplicity;
  std::vector<const HypergraphPair*> representative;
  for (const HypergraphPair& comp : f.components) {
    bool matched = false;
    for (std::size_t c = 0; c < representative.size(); ++c) {
      if (isomorphic(comp, *representative[c])) {
        ++multiplicity[c];
        matched = true;
        break;
      }
    }
    if (!matched) {
      representative.push_back(&comp);
      multiplicity.push_back(1);
    }
  }
  for (int m : multiplicity) {
    if (m % 2 == 1) return {true, ""};
  }
  return {false,
          "every component isomorphism class has even multiplicity, so the "
          "pair splits as a doubled disjoint union"};
}

}  // namespace hypernorm
