#pragma once

// Ribbon unitrivalent graphs and the mod-2 lattice calculus attached to them:
// homology classes of cycles carried by the graph (longitudes), meridian
// classes modulo the pants relations, their pairings, and the boundary
// subgroup.  Canonical representatives are fixed by Gaussian elimination over
// Z/2 with a chosen edge ordering so every downstream phase is deterministic.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ribbonrep {

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& w) : std::runtime_error(w) {}
};
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& w) : std::runtime_error(w) {}
};
struct InputNotInLattice : std::runtime_error {
  explicit InputNotInLattice(const std::string& w) : std::runtime_error(w) {}
};

using BitVec = std::vector<std::uint8_t>;

inline BitVec bitvec_xor(BitVec a, const BitVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
  return a;
}

// Row-echelon basis over F2 with a fixed pivot scan order.
class F2Echelon {
 public:
  explicit F2Echelon(std::size_t width, bool descending = false)
      : width_(width), descending_(descending) {}

  // Reduces v against the basis in place; returns true if v reduced to zero.
  bool reduce(BitVec& v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (v[pivots_[i]]) v = bitvec_xor(std::move(v), rows_[i]);
    return std::all_of(v.begin(), v.end(), [](std::uint8_t b) { return !b; });
  }

  void insert(BitVec v) {
    if (reduce(v)) return;
    std::size_t p = pivot_of(v);
    // back-substitute to keep rows fully reduced
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (rows_[i][p]) rows_[i] = bitvec_xor(std::move(rows_[i]), v);
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
  }

  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  std::size_t pivot_of(const BitVec& v) const {
    if (!descending_) {
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i]) return i;
    } else {
      for (std::size_t i = v.size(); i-- > 0;)
        if (v[i]) return i;
    }
    throw std::logic_error("pivot of zero vector");
  }

  std::size_t width_;
  bool descending_;
  std::vector<BitVec> rows_;
  std::vector<std::size_t> pivots_;
};

// An element of the meridian group: canonical 0/1 vector over all edges,
// reduced modulo 2*Lambda_0 and the pants relations.
struct MeridianClass {
  BitVec coeffs;
  bool operator==(const MeridianClass& o) const { return coeffs == o.coeffs; }
  bool is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(),
                       [](std::uint8_t b) { return !b; });
  }
};

// A mod-2 cycle carried by the graph: 0/1 vector over edges, supported away
// from boundary edges, with even incidence at every trivalent vertex (a loop
// counts its vertex twice).  The 0/1 support is itself the canonical
// representative of the class in H_1(Gamma; Z/2).
struct CycleClass {
  BitVec coeffs;
  bool operator==(const CycleClass& o) const { return coeffs == o.coeffs; }
  bool is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(),
                       [](std::uint8_t b) { return !b; });
  }
};

enum class Rebase { ascending, descending };

class RibbonGraph {
 public:
  struct Vertex {
    int id = 0;
    std::vector<int> half_edges;  // counterclockwise ribbon order
  };
  struct Edge {
    int id = 0;
    std::array<int, 2> half_edges{};
  };

  RibbonGraph(int level, std::vector<Vertex> vertices, std::vector<Edge> edges,
              std::map<int, int> boundary_colors)
      : level_(level),
        vertices_(std::move(vertices)),
        edges_(std::move(edges)),
        boundary_colors_(std::move(boundary_colors)) {
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return a.id < b.id; });
    validate_and_index();
  }

  int level() const { return level_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int trivalent_count() const { return static_cast<int>(trivalent_.size()); }
  int boundary_count() const { return static_cast<int>(univalent_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }

  int edge_index(int edge_id) const {
    auto it = edge_index_.find(edge_id);
    if (it == edge_index_.end())
      throw ValidationError("unknown edge id " + std::to_string(edge_id));
    return it->second;
  }
  int edge_id(int index) const { return edges_[index].id; }

  bool is_boundary_edge(int edge_idx) const { return boundary_flag_[edge_idx]; }
  int boundary_color(int edge_idx) const { return boundary_color_[edge_idx]; }
  const std::map<int, int>& boundary_colors() const { return boundary_colors_; }

  // endpoints as vertex indices (equal for a loop)
  std::pair<int, int> endpoints(int edge_idx) const {
    return {vertex_of_half_.at(edges_[edge_idx].half_edges[0]),
            vertex_of_half_.at(edges_[edge_idx].half_edges[1])};
  }
  int vertex_of_half_edge(int h) const { return vertex_of_half_.at(h); }
  int edge_of_half_edge(int h) const { return edge_of_half_.at(h); }

  // edge indices incident to a trivalent vertex, one per ribbon slot
  std::array<int, 3> vertex_edge_slots(int vertex_idx) const {
    const auto& hs = vertices_[vertex_idx].half_edges;
    return {edge_of_half_.at(hs[0]), edge_of_half_.at(hs[1]),
            edge_of_half_.at(hs[2])};
  }

  int genus() const {
    return edge_count() - vertex_count() + 1;
  }

  // ---- longitude side -----------------------------------------------------

  CycleClass make_cycle(BitVec coeffs) const {
    check_width(coeffs);
    for (std::size_t e = 0; e < coeffs.size(); ++e)
      if (coeffs[e] && boundary_flag_[e])
        throw InputNotInLattice("cycle supported on boundary edge f" +
                                std::to_string(edges_[e].id));
    for (int v : trivalent_) {
      int inc = 0;
      for (int h : vertices_[v].half_edges)
        if (coeffs[edge_of_half_.at(h)]) ++inc;  // a loop contributes twice
      if (inc % 2 != 0)
        throw InputNotInLattice("odd cycle incidence at vertex " +
                                std::to_string(vertices_[v].id));
    }
    return CycleClass{std::move(coeffs)};
  }

  CycleClass cycle_from_edge_ids(const std::vector<int>& ids) const {
    BitVec v(edges_.size(), 0);
    for (int id : ids) v[edge_index(id)] ^= 1;
    return make_cycle(std::move(v));
  }

  CycleClass cycle_sum(const CycleClass& a, const CycleClass& b) const {
    return CycleClass{bitvec_xor(a.coeffs, b.coeffs)};
  }

  // Fundamental cycles of a spanning tree, one per non-tree edge, in
  // ascending edge order.  |result| == genus().
  std::vector<CycleClass> cycle_basis() const {
    std::vector<int> parent_vertex(vertices_.size(), -1);
    std::vector<int> parent_edge(vertices_.size(), -1);
    std::vector<char> seen(vertices_.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    std::vector<char> tree_edge(edges_.size(), 0);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (std::size_t e = 0; e < edges_.size(); ++e) {
        auto [a, b] = endpoints(static_cast<int>(e));
        int other = -1;
        if (a == v && !seen[b]) other = b;
        else if (b == v && !seen[a]) other = a;
        if (other < 0) continue;
        seen[other] = 1;
        tree_edge[e] = 1;
        parent_vertex[other] = v;
        parent_edge[other] = static_cast<int>(e);
        stack.push_back(other);
      }
    }
    auto path_to_root = [&](int v) {
      BitVec p(edges_.size(), 0);
      while (parent_vertex[v] >= 0) {
        p[parent_edge[v]] ^= 1;
        v = parent_vertex[v];
      }
      return p;
    };
    std::vector<CycleClass> basis;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (tree_edge[e] || boundary_flag_[e]) continue;
      auto [a, b] = endpoints(static_cast<int>(e));
      BitVec c = bitvec_xor(path_to_root(a), path_to_root(b));
      c[e] ^= 1;
      basis.push_back(make_cycle(std::move(c)));
    }
    return basis;
  }

  // ---- meridian side ------------------------------------------------------

  // Reduce an integer vector over edges to the canonical representative of
  // its class modulo 2*Lambda_0 and the pants relations.
  MeridianClass meridian_canonicalize(const std::vector<long long>& raw,
                                      Rebase rebase = Rebase::ascending) const {
    if (raw.size() != edges_.size())
      throw InputNotInLattice("meridian vector has wrong length");
    BitVec v(edges_.size(), 0);
    for (std::size_t i = 0; i < raw.size(); ++i)
      v[i] = static_cast<std::uint8_t>(((raw[i] % 2) + 2) % 2);
    const F2Echelon& ech =
        (rebase == Rebase::ascending) ? pants_asc_ : pants_desc_;
    ech.reduce(v);
    return MeridianClass{std::move(v)};
  }

  MeridianClass meridian_from_edge_ids(const std::vector<int>& ids,
                                       Rebase rebase = Rebase::ascending) const {
    std::vector<long long> raw(edges_.size(), 0);
    for (int id : ids) raw[edge_index(id)] += 1;
    return meridian_canonicalize(raw, rebase);
  }

  MeridianClass meridian_sum(const MeridianClass& a, const MeridianClass& b,
                             Rebase rebase = Rebase::ascending) const {
    std::vector<long long> raw(edges_.size(), 0);
    for (std::size_t i = 0; i < raw.size(); ++i)
      raw[i] = a.coeffs[i] + b.coeffs[i];
    return meridian_canonicalize(raw, rebase);
  }

  int meridian_rank() const {  // dim of the meridian group: g + n' - 1
    return edge_count() - pants_asc_.rank();
  }
  int relation_rank() const { return pants_asc_.rank(); }

  // mod-2 pairing e_l . f_l' = delta_{l,l'}
  int pairing(const MeridianClass& mu, const CycleClass& lambda) const {
    int s = 0;
    for (std::size_t i = 0; i < mu.coeffs.size(); ++i)
      s ^= (mu.coeffs[i] & lambda.coeffs[i]);
    return s;
  }

  // geometric intersection number of the canonical representatives
  int geometric_intersection(const MeridianClass& mu,
                             const CycleClass& lambda) const {
    int s = 0;
    for (std::size_t i = 0; i < mu.coeffs.size(); ++i)
      s += (mu.coeffs[i] & lambda.coeffs[i]);
    return s;
  }

  // membership in the subgroup generated by boundary circles
  bool boundary_subgroup_contains(const MeridianClass& mu) const {
    BitVec v = mu.coeffs;
    return boundary_span_.reduce(v);
  }

  // scalar sign exponent sum(eps_l * j'_l) of a boundary meridian written in
  // boundary circles; only meaningful when boundary_subgroup_contains(mu).
  int boundary_color_pairing(const MeridianClass& mu) const {
    int s = 0;
    for (std::size_t i = 0; i < mu.coeffs.size(); ++i)
      if (mu.coeffs[i] && boundary_flag_[i]) s += boundary_color_[i];
    return s;
  }

  // ---- hashing / identity -------------------------------------------------

  std::string canonical_description() const {
    std::ostringstream os;
    os << "k=" << level_ << ";V:";
    for (const auto& v : vertices_) {
      os << v.id << "(";
      for (int h : v.half_edges) os << h << ",";
      os << ");";
    }
    os << "E:";
    for (const auto& e : edges_)
      os << e.id << "[" << e.half_edges[0] << "," << e.half_edges[1] << "];";
    os << "B:";
    for (const auto& [id, c] : boundary_colors_) os << id << "=" << c << ";";
    return os.str();
  }

  std::string hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canonical_description()) {
      h ^= c;
      h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
  }

 private:
  void check_width(const BitVec& v) const {
    if (v.size() != edges_.size())
      throw InputNotInLattice("vector has wrong length");
  }

  void validate_and_index() {
    if (level_ < 0) throw ValidationError("level k must be >= 0");
    // half-edge bookkeeping
    for (std::size_t vi = 0; vi < vertices_.size(); ++vi) {
      const auto& v = vertices_[vi];
      if (v.half_edges.size() != 1 && v.half_edges.size() != 3)
        throw ValidationError("vertex " + std::to_string(v.id) +
                              " is neither univalent nor trivalent");
      for (int h : v.half_edges) {
        if (!vertex_of_half_.emplace(h, static_cast<int>(vi)).second)
          throw ValidationError("half-edge " + std::to_string(h) +
                                " appears in two vertex slots");
      }
      (v.half_edges.size() == 3 ? trivalent_ : univalent_)
          .push_back(static_cast<int>(vi));
    }
    for (std::size_t ei = 0; ei < edges_.size(); ++ei) {
      const auto& e = edges_[ei];
      if (!edge_index_.emplace(e.id, static_cast<int>(ei)).second)
        throw ValidationError("duplicate edge id " + std::to_string(e.id));
      for (int h : e.half_edges) {
        if (!edge_of_half_.emplace(h, static_cast<int>(ei)).second)
          throw ValidationError("half-edge " + std::to_string(h) +
                                " used by two edges");
        if (!vertex_of_half_.count(h))
          throw ValidationError("half-edge " + std::to_string(h) +
                                " missing from every vertex");
      }
      if (e.half_edges[0] == e.half_edges[1])
        throw ValidationError("edge " + std::to_string(e.id) +
                              " repeats a half-edge");
    }
    if (vertex_of_half_.size() != edge_of_half_.size())
      throw ValidationError("half-edge sets of vertices and edges differ");
    if (trivalent_.empty())
      throw ValidationError("graph needs at least one trivalent vertex");

    // connectivity
    if (!vertices_.empty()) {
      std::vector<char> seen(vertices_.size(), 0);
      std::vector<int> stack{0};
      seen[0] = 1;
      int reached = 1;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int h : vertices_[v].half_edges) {
          const auto& e = edges_[edge_of_half_.at(h)];
          int h2 = e.half_edges[0] == h ? e.half_edges[1] : e.half_edges[0];
          int w = vertex_of_half_.at(h2);
          if (!seen[w]) {
            seen[w] = 1;
            ++reached;
            stack.push_back(w);
          }
        }
      }
      if (reached != static_cast<int>(vertices_.size()))
        throw ValidationError("graph is not connected");
    }

    // boundary edges and colors
    boundary_flag_.assign(edges_.size(), 0);
    boundary_color_.assign(edges_.size(), -1);
    for (std::size_t ei = 0; ei < edges_.size(); ++ei) {
      auto [a, b] = endpoints(static_cast<int>(ei));
      bool au = vertices_[a].half_edges.size() == 1;
      bool bu = vertices_[b].half_edges.size() == 1;
      if (au && bu)
        throw ValidationError("edge " + std::to_string(edges_[ei].id) +
                              " joins two univalent vertices");
      boundary_flag_[ei] = au || bu;
    }
    for (const auto& [id, color] : boundary_colors_) {
      int ei = edge_index(id);
      if (!boundary_flag_[ei])
        throw ValidationError("boundary color on internal edge f" +
                              std::to_string(id));
      if (color < 0 || color > level_)
        throw ValidationError("boundary color " + std::to_string(color) +
                              " out of range 0.." + std::to_string(level_));
      boundary_color_[ei] = color;
    }
    for (std::size_t ei = 0; ei < edges_.size(); ++ei)
      if (boundary_flag_[ei] && boundary_color_[ei] < 0)
        throw ValidationError("missing boundary color for edge f" +
                              std::to_string(edges_[ei].id));

    // pants relations: mod-2 vertex incidence rows (loops drop out)
    pants_asc_ = F2Echelon(edges_.size(), false);
    pants_desc_ = F2Echelon(edges_.size(), true);
    boundary_span_ = F2Echelon(edges_.size(), false);
    for (int v : trivalent_) {
      BitVec row(edges_.size(), 0);
      for (int h : vertices_[v].half_edges) row[edge_of_half_.at(h)] ^= 1;
      pants_asc_.insert(row);
      pants_desc_.insert(row);
      boundary_span_.insert(std::move(row));
    }
    for (std::size_t ei = 0; ei < edges_.size(); ++ei) {
      if (!boundary_flag_[ei]) continue;
      BitVec row(edges_.size(), 0);
      row[ei] = 1;
      boundary_span_.insert(std::move(row));
    }
  }

  int level_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::map<int, int> boundary_colors_;

  std::map<int, int> vertex_of_half_;
  std::map<int, int> edge_of_half_;
  std::map<int, int> edge_index_;
  std::vector<int> trivalent_;
  std::vector<int> univalent_;
  std::vector<std::uint8_t> boundary_flag_;
  std::vector<int> boundary_color_;

  F2Echelon pants_asc_{0}, pants_desc_{0}, boundary_span_{0};
};

// Literal parsing for CLI arguments: "f1+f4+f9" or "e2+e3".
inline std::vector<int> parse_edge_literal(const std::string& text,
                                           char prefix) {
  std::vector<int> ids;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '+') {
      ++i;
      continue;
    }
    if (text[i] != prefix)
      throw ParseError(std::string("expected '") + prefix + "' in literal: " +
                       text);
    ++i;
    std::size_t j = i;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
      ++j;
    if (j == i) throw ParseError("missing edge number in literal: " + text);
    ids.push_back(std::stoi(text.substr(i, j - i)));
    i = j;
  }
  if (ids.empty()) throw ParseError("empty literal");
  return ids;
}

}  // namespace ribbonrep
