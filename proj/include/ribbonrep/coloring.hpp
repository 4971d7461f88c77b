#pragma once

// k-admissible colorings of a ribbon unitrivalent graph: admissibility test,
// lexicographic enumeration (the global basis order), the H_1(Gamma;Z/2)
// action on colorings, edge classification around a cycle, and the cut
// decomposition of the graph along a cycle with a meridian.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ribbonrep/ribbon_graph.hpp"

namespace ribbonrep {

struct EmptyCycle : std::runtime_error {
  EmptyCycle() : std::runtime_error("operation needs a nonzero cycle") {}
};

using Coloring = std::vector<int>;  // colors in edge-index order

inline bool is_admissible(int a, int b, int c, int k) {
  if (a < 0 || b < 0 || c < 0 || a > k || b > k || c > k) return false;
  if ((a + b + c) % 2 != 0) return false;
  if (c < std::abs(a - b) || c > a + b) return false;
  return a + b + c <= 2 * k;
}

// A vertex with edge indices (e0,e1,e2); a loop appears as a repeated index
// and is checked with the doubled-color reading.
inline bool vertex_admissible(const std::array<int, 3>& slots,
                              const Coloring& colors, int k) {
  return is_admissible(colors[slots[0]], colors[slots[1]], colors[slots[2]],
                       k);
}

// All k-admissible colorings compatible with the boundary coloring, sorted
// lexicographically in edge-index order.  The order is the global basis
// order of the module.
inline std::vector<Coloring> enumerate_colorings(const RibbonGraph& g) {
  const int k = g.level();
  const int ne = g.edge_count();

  // per-vertex slot lists for pruning: a vertex is checkable once all of its
  // edges are assigned; partial parity/triangle pruning uses assigned prefix
  std::vector<std::array<int, 3>> tri;
  tri.reserve(g.trivalent_count());
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.vertices()[v].half_edges.size() == 3)
      tri.push_back(g.vertex_edge_slots(v));

  // vertices become fully assigned at the max edge index among their slots
  std::vector<std::vector<int>> ready_at(ne);
  for (std::size_t t = 0; t < tri.size(); ++t) {
    int m = std::max({tri[t][0], tri[t][1], tri[t][2]});
    ready_at[m].push_back(static_cast<int>(t));
  }

  std::vector<Coloring> out;
  Coloring colors(ne, -1);

  auto rec = [&](auto&& self, int e) -> void {
    if (e == ne) {
      out.push_back(colors);
      return;
    }
    int lo = 0, hi = k;
    if (g.is_boundary_edge(e)) lo = hi = g.boundary_color(e);
    for (int c = lo; c <= hi; ++c) {
      colors[e] = c;
      bool ok = true;
      for (int t : ready_at[e])
        if (!vertex_admissible(tri[t], colors, k)) {
          ok = false;
          break;
        }
      if (ok) self(self, e + 1);
    }
    colors[e] = -1;
  };
  rec(rec, 0);
  return out;
}

inline bool coloring_admissible(const RibbonGraph& g, const Coloring& c) {
  if (static_cast<int>(c.size()) != g.edge_count()) return false;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (c[e] < 0 || c[e] > g.level()) return false;
    if (g.is_boundary_edge(e) && c[e] != g.boundary_color(e)) return false;
  }
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.vertices()[v].half_edges.size() == 3 &&
        !vertex_admissible(g.vertex_edge_slots(v), c, g.level()))
      return false;
  return true;
}

// lambda . j : replace j_l by k - j_l on the cycle
inline Coloring act_cycle(const RibbonGraph& g, const CycleClass& lambda,
                          const Coloring& j) {
  Coloring r = j;
  for (std::size_t e = 0; e < lambda.coeffs.size(); ++e)
    if (lambda.coeffs[e]) r[e] = g.level() - r[e];
  return r;
}

// j_mu = sum of colors over the support of the canonical representative
inline int meridian_exponent(const MeridianClass& mu, const Coloring& j) {
  int s = 0;
  for (std::size_t e = 0; e < mu.coeffs.size(); ++e)
    if (mu.coeffs[e]) s += j[e];
  return s;
}

inline std::vector<Coloring> fixed_colorings(const RibbonGraph& g,
                                             const CycleClass& lambda,
                                             const std::vector<Coloring>& all) {
  std::vector<Coloring> out;
  for (const auto& j : all)
    if (act_cycle(g, lambda, j) == j) out.push_back(j);
  return out;
}

// One step of a traversal of a cycle component: travelling along edge
// `edge`, arriving at `vertex` through half-edge `half_in`, leaving through
// `half_out` onto the next cycle edge, past the remaining `third` edge.
struct WalkStep {
  int edge = -1;
  int vertex = -1;
  int half_in = -1;
  int half_out = -1;
  int third_edge = -1;
  int third_half = -1;
};

struct EdgeClassification {
  std::vector<int> on_cycle;   // edge indices, ascending
  std::vector<int> external;   // exactly one endpoint on the cycle
  std::vector<int> internal;   // off the cycle, all endpoints on it
  std::vector<std::vector<WalkStep>> walks;  // one per component
};

// Traversal rule: each component starts at its lowest-index edge, travelling
// from the vertex of its first stored half-edge toward the second; with
// `reverse` the start edge is walked the other way.  The support of a cycle
// class meets every vertex in 0 or 2 half-edges, so components are simple
// and vertex-disjoint.
inline EdgeClassification classify_edges(const RibbonGraph& g,
                                         const CycleClass& lambda,
                                         bool reverse = false) {
  if (lambda.is_zero()) throw EmptyCycle();
  const int ne = g.edge_count();
  EdgeClassification cls;

  std::vector<char> on(ne, 0);
  for (int e = 0; e < ne; ++e)
    if (lambda.coeffs[e]) {
      on[e] = 1;
      cls.on_cycle.push_back(e);
    }

  std::vector<char> vertex_on(g.vertex_count(), 0);
  for (int e : cls.on_cycle) {
    auto [a, b] = g.endpoints(e);
    vertex_on[a] = vertex_on[b] = 1;
  }
  for (int e = 0; e < ne; ++e) {
    if (on[e]) continue;
    auto [a, b] = g.endpoints(e);
    int cnt = vertex_on[a] + vertex_on[b];
    if (a == b) cnt = vertex_on[a] ? 2 : 0;  // loop: both endpoints coincide
    if (cnt == 2) cls.internal.push_back(e);
    else if (cnt == 1) cls.external.push_back(e);
  }

  // cycle half-edges at each vertex (exactly two where the cycle passes)
  std::vector<std::vector<int>> cyc_halves(g.vertex_count());
  for (int e : cls.on_cycle)
    for (int h : g.edges()[e].half_edges)
      cyc_halves[g.vertex_of_half_edge(h)].push_back(h);

  std::vector<char> visited(ne, 0);
  for (int start : cls.on_cycle) {
    if (visited[start]) continue;
    const auto& se = g.edges()[start];
    int h_from = reverse ? se.half_edges[1] : se.half_edges[0];
    int h_to = reverse ? se.half_edges[0] : se.half_edges[1];
    std::vector<WalkStep> walk;
    int edge = start;
    int arriving_half = h_to;
    (void)h_from;
    while (true) {
      visited[edge] = 1;
      WalkStep step;
      step.edge = edge;
      step.half_in = arriving_half;
      step.vertex = g.vertex_of_half_edge(arriving_half);
      const auto& pair = cyc_halves[step.vertex];
      step.half_out = (pair[0] == arriving_half) ? pair[1] : pair[0];
      for (int h : g.vertices()[step.vertex].half_edges)
        if (h != step.half_in && h != step.half_out) {
          step.third_half = h;
          step.third_edge = g.edge_of_half_edge(h);
        }
      walk.push_back(step);
      // move to the next edge through half_out
      const auto& oe = g.edges()[g.edge_of_half_edge(step.half_out)];
      edge = g.edge_of_half_edge(step.half_out);
      arriving_half =
          (oe.half_edges[0] == step.half_out) ? oe.half_edges[1]
                                              : oe.half_edges[0];
      if (edge == start &&
          ((reverse ? se.half_edges[0] : se.half_edges[1]) == arriving_half))
        break;
    }
    cls.walks.push_back(std::move(walk));
  }
  return cls;
}

// ---------------------------------------------------------------------------
// Graph decomposition along a cycle (with a meridian), for the trace
// propositions.  Pieces are lightweight counting graphs: cut ends become
// fresh univalent stubs.

// A partially colorable graph piece.  Edges carry a color source:
//   fixed     - the color is pinned (cycle edges at k/2, kept boundary colors)
//   assigned  - the color comes from an external assignment slot
//   free      - enumerated over 0..k
struct CountGraph {
  enum class Source { fixed, assigned, free_edge };
  struct CEdge {
    int orig_edge = -1;  // edge index in the parent graph
    Source source = Source::free_edge;
    int fixed_color = -1;
    int slot = -1;  // assignment slot id for `assigned`
  };
  std::vector<CEdge> edges;
  std::vector<std::array<int, 3>> vertices;  // trivalent triples, loops repeat
  int vertex_count = 0;                      // includes univalent stubs
  int slot_count = 0;

  int edge_count() const { return static_cast<int>(edges.size()); }
  // formal genus from E - V + 1 (graph need not be connected)
  int formal_genus() const { return edge_count() - vertex_count + 1; }

  // number of colorings given slot assignment, all vertices admissible
  long long count_colorings(int k, const std::vector<int>& slots) const {
    std::vector<int> colors(edges.size(), -1);
    std::vector<std::vector<int>> ready_at(edges.size());
    for (std::size_t t = 0; t < vertices.size(); ++t) {
      int m = std::max({vertices[t][0], vertices[t][1], vertices[t][2]});
      ready_at[m].push_back(static_cast<int>(t));
    }
    long long total = 0;
    auto rec = [&](auto&& self, std::size_t e) -> void {
      if (e == edges.size()) {
        ++total;
        return;
      }
      int lo = 0, hi = k;
      switch (edges[e].source) {
        case Source::fixed: lo = hi = edges[e].fixed_color; break;
        case Source::assigned: lo = hi = slots[edges[e].slot]; break;
        case Source::free_edge: break;
      }
      for (int c = lo; c <= hi; ++c) {
        if (c < 0 || c > k) continue;
        colors[e] = c;
        bool ok = true;
        for (int t : ready_at[e])
          if (!is_admissible(colors[vertices[t][0]], colors[vertices[t][1]],
                             colors[vertices[t][2]], k)) {
            ok = false;
            break;
          }
        if (ok) self(self, e + 1);
      }
      colors[e] = -1;
    };
    rec(rec, 0);
    return total;
  }
};

struct LambdaDecomposition {
  // gamma_lambda: the cycle, its internal edges, and every external edge cut
  // at its far end.  Cycle edges fixed at k/2 in the lambda-fixed counting;
  // external edges are assignment slots 0..|Ex|-1 in ext_order.
  CountGraph gamma_lambda;
  // gamma_prime: everything off the cycle except internal edges and boundary
  // external edges; E^t externals become stubs cut at the cycle end.
  CountGraph gamma_prime;
  // gamma_prime_mu: gamma_prime with the cut edges severed; each cut edge
  // becomes two stubs sharing one assignment slot.
  CountGraph gamma_prime_mu;

  std::vector<int> ext_boundary;      // E^u_lambda, edge indices
  std::vector<int> ext_trivalent;     // E^t_lambda, edge indices
  std::vector<int> other_boundary;    // complement of E^u_lambda in E^u
  std::vector<int> internal_edges;    // In_lambda
  std::vector<int> cut_edges;         // supp mu(lambda) inside gamma_prime
  BitVec mu_lambda_raw;               // eps_l (1 - eps'_l) over all edges

  int n1 = 0, n2 = 0, m = 0, m_prime = 0;
  int g1 = 0, g2 = 0;

  // slot layout of gamma_prime / gamma_prime_mu:
  //   slots [0, m)            colors on E^t_lambda stubs
  //   slots [m, m + m')       shared colors of cut-edge halves
  int prime_slots() const { return m + m_prime; }
};

// `mu_rep` is a chosen 0/1 representative of the meridian class; the
// decomposition identities hold for any fixed representative, and the
// worked example of the trace section uses the one written in the paper's
// own letters rather than the canonical reduction.
inline LambdaDecomposition decompose(const RibbonGraph& g,
                                     const CycleClass& lambda,
                                     const BitVec& mu_rep,
                                     bool reverse = false) {
  auto cls = classify_edges(g, lambda, reverse);
  LambdaDecomposition dec;
  const int ne = g.edge_count();

  std::vector<char> on(ne, 0), internal(ne, 0), external(ne, 0);
  for (int e : cls.on_cycle) on[e] = 1;
  for (int e : cls.internal) internal[e] = 1;
  for (int e : cls.external) external[e] = 1;
  dec.internal_edges = cls.internal;

  for (int e : cls.external)
    (g.is_boundary_edge(e) ? dec.ext_boundary : dec.ext_trivalent).push_back(e);
  for (int e = 0; e < ne; ++e)
    if (g.is_boundary_edge(e) && !external[e]) dec.other_boundary.push_back(e);

  dec.n1 = static_cast<int>(dec.ext_boundary.size());
  dec.n2 = static_cast<int>(dec.other_boundary.size());
  dec.m = static_cast<int>(dec.ext_trivalent.size());

  // mu(lambda) = sum eps_l (1 - eps'_l) e_l over the chosen representatives
  dec.mu_lambda_raw.assign(ne, 0);
  for (int e = 0; e < ne; ++e)
    dec.mu_lambda_raw[e] = static_cast<std::uint8_t>(mu_rep[e] && !on[e]);

  std::vector<char> vertex_on(g.vertex_count(), 0);
  for (int e : cls.on_cycle) {
    auto [a, b] = g.endpoints(e);
    vertex_on[a] = vertex_on[b] = 1;
  }

  // ---- gamma_lambda ----
  {
    CountGraph& cg = dec.gamma_lambda;
    std::vector<int> edge_slot(ne, -1);  // index into cg.edges
    // vertex ids: cycle vertices first, then stubs
    std::vector<int> vmap(g.vertex_count(), -1);
    int vc = 0;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (vertex_on[v]) vmap[v] = vc++;
    int slot = 0;
    auto add_edge = [&](int e, CountGraph::Source src, int fixed, int sl) {
      CountGraph::CEdge ce;
      ce.orig_edge = e;
      ce.source = src;
      ce.fixed_color = fixed;
      ce.slot = sl;
      edge_slot[e] = static_cast<int>(cg.edges.size());
      cg.edges.push_back(ce);
    };
    for (int e : cls.on_cycle)
      add_edge(e, CountGraph::Source::fixed, -2 /* set per count */, -1);
    for (int e : cls.internal)
      add_edge(e, CountGraph::Source::free_edge, -1, -1);
    for (int e : cls.external) {
      add_edge(e, CountGraph::Source::assigned, -1, slot++);
      vc += 1;  // fresh stub at the far end
    }
    cg.slot_count = slot;
    cg.vertex_count = vc;
    // trivalent vertices are exactly the cycle vertices
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (!vertex_on[v]) continue;
      auto slots = g.vertex_edge_slots(v);
      cg.vertices.push_back({edge_slot[slots[0]], edge_slot[slots[1]],
                             edge_slot[slots[2]]});
    }
    dec.g1 = cg.formal_genus();
  }

  // external edge assignment order: ext_boundary then ext_trivalent is NOT
  // the slot order above (cls.external is ascending edge index); keep the
  // ascending order as the canonical Ex slot order.
  // slots in gamma_lambda: position of e in cls.external.

  // ---- gamma_prime ----
  // Edges: everything off the cycle except internal edges and boundary
  // externals.  Vertices: every off-cycle trivalent vertex (all three of its
  // edges are kept), one stub per E^t_lambda cut end, one univalent end per
  // kept boundary edge.
  {
    CountGraph& cg = dec.gamma_prime;
    std::vector<int> edge_slot(ne, -1);
    int vc = 0;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (!vertex_on[v] && g.vertices()[v].half_edges.size() == 3) ++vc;
    int slot = 0;
    for (int e = 0; e < ne; ++e) {
      if (on[e] || internal[e]) continue;
      if (external[e] && g.is_boundary_edge(e)) continue;  // E^u_lambda
      CountGraph::CEdge ce;
      ce.orig_edge = e;
      if (external[e]) {
        ce.source = CountGraph::Source::assigned;
        ce.slot = slot++;  // E^t_lambda stub, cut at the cycle end
        vc += 1;
      } else if (g.is_boundary_edge(e)) {
        ce.source = CountGraph::Source::fixed;
        ce.fixed_color = g.boundary_color(e);
        vc += 1;  // its univalent end
      } else {
        ce.source = CountGraph::Source::free_edge;
      }
      edge_slot[e] = static_cast<int>(cg.edges.size());
      cg.edges.push_back(ce);
    }
    cg.slot_count = slot;
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (vertex_on[v] || g.vertices()[v].half_edges.size() != 3) continue;
      auto slots = g.vertex_edge_slots(v);
      cg.vertices.push_back({edge_slot[slots[0]], edge_slot[slots[1]],
                             edge_slot[slots[2]]});
    }
    cg.vertex_count = vc;
    dec.g2 = cg.formal_genus();
  }

  // Cut set: mu(lambda) support on interior edges of gamma_prime.  Entries
  // on edges that are already boundary edges of a piece (Ex_lambda or kept
  // boundary edges) produce no E^u_mu pair by definition.
  for (const auto& ce : dec.gamma_prime.edges)
    if (ce.source == CountGraph::Source::free_edge &&
        dec.mu_lambda_raw[ce.orig_edge])
      dec.cut_edges.push_back(ce.orig_edge);
  dec.m_prime = static_cast<int>(dec.cut_edges.size());

  // ---- gamma_prime_mu: sever each cut edge into two stubs sharing a slot --
  {
    CountGraph& cg = dec.gamma_prime_mu;
    cg = dec.gamma_prime;
    const std::size_t orig_edges = cg.edges.size();
    std::vector<int> cut_index(ne, -1);
    for (std::size_t i = 0; i < dec.cut_edges.size(); ++i)
      cut_index[dec.cut_edges[i]] = static_cast<int>(i);
    std::vector<int> second_half(orig_edges, -1);
    for (std::size_t ei = 0; ei < orig_edges; ++ei) {
      int ci = cut_index[cg.edges[ei].orig_edge];
      if (ci < 0) continue;
      int sl = dec.gamma_prime.slot_count + ci;
      CountGraph::CEdge half2 = cg.edges[ei];
      half2.source = CountGraph::Source::assigned;
      half2.slot = sl;
      second_half[ei] = static_cast<int>(cg.edges.size());
      cg.edges.push_back(half2);
      cg.edges[ei].source = CountGraph::Source::assigned;
      cg.edges[ei].slot = sl;
      cg.vertex_count += 2;  // two fresh cut ends
    }
    cg.slot_count = dec.gamma_prime.slot_count + dec.m_prime;
    // the first endpoint keeps the first half, the second endpoint (or the
    // second occurrence inside a loop triple) takes the second half
    std::vector<char> seen(orig_edges, 0);
    for (auto& tri : cg.vertices) {
      for (int& s : tri) {
        if (s < 0 || s >= static_cast<int>(orig_edges)) continue;
        if (second_half[s] < 0) continue;
        if (!seen[s]) seen[s] = 1;
        else s = second_half[s];
      }
    }
  }

  return dec;
}

inline LambdaDecomposition decompose(const RibbonGraph& g,
                                     const CycleClass& lambda,
                                     const MeridianClass& mu,
                                     bool reverse = false) {
  return decompose(g, lambda, mu.coeffs, reverse);
}

// 0/1 support vector from edge ids, for fixing a representative by hand
inline BitVec support_bits(const RibbonGraph& g, const std::vector<int>& ids) {
  BitVec v(g.edge_count(), 0);
  for (int id : ids) v[g.edge_index(id)] ^= 1;
  return v;
}

// number of lambda-fixed colorings of gamma_lambda given colors on Ex
// (slots follow cls.external order); k even required for a nonzero answer.
inline long long count_lambda_fixed(const RibbonGraph& g,
                                    const LambdaDecomposition& dec,
                                    const std::vector<int>& ext_colors) {
  const int k = g.level();
  if (k % 2 != 0) return 0;
  CountGraph cg = dec.gamma_lambda;
  for (auto& ce : cg.edges)
    if (ce.source == CountGraph::Source::fixed) ce.fixed_color = k / 2;
  return cg.count_colorings(k, ext_colors);
}

}  // namespace ribbonrep
