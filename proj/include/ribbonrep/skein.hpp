#pragma once

// The closed coefficient formulas behind the involutions: fusion and
// tetrahedron coefficients, the half-twist monomial, vertex typing along a
// cycle with its crossing exponent, the longitude coefficient delta_j(lambda)
// and the basis rescaling g(j).
//
// delta factors as  (pure phase) * g(j) / g(lambda.j),  where the phase is
// +/- a power of A.  Phases are tracked as exponents of A modulo 4(k+2)
// (-1 = A^{2(k+2)}), which turns the involution, cocycle and commutation
// identities into integer congruences.

#include <stdexcept>

#include "ribbonrep/coloring.hpp"
#include "ribbonrep/cyclotomic.hpp"
#include "ribbonrep/ribbon_graph.hpp"

namespace ribbonrep {

struct NotAdmissible : std::runtime_error {
  NotAdmissible(int a, int b, int c)
      : std::runtime_error("triple (" + std::to_string(a) + "," +
                           std::to_string(b) + "," + std::to_string(c) +
                           ") is not admissible") {}
};

struct InternalColors {
  int i, j, k_int;
};

inline InternalColors internal_colors(int a, int b, int c) {
  return {(-a + b + c) / 2, (a - b + c) / 2, (a + b - c) / 2};
}

// <a,b,c> = (-1)^{i+j+k} [i+j+k+1]! [i]! [j]! [k]! / ([i+j]! [j+k]! [k+i]!)
// with i+j = c, j+k = a, k+i = b.
inline CycNum fusion_coeff(const Ring& ring, int a, int b, int c) {
  const int k = ring->level;
  if (!is_admissible(a, b, c, k)) throw NotAdmissible(a, b, c);
  auto [i, j, t] = internal_colors(a, b, c);
  CycNum v = quantum_factorial(ring, i + j + t + 1) *
             quantum_factorial(ring, i) * quantum_factorial(ring, j) *
             quantum_factorial(ring, t) * inv_quantum_factorial(ring, c) *
             inv_quantum_factorial(ring, a) * inv_quantum_factorial(ring, b);
  return ((i + j + t) % 2 != 0) ? -v : v;
}

// Tetrahedron coefficient <a b c; d e f>.  The four vertex triples
// (a,b,c), (a,e,f), (d,b,f), (d,e,c) must be admissible.
inline CycNum tetrahedron(const Ring& ring, int a, int b, int c, int d, int e,
                          int f) {
  const int k = ring->level;
  for (auto [x, y, z] : {std::array<int, 3>{a, b, c}, {a, e, f}, {d, b, f},
                         {d, e, c}})
    if (!is_admissible(x, y, z, k)) throw NotAdmissible(x, y, z);

  const int a1 = (a + b + c) / 2, b1 = (b + c + e + f) / 2;
  const int a2 = (b + d + f) / 2, b2 = (a + b + d + e) / 2;
  const int a3 = (c + d + e) / 2, b3 = (a + c + d + f) / 2;
  const int a4 = (a + e + f) / 2;
  const int lo = std::max({a1, a2, a3, a4});
  const int hi = std::min({b1, b2, b3});

  CycNum sum = CycNum::integer(ring, 0);
  for (int z = lo; z <= hi; ++z) {
    if (z + 1 > k + 1) continue;  // [z+1]! contains [k+2] = 0
    CycNum term = quantum_factorial(ring, z + 1);
    for (int bi : {b1, b2, b3}) term = term * inv_quantum_factorial(ring, bi - z);
    for (int aj : {a1, a2, a3, a4})
      term = term * inv_quantum_factorial(ring, z - aj);
    if (z % 2 != 0) term = -term;
    sum = sum + term;
  }
  CycNum pre = CycNum::integer(ring, 1);
  for (int bi : {b1, b2, b3})
    for (int aj : {a1, a2, a3, a4})
      pre = pre * quantum_factorial(ring, bi - aj);
  for (int x : {a, b, c, d, e, f}) pre = pre * inv_quantum_factorial(ring, x);
  return pre * sum;
}

// Half twist coefficient delta(c;a,b) = (-1)^{k_int} A^{ij - k_int(i+j+k_int+2)}
// with the internal colors of (a,b,c); always +/- a power of A.
inline CycNum half_twist(const Ring& ring, int c, int a, int b) {
  if (!is_admissible(a, b, c, ring->level)) throw NotAdmissible(a, b, c);
  auto [i, j, t] = internal_colors(a, b, c);
  long long e = static_cast<long long>(i) * j -
                static_cast<long long>(t) * (i + j + t + 2);
  CycNum v = CycNum::a_power(ring, e);
  return (t % 2 != 0) ? -v : v;
}

// ---------------------------------------------------------------------------
// Vertex typing along a traversed cycle.
//
// The k-colored pushed-off copy of the cycle rounds each vertex on the side
// fixed by the push-off rule.  With the left-hand push-off it crosses the
// third edge exactly when the counterclockwise ribbon order at the vertex is
// (incoming, outgoing, third); such vertices are type II and contribute the
// crossing phase A^{(a-b)(k+2)}, all others are type I.

enum class PushOff { left, right };

struct VertexType {
  enum Kind { I, II } kind = I;
  int a = 0;  // color of the incoming cycle edge
  int b = 0;  // color of the outgoing cycle edge
  int c = 0;  // color of the third edge
  int epsilon = 0;  // 0 for type I, a-b for type II
};

inline bool ccw_order_is(const RibbonGraph& g, int vertex, int h_first,
                         int h_second, int h_third) {
  const auto& hs = g.vertices()[vertex].half_edges;
  int p0 = -1;
  for (int i = 0; i < 3; ++i)
    if (hs[i] == h_first) p0 = i;
  return hs[(p0 + 1) % 3] == h_second && hs[(p0 + 2) % 3] == h_third;
}

inline std::vector<std::vector<VertexType>> vertex_types(
    const RibbonGraph& g, const EdgeClassification& cls, const Coloring& j,
    PushOff side = PushOff::left) {
  std::vector<std::vector<VertexType>> out;
  for (const auto& walk : cls.walks) {
    std::vector<VertexType> types;
    for (std::size_t s = 0; s < walk.size(); ++s) {
      const WalkStep& st = walk[s];
      const WalkStep& next = walk[(s + 1) % walk.size()];
      VertexType vt;
      vt.a = j[st.edge];
      vt.b = j[next.edge];
      vt.c = j[st.third_edge];
      bool crossing =
          (side == PushOff::left)
              ? ccw_order_is(g, st.vertex, st.half_in, st.half_out,
                             st.third_half)
              : ccw_order_is(g, st.vertex, st.half_in, st.third_half,
                             st.half_out);
      vt.kind = crossing ? VertexType::II : VertexType::I;
      vt.epsilon = crossing ? vt.a - vt.b : 0;
      types.push_back(vt);
    }
    out.push_back(std::move(types));
  }
  return out;
}

// ---------------------------------------------------------------------------
// delta_j(lambda)

// Pure-phase part of delta as an exponent of A modulo 4(k+2); the remaining
// factor is exactly g(j)/g(lambda.j).
struct DeltaPhase {
  int a_exp = 0;  // delta = A^{a_exp} * g(j)/g(lambda.j)
};

inline int phase_mod(const Ring& ring, long long e) {
  int ord = ring->order;
  int r = static_cast<int>(e % ord);
  return r < 0 ? r + ord : r;
}

inline DeltaPhase delta_phase(const Ring& ring, const RibbonGraph& g,
                              const EdgeClassification& cls, const Coloring& j,
                              PushOff side = PushOff::left) {
  const int k = ring->level;
  long long n_lambda = 0;
  long long third_sum = 0;
  long long eps_sum = 0;
  auto types = vertex_types(g, cls, j, side);
  for (std::size_t w = 0; w < cls.walks.size(); ++w) {
    long long comp_third = 0;
    for (const auto& vt : types[w]) {
      comp_third += vt.c;
      eps_sum += vt.epsilon;
    }
    if (comp_third % 2 != 0)
      throw std::logic_error("odd third-color sum around a cycle component");
    third_sum += comp_third;
    n_lambda += types[w].size();
  }
  // (-1)^{k n_lambda + third_sum/2} * A^{(k+2) eps_sum}
  long long sign_exp = k * n_lambda + third_sum / 2;
  long long e = 2LL * (k + 2) * sign_exp + (k + 2) * eps_sum;
  return {phase_mod(ring, e)};
}

// g(j) = prod_edges 1/[j(f)]! * prod_vertices [j(v)+1]!
inline CycNum rescale_factor(const Ring& ring, const RibbonGraph& g,
                             const Coloring& j) {
  CycNum v = CycNum::integer(ring, 1);
  for (int e = 0; e < g.edge_count(); ++e)
    v = v * inv_quantum_factorial(ring, j[e]);
  for (int vx = 0; vx < g.vertex_count(); ++vx) {
    if (g.vertices()[vx].half_edges.size() != 3) continue;
    auto s = g.vertex_edge_slots(vx);
    int half = (j[s[0]] + j[s[1]] + j[s[2]]) / 2;
    v = v * quantum_factorial(ring, half + 1);
  }
  return v;
}

// 1/g(j), assembled from the same tables (no field inversion)
inline CycNum rescale_factor_inv(const Ring& ring, const RibbonGraph& g,
                                 const Coloring& j) {
  CycNum v = CycNum::integer(ring, 1);
  for (int e = 0; e < g.edge_count(); ++e)
    v = v * quantum_factorial(ring, j[e]);
  for (int vx = 0; vx < g.vertex_count(); ++vx) {
    if (g.vertices()[vx].half_edges.size() != 3) continue;
    auto s = g.vertex_edge_slots(vx);
    int half = (j[s[0]] + j[s[1]] + j[s[2]]) / 2;
    v = v * inv_quantum_factorial(ring, half + 1);
  }
  return v;
}

inline int vertex_halfsum(const RibbonGraph& g, const Coloring& j,
                          int vertex_idx) {
  auto s = g.vertex_edge_slots(vertex_idx);
  return (j[s[0]] + j[s[1]] + j[s[2]]) / 2;
}

// Direct evaluation of the closed product formula:
// delta_j(lambda) = (-1)^{k n_lambda + sum j'_l / 2}
//   prod_{f_l on lambda} A^{eps(v)(k+2)} [k-j(f_l)]!/[j(f_l)]!
//      [ (j(f_l)+j(f_{l+1})+j'_l)/2 + 1 ]! / [ (2k-j(f_l)-j(f_{l+1})+j'_l)/2 + 1 ]!
inline CycNum delta_coeff(const Ring& ring, const RibbonGraph& g,
                          const EdgeClassification& cls, const Coloring& j,
                          PushOff side = PushOff::left) {
  const int k = ring->level;
  auto types = vertex_types(g, cls, j, side);
  CycNum v = CycNum::integer(ring, 1);
  long long sign_exp = 0;
  for (std::size_t w = 0; w < cls.walks.size(); ++w) {
    const auto& walk = cls.walks[w];
    long long comp_third = 0;
    for (std::size_t s = 0; s < walk.size(); ++s) {
      const auto& vt = types[w][s];
      comp_third += vt.c;
      sign_exp += k;  // (-1)^{k n_lambda}
      v = v * CycNum::a_power(ring, static_cast<long long>(vt.epsilon) * (k + 2));
      v = v * quantum_factorial(ring, k - vt.a) *
          inv_quantum_factorial(ring, vt.a);
      int up = (vt.a + vt.b + vt.c) / 2 + 1;
      int dn = (2 * k - vt.a - vt.b + vt.c) / 2 + 1;
      v = v * quantum_factorial(ring, up) * inv_quantum_factorial(ring, dn);
    }
    if (comp_third % 2 != 0)
      throw std::logic_error("odd third-color sum around a cycle component");
    sign_exp += comp_third / 2;
  }
  if (sign_exp % 2 != 0) v = -v;
  return v;
}

inline CycNum delta_coeff(const Ring& ring, const RibbonGraph& g,
                          const CycleClass& lambda, const Coloring& j,
                          PushOff side = PushOff::left, bool reverse = false) {
  return delta_coeff(ring, g, classify_edges(g, lambda, reverse), j, side);
}

}  // namespace ribbonrep
