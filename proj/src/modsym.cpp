#include "eisen/modsym.hpp"

#include "eisen/error.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <mutex>

namespace eisen {

QPoint QPoint::of(std::int64_t num, std::int64_t den) {
  if (den == 0) {
    if (num == 0) throw BadInput("0/0 is not a point of P^1(Q)");
    return infinity();
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = gcd64(num, den);
  return {num / g, den / g};
}

QPoint Mat2::act(const QPoint& z) const {
  if (z.is_infinity()) return QPoint::of(a, c);
  return QPoint::of(a * z.num + b * z.den, c * z.num + d * z.den);
}

namespace {

Mat2 mul(const Mat2& x, const Mat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

std::vector<std::uint8_t> compute_cusp_tree(const Presentation& pres, const SquarefreeLevel& level,
                                            const std::vector<std::size_t>& head,
                                            const std::vector<std::size_t>& tail) {
  const std::size_t cusps = level.divisors().size();
  std::vector<std::vector<std::size_t>> adj(cusps);
  for (std::size_t k = 0; k < pres.free_symbol.size(); ++k) {
    if (head[k] == tail[k]) continue;
    adj[head[k]].push_back(k);
    adj[tail[k]].push_back(k);
  }
  std::vector<std::uint8_t> tree(pres.free_symbol.size(), 0);
  std::vector<bool> seen(cusps, false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    for (auto k : adj[u]) {
      const auto v = head[k] == u ? tail[k] : head[k];
      if (seen[v]) continue;
      seen[v] = true;
      tree[k] = 1;
      queue.push_back(v);
    }
  }
  if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
    throw InternalError("boundary map is not onto the degree-zero divisors");
  }
  return tree;
}

void boundary_ends(const Presentation& pres, const SquarefreeLevel& level, std::vector<std::int64_t>& cusps,
                   std::vector<std::size_t>& head, std::vector<std::size_t>& tail) {
  cusps = level.divisors();
  auto index_of = [&](std::int64_t g) {
    return static_cast<std::size_t>(std::lower_bound(cusps.begin(), cusps.end(), g) - cusps.begin());
  };
  const std::int64_t n = level.value();
  head.clear();
  tail.clear();
  for (auto s : pres.free_symbol) {
    const auto& x = pres.generators[static_cast<std::size_t>(s)];
    head.push_back(index_of(gcd64(x.c, n)));
    tail.push_back(index_of(gcd64(x.d, n)));
  }
}

}  // namespace

Presentation build_presentation(const SquarefreeLevel& level) {
  const P1List p1(level);
  const std::size_t psi = p1.size();
  Presentation pres;
  pres.level = level.value();
  pres.generators = p1.points();

  std::vector<std::int32_t> s_of(psi), tau_of(psi);
  for (std::size_t i = 0; i < psi; ++i) {
    const auto& x = p1[i];
    s_of[i] = static_cast<std::int32_t>(p1.index(x.d, -x.c));
    tau_of[i] = static_cast<std::int32_t>(p1.index(x.d, -x.c - x.d));
  }
  // Symbols fixed by S or tau are torsion, hence zero in the free quotient.
  std::vector<bool> zero(psi, false);
  for (std::size_t i = 0; i < psi; ++i) {
    if (s_of[i] == static_cast<std::int32_t>(i) || tau_of[i] == static_cast<std::int32_t>(i)) {
      zero[i] = true;
      zero[static_cast<std::size_t>(s_of[i])] = true;
    }
  }
  pres.alias_edge.assign(psi, -1);
  pres.alias_sign.assign(psi, 0);
  std::vector<std::int32_t> edge_rep;
  for (std::size_t i = 0; i < psi; ++i) {
    if (zero[i] || pres.alias_edge[i] >= 0) continue;
    const auto e = static_cast<std::int32_t>(edge_rep.size());
    edge_rep.push_back(static_cast<std::int32_t>(i));
    pres.alias_edge[i] = e;
    pres.alias_sign[i] = 1;
    pres.alias_edge[static_cast<std::size_t>(s_of[i])] = e;
    pres.alias_sign[static_cast<std::size_t>(s_of[i])] = -1;
  }
  pres.num_edges = static_cast<std::int32_t>(edge_rep.size());

  std::vector<std::int32_t> face_of(psi, -1);
  std::vector<std::array<std::int32_t, 3>> faces;
  for (std::size_t i = 0; i < psi; ++i) {
    if (face_of[i] >= 0 || tau_of[i] == static_cast<std::int32_t>(i)) continue;
    const auto f = static_cast<std::int32_t>(faces.size());
    const auto j = tau_of[i];
    const auto k = tau_of[static_cast<std::size_t>(j)];
    faces.push_back({static_cast<std::int32_t>(i), j, k});
    face_of[i] = face_of[static_cast<std::size_t>(j)] = face_of[static_cast<std::size_t>(k)] = f;
  }

  // Face graph: edge e joins the faces of its two symbols.
  const std::size_t num_edges = edge_rep.size();
  std::vector<std::int32_t> plus_face(num_edges), minus_face(num_edges);
  std::vector<std::vector<std::int32_t>> adj(faces.size());
  for (std::size_t e = 0; e < num_edges; ++e) {
    const auto r = static_cast<std::size_t>(edge_rep[e]);
    plus_face[e] = face_of[r];
    minus_face[e] = face_of[static_cast<std::size_t>(s_of[r])];
    if (plus_face[e] < 0 || minus_face[e] < 0) throw InternalError("nonzero symbol outside a face");
    if (plus_face[e] == minus_face[e]) continue;
    adj[static_cast<std::size_t>(plus_face[e])].push_back(static_cast<std::int32_t>(e));
    adj[static_cast<std::size_t>(minus_face[e])].push_back(static_cast<std::int32_t>(e));
  }
  std::vector<std::int32_t> parent_edge(faces.size(), -1);
  std::vector<bool> seen(faces.size(), false), tree_edge(num_edges, false);
  std::vector<std::int32_t> order;
  order.reserve(faces.size());
  for (std::size_t root = 0; root < faces.size(); ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::deque<std::int32_t> queue{static_cast<std::int32_t>(root)};
    while (!queue.empty()) {
      const auto f = queue.front();
      queue.pop_front();
      order.push_back(f);
      for (auto e : adj[static_cast<std::size_t>(f)]) {
        const auto other = plus_face[static_cast<std::size_t>(e)] == f ? minus_face[static_cast<std::size_t>(e)]
                                                                        : plus_face[static_cast<std::size_t>(e)];
        if (seen[static_cast<std::size_t>(other)]) continue;
        seen[static_cast<std::size_t>(other)] = true;
        parent_edge[static_cast<std::size_t>(other)] = e;
        tree_edge[static_cast<std::size_t>(e)] = true;
        queue.push_back(other);
      }
    }
  }

  // Leaves first: each face relation solves for the edge to its parent.
  pres.pivot_offset.push_back(0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto f = static_cast<std::size_t>(*it);
    const auto p = parent_edge[f];
    if (p < 0) continue;
    std::map<std::int32_t, int> coef;
    for (auto x : faces[f]) {
      const auto e = pres.alias_edge[static_cast<std::size_t>(x)];
      if (e >= 0) coef[e] += pres.alias_sign[static_cast<std::size_t>(x)];
    }
    const int sp = coef[p];
    if (sp != 1 && sp != -1) throw InternalError("tree edge with non-unit coefficient");
    pres.pivot_edge.push_back(p);
    for (auto [e, c] : coef) {
      if (e == p || c == 0) continue;
      pres.term_edge.push_back(e);
      pres.term_coef.push_back(static_cast<std::int8_t>(-sp * c));
    }
    pres.pivot_offset.push_back(static_cast<std::int32_t>(pres.term_edge.size()));
  }

  pres.edge_free.assign(num_edges, -1);
  for (std::size_t e = 0; e < num_edges; ++e) {
    if (tree_edge[e]) continue;
    pres.edge_free[e] = static_cast<std::int32_t>(pres.free_symbol.size());
    pres.free_symbol.push_back(edge_rep[e]);
  }

  std::vector<std::int64_t> cusps;
  std::vector<std::size_t> head, tail;
  boundary_ends(pres, level, cusps, head, tail);
  pres.cusp_tree = compute_cusp_tree(pres, level, head, tail);
  return pres;
}

ModularSymbolSpace::ModularSymbolSpace(Presentation pres)
    : level_(factor_squarefree(pres.level)), pres_(std::move(pres)), p1_(level_) {
  if (pres_.generators != p1_.points()) throw CacheError("generator list does not match P^1 enumeration");
  boundary_ends(pres_, level_, cusps_, free_head_, free_tail_);
  const std::size_t n = dimension();
  if (pres_.cusp_tree.size() != n) throw CacheError("cusp tree size mismatch");

  // Paths from the root cusp to every cusp through tree edges.
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> path(cusps_.size());
  std::vector<bool> reached(cusps_.size(), false);
  reached[0] = true;
  std::size_t tree_edges = 0;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t k = 0; k < n; ++k) {
      if (!pres_.cusp_tree[k]) continue;
      const auto h = free_head_[k], t = free_tail_[k];
      if (reached[t] && !reached[h]) {
        path[h] = path[t];
        path[h].emplace_back(k, 1);
      } else if (reached[h] && !reached[t]) {
        path[t] = path[h];
        path[t].emplace_back(k, -1);
      } else {
        continue;
      }
      reached[h] = reached[t] = true;
      ++tree_edges;
      progress = true;
    }
  }
  if (tree_edges + 1 != cusps_.size()) throw CacheError("cusp tree is not a spanning tree");

  coord_of_free_.assign(n, -1);
  for (std::size_t k = 0; k < n; ++k) {
    if (pres_.cusp_tree[k]) continue;
    coord_of_free_[k] = static_cast<std::int64_t>(cusp_coord_of_.size());
    cusp_coord_of_.push_back(k);
    std::map<std::size_t, std::int64_t> v;
    v[k] += 1;
    for (auto [e, c] : path[free_head_[k]]) v[e] -= c;
    for (auto [e, c] : path[free_tail_[k]]) v[e] += c;
    std::vector<std::pair<std::size_t, std::int64_t>> sparse;
    ZVec dense(n);
    for (auto [e, c] : v) {
      if (c == 0) continue;
      sparse.emplace_back(e, c);
      dense[e] = c;
    }
    cuspidal_sparse_.push_back(std::move(sparse));
    cuspidal_basis_.push_back(std::move(dense));
  }
}

std::size_t ModularSymbolSpace::cusp_index(std::int64_t divisor) const {
  auto it = std::lower_bound(cusps_.begin(), cusps_.end(), divisor);
  if (it == cusps_.end() || *it != divisor) throw BadDivisor(std::to_string(divisor) + " does not divide the level");
  return static_cast<std::size_t>(it - cusps_.begin());
}

std::vector<P1Element> ModularSymbolSpace::quotient_basis() const {
  std::vector<P1Element> out;
  for (auto s : pres_.free_symbol) out.push_back(pres_.generators[static_cast<std::size_t>(s)]);
  return out;
}

std::vector<std::int64_t> ModularSymbolSpace::push_down(std::vector<std::int64_t> data, std::size_t width) const {
  const std::size_t psi = pres_.generators.size();
  if (data.size() != psi * width) throw InternalError("push_down: wrong upstairs length");
  std::vector<std::int64_t> edge(static_cast<std::size_t>(pres_.num_edges) * width, 0);
  for (std::size_t i = 0; i < psi; ++i) {
    const auto e = pres_.alias_edge[i];
    if (e < 0) continue;
    const std::int64_t s = pres_.alias_sign[i];
    const std::int64_t* src = &data[i * width];
    std::int64_t* dst = &edge[static_cast<std::size_t>(e) * width];
    for (std::size_t w = 0; w < width; ++w) dst[w] += s * src[w];
  }
  for (std::size_t k = pres_.pivot_edge.size(); k-- > 0;) {
    const std::int64_t* src = &edge[static_cast<std::size_t>(pres_.pivot_edge[k]) * width];
    bool nonzero = false;
    for (std::size_t w = 0; w < width; ++w) nonzero = nonzero || src[w] != 0;
    if (!nonzero) continue;
    for (auto t = pres_.pivot_offset[k]; t < pres_.pivot_offset[k + 1]; ++t) {
      const std::int64_t c = pres_.term_coef[static_cast<std::size_t>(t)];
      std::int64_t* dst = &edge[static_cast<std::size_t>(pres_.term_edge[static_cast<std::size_t>(t)]) * width];
      for (std::size_t w = 0; w < width; ++w) dst[w] += c * src[w];
    }
  }
  const std::size_t n = dimension();
  std::vector<std::int64_t> out(n * width);
  for (std::size_t k = 0; k < n; ++k) {
    const auto e = pres_.alias_edge[static_cast<std::size_t>(pres_.free_symbol[k])];
    std::copy_n(&edge[static_cast<std::size_t>(e) * width], width, &out[k * width]);
  }
  return out;
}

ZVec ModularSymbolSpace::push_down_exact(const std::vector<std::int64_t>& upstairs) const {
  const auto v = push_down(upstairs, 1);
  ZVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = static_cast<long>(v[i]);
  return out;
}

ZVec ModularSymbolSpace::generator_image(std::size_t symbol) const {
  std::vector<std::int64_t> up(pres_.generators.size(), 0);
  up.at(symbol) = 1;
  return push_down_exact(up);
}

ZVec ModularSymbolSpace::boundary(const ZVec& v) const {
  ZVec out(cusps_.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    out[free_head_[k]] += v[k];
    out[free_tail_[k]] -= v[k];
  }
  return out;
}

ZMatrix ModularSymbolSpace::boundary_matrix() const {
  ZMatrix m(dimension(), cusps_.size());
  for (std::size_t k = 0; k < dimension(); ++k) {
    m.at(k, free_head_[k]) += 1;
    m.at(k, free_tail_[k]) -= 1;
  }
  return m;
}

ZVec ModularSymbolSpace::cuspidal_coordinates(const ZVec& v) const {
  if (!is_cuspidal(v)) throw InternalError("vector is not cuspidal");
  ZVec out(cusp_coord_of_.size());
  for (std::size_t i = 0; i < cusp_coord_of_.size(); ++i) out[i] = v[cusp_coord_of_[i]];
  return out;
}

bool ModularSymbolSpace::is_cuspidal(const ZVec& v) const {
  const auto b = boundary(v);
  return std::all_of(b.begin(), b.end(), [](const BigInt& x) { return x == 0; });
}

void ModularSymbolSpace::path_symbols(const QPoint& from, const QPoint& to,
                                      const std::function<void(std::int64_t, std::int64_t)>& emit) const {
  const std::int64_t inf_symbol = p1_.index(0, 1);
  auto from_zero = [&](const QPoint& x, std::int64_t sign) {
    if (x.is_infinity()) {
      emit(inf_symbol, sign);
      return;
    }
    if (x.num == 0) return;
    std::int64_t p2 = 0, q2 = 1, p1v = 1, q1 = 0;
    emit(inf_symbol, sign);
    std::int64_t a = x.num, b = x.den;
    while (b != 0) {
      std::int64_t t = a / b;
      if ((a % b != 0) && ((a < 0) != (b < 0))) --t;
      const std::int64_t p = t * p1v + p2;
      const std::int64_t q = t * q1 + q2;
      const std::int64_t det = p * q1 - p1v * q;
      emit(p1_.index(det == 1 ? q : -q, q1), sign);
      p2 = p1v;
      q2 = q1;
      p1v = p;
      q1 = q;
      const std::int64_t r = a - t * b;
      a = b;
      b = r;
    }
  };
  from_zero(to, 1);
  from_zero(from, -1);
}

ZVec ModularSymbolSpace::manin_trick(const QPoint& from, const QPoint& to) const {
  std::vector<std::int64_t> up(pres_.generators.size(), 0);
  path_symbols(from, to, [&](std::int64_t s, std::int64_t sign) { up[static_cast<std::size_t>(s)] += sign; });
  return push_down_exact(up);
}

Mat2 ModularSymbolSpace::lift(std::size_t symbol) const {
  const auto& x = pres_.generators.at(symbol);
  const std::int64_t n = level_.value();
  if (x.c == 0) return {1, 0, 0, 1};
  std::int64_t d = x.d;
  while (gcd64(x.c, d) != 1) d += n;
  std::int64_t s = 0, t = 0;
  ext_gcd(d, x.c, s, t);  // d*s + c*t = 1
  return {s, -t, x.c, d};
}

Mat2 ModularSymbolSpace::atkin_lehner_matrix(std::int64_t q) const {
  const std::int64_t n = level_.value();
  if (q <= 1 || n % q != 0) throw BadPrime(std::to_string(q) + " does not divide " + std::to_string(n));
  std::int64_t a = 0, y = 0;
  if (ext_gcd(q, n / q, a, y) != 1) throw NoWqMatrix("q and N/q are not coprime");
  const Mat2 w{q * a, -y, n, q};
  if (w.det() != q) throw NoWqMatrix("determinant check failed");
  return w;
}

void ModularSymbolSpace::validate_operator(const OperatorLabel& op) const {
  const std::int64_t n = level_.value();
  if (!is_prime(op.p)) throw BadPrime(std::to_string(op.p) + " is not prime");
  if (op.kind == OperatorLabel::Kind::T) {
    if (n % op.p == 0) throw BadPrime("T_" + std::to_string(op.p) + " needs a prime not dividing the level");
  } else if (n % op.p != 0) {
    throw BadPrime(op.str() + " needs a prime dividing the level");
  }
}

void ModularSymbolSpace::apply_upstairs(const OperatorLabel& op, HeckeRoute route, std::size_t symbol,
                                        std::int64_t coef, std::vector<std::int64_t>& acc) const {
  auto add = [&](std::int64_t s, std::int64_t sign) { acc[static_cast<std::size_t>(s)] += sign * coef; };
  const std::int64_t p = op.p;
  if (op.kind == OperatorLabel::Kind::W) {
    const Mat2 m = mul(atkin_lehner_matrix(p), lift(symbol));
    path_symbols(m.act(QPoint::of(0, 1)), m.act(QPoint::infinity()), add);
    return;
  }
  if (route == HeckeRoute::Heilbronn) {
    const auto& x = pres_.generators[symbol];
    const std::int64_t n = level_.value();
    for (const auto& h : heilbronn_merel(p)) {
      const auto idx = p1_.index_reduced((x.c * h.a + x.d * h.c) % n, (x.c * h.b + x.d * h.d) % n);
      if (idx >= 0) acc[static_cast<std::size_t>(idx)] += coef;
    }
    return;
  }
  const Mat2 g = lift(symbol);
  auto apply = [&](const Mat2& delta) {
    const Mat2 m = mul(delta, g);
    path_symbols(m.act(QPoint::of(0, 1)), m.act(QPoint::infinity()), add);
  };
  for (std::int64_t j = 0; j < p; ++j) apply({1, j, 0, p});
  if (op.kind == OperatorLabel::Kind::T) apply({p, 0, 0, 1});
}

HeckeMatrix ModularSymbolSpace::op_matrix(const OperatorLabel& op, HeckeRoute route) const {
  validate_operator(op);
  const std::size_t n = dimension();
  ZMatrix m(n, n);
  std::vector<std::int64_t> acc(pres_.generators.size());
  for (std::size_t k = 0; k < n; ++k) {
    std::fill(acc.begin(), acc.end(), 0);
    apply_upstairs(op, route, static_cast<std::size_t>(pres_.free_symbol[k]), 1, acc);
    const auto row = push_down(acc);
    for (std::size_t j = 0; j < n; ++j) m.at(k, j) = static_cast<long>(row[j]);
  }
  return {op, std::move(m)};
}

HeckeMatrix ModularSymbolSpace::hecke_T(std::int64_t r, HeckeRoute route) const {
  return op_matrix(OperatorLabel::T(r), route);
}

HeckeMatrix ModularSymbolSpace::hecke_U(std::int64_t q, HeckeRoute route) const {
  return op_matrix(OperatorLabel::U(q), route);
}

HeckeMatrix ModularSymbolSpace::atkin_lehner(std::int64_t q) const {
  return op_matrix(OperatorLabel::W(q), HeckeRoute::Coset);
}

std::vector<std::vector<std::int64_t>> ModularSymbolSpace::cuspidal_matrix_i64(const OperatorLabel& op,
                                                                              HeckeRoute route) const {
  validate_operator(op);
  const std::size_t dim = cuspidal_dimension();
  std::vector<std::vector<std::int64_t>> out(dim, std::vector<std::int64_t>(dim));
  std::vector<std::int64_t> acc(pres_.generators.size());
  for (std::size_t i = 0; i < dim; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (auto [k, c] : cuspidal_sparse_[i]) {
      apply_upstairs(op, route, static_cast<std::size_t>(pres_.free_symbol[k]), c, acc);
    }
    const auto row = push_down(acc);
    for (std::size_t j = 0; j < dim; ++j) out[i][j] = row[cusp_coord_of_[j]];
  }
  return out;
}

ZMatrix ModularSymbolSpace::cuspidal_matrix(const OperatorLabel& op, HeckeRoute route) const {
  const auto m = cuspidal_matrix_i64(op, route);
  ZMatrix out(m.size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) out.at(i, j) = static_cast<long>(m[i][j]);
  }
  return out;
}

ZMatrix ModularSymbolSpace::restrict_to_cuspidal(const ZMatrix& full) const {
  const std::size_t dim = cuspidal_dimension();
  ZMatrix out(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const auto img = vec_times(cuspidal_basis_[i], full);
    const auto coords = cuspidal_coordinates(img);
    for (std::size_t j = 0; j < dim; ++j) out.at(i, j) = coords[j];
  }
  return out;
}

std::string OperatorLabel::str() const {
  const char* name = kind == Kind::T ? "T_" : kind == Kind::U ? "U_" : "w_";
  return name + std::to_string(p);
}

std::shared_ptr<const ModularSymbolSpace> build_space(const SquarefreeLevel& n) {
  return std::make_shared<const ModularSymbolSpace>(build_presentation(n));
}

const std::vector<Mat2>& heilbronn_merel(std::int64_t n) {
  static std::mutex mutex;
  static std::map<std::int64_t, std::vector<Mat2>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<Mat2> out;
  for (std::int64_t a = 1; a <= n; ++a) {
    const std::int64_t q = n / a;
    if (q * a == n) {
      const std::int64_t d = q;
      for (std::int64_t b = 0; b < a; ++b) out.push_back({a, b, 0, d});
      for (std::int64_t c = 1; c < d; ++c) out.push_back({a, 0, c, d});
    }
    for (std::int64_t d = q + 1; d <= n; ++d) {
      const std::int64_t bc = a * d - n;
      for (std::int64_t c = bc / a + 1; c < d; ++c) {
        if (bc % c == 0) out.push_back({a, bc / c, c, d});
      }
    }
  }
  return cache.emplace(n, std::move(out)).first->second;
}

namespace {

void check_levels(const ModularSymbolSpace& space_n, const ModularSymbolSpace& space_np, std::int64_t p) {
  if (!is_prime(p)) throw BadPrime(std::to_string(p) + " is not prime");
  if (space_n.n() % p == 0 || space_np.n() != p * space_n.n()) {
    throw LevelMismatch("expected levels N and N*" + std::to_string(p) + " with " + std::to_string(p) +
                        " prime to N, got " + std::to_string(space_n.n()) + " and " +
                        std::to_string(space_np.n()));
  }
}

std::int64_t crt(std::int64_t x, std::int64_t n, std::int64_t y, std::int64_t p) {
  const std::int64_t k = mod64((y - x) * inverse_mod(mod64(n, p), p), p);
  return x + n * k;
}

}  // namespace

ZMatrix degeneracy(const ModularSymbolSpace& space_n, const ModularSymbolSpace& space_np, std::int64_t p,
                   DegeneracyKind kind, DegeneracyDirection direction) {
  check_levels(space_n, space_np, p);
  const std::int64_t n = space_n.n();
  const auto& gens_n = space_n.presentation().generators;
  const auto& gens_np = space_np.presentation().generators;
  if (direction == DegeneracyDirection::Pullback) {
    const std::size_t rows = space_n.dimension();
    ZMatrix alpha(rows, space_np.dimension());
    std::vector<std::int64_t> acc(gens_np.size());
    for (std::size_t k = 0; k < rows; ++k) {
      std::fill(acc.begin(), acc.end(), 0);
      const auto& x = gens_n[static_cast<std::size_t>(space_n.presentation().free_symbol[k])];
      auto add = [&](std::int64_t u, std::int64_t v) {
        const auto idx = space_np.p1().index(crt(x.c, n, u, p), crt(x.d, n, v, p));
        if (idx < 0) throw InternalError("CRT lift left P^1");
        acc[static_cast<std::size_t>(idx)] += 1;
      };
      add(0, 1);
      for (std::int64_t v = 0; v < p; ++v) add(1, v);
      const auto row = space_np.push_down(acc);
      for (std::size_t j = 0; j < row.size(); ++j) alpha.at(k, j) = static_cast<long>(row[j]);
    }
    if (kind == DegeneracyKind::Alpha) return alpha;
    return alpha * space_np.atkin_lehner(p).matrix;
  }
  const std::size_t rows = space_np.dimension();
  ZMatrix out(rows, space_n.dimension());
  std::vector<std::int64_t> acc(gens_n.size());
  for (std::size_t k = 0; k < rows; ++k) {
    std::fill(acc.begin(), acc.end(), 0);
    const auto sym = static_cast<std::size_t>(space_np.presentation().free_symbol[k]);
    if (kind == DegeneracyKind::Alpha) {
      const auto& x = gens_np[sym];
      acc[static_cast<std::size_t>(space_n.p1().index(x.c, x.d))] += 1;
    } else {
      const Mat2 g = mul({p, 0, 0, 1}, space_np.lift(sym));
      space_n.path_symbols(g.act(QPoint::of(0, 1)), g.act(QPoint::infinity()),
                           [&](std::int64_t s, std::int64_t sign) { acc[static_cast<std::size_t>(s)] += sign; });
    }
    const auto row = space_n.push_down(acc);
    for (std::size_t j = 0; j < row.size(); ++j) out.at(k, j) = static_cast<long>(row[j]);
  }
  return out;
}

}  // namespace eisen
