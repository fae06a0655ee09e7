#pragma once

#include "eisen/linalg.hpp"
#include "eisen/numtheory.hpp"
#include "eisen/p1.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace eisen {

// A point of P^1(Q); den == 0 encodes infinity.
struct QPoint {
  std::int64_t num = 1;
  std::int64_t den = 0;
  static QPoint infinity() { return {1, 0}; }
  static QPoint of(std::int64_t num, std::int64_t den);
  bool is_infinity() const { return den == 0; }
};

struct Mat2 {
  std::int64_t a, b, c, d;
  std::int64_t det() const { return a * d - b * c; }
  QPoint act(const QPoint& z) const;
};

struct OperatorLabel {
  enum class Kind { T, U, W };
  Kind kind;
  std::int64_t p;
  std::string str() const;
  static OperatorLabel T(std::int64_t r) { return {Kind::T, r}; }
  static OperatorLabel U(std::int64_t q) { return {Kind::U, q}; }
  static OperatorLabel W(std::int64_t q) { return {Kind::W, q}; }
};

// How a Hecke operator is pushed through the Manin presentation.
enum class HeckeRoute {
  Coset,      // coset representatives acting on paths, then the Manin trick
  Heilbronn,  // Merel's determinant-n matrices acting directly on symbols
};

// Row-vector convention throughout: the operator acts as v -> v * matrix.
struct HeckeMatrix {
  OperatorLabel label;
  ZMatrix matrix;
};

// The reduced Manin presentation. Manin symbols are edges of a cell
// structure whose faces are the size-3 orbits of tau; the three-term
// relations are eliminated along a spanning forest of the face graph, so
// every symbol is an integral combination of the free symbols and those
// form a Z-basis of the integral quotient.
struct Presentation {
  std::int64_t level = 1;
  std::vector<P1Element> generators;
  std::vector<std::int32_t> alias_edge;  // per symbol; -1 if the symbol is zero
  std::vector<std::int8_t> alias_sign;
  std::int32_t num_edges = 0;
  std::vector<std::int32_t> edge_free;  // per edge; -1 for eliminated edges
  std::vector<std::int32_t> free_symbol;  // symbol index for each free edge
  // eliminated edges in creation order, each with its expression
  std::vector<std::int32_t> pivot_edge;
  std::vector<std::int32_t> pivot_offset;
  std::vector<std::int32_t> term_edge;
  std::vector<std::int8_t> term_coef;
  // cusp spanning tree over the free symbols
  std::vector<std::uint8_t> cusp_tree;
};

Presentation build_presentation(const SquarefreeLevel& n);

class ModularSymbolSpace {
 public:
  explicit ModularSymbolSpace(Presentation pres);

  const SquarefreeLevel& level() const { return level_; }
  std::int64_t n() const { return level_.value(); }
  const P1List& p1() const { return p1_; }
  const Presentation& presentation() const { return pres_; }

  // Dimension of the relation quotient (free symbols).
  std::size_t dimension() const { return pres_.free_symbol.size(); }
  std::size_t cuspidal_dimension() const { return cusp_coord_of_.size(); }
  std::size_t num_cusps() const { return cusps_.size(); }
  // Cusps are the divisors of N in ascending order; P_n has index cusp_index(n).
  const std::vector<std::int64_t>& cusps() const { return cusps_; }
  std::size_t cusp_index(std::int64_t divisor) const;

  // The free symbols forming the quotient basis.
  std::vector<P1Element> quotient_basis() const;
  // Coordinates of the Manin symbol with the given index.
  ZVec generator_image(std::size_t symbol) const;

  // Reduces a vector indexed by Manin symbols to quotient coordinates. The
  // data holds `width` interleaved columns; the result has the same layout.
  std::vector<std::int64_t> push_down(std::vector<std::int64_t> data, std::size_t width = 1) const;
  ZVec push_down_exact(const std::vector<std::int64_t>& upstairs) const;

  // Boundary of a quotient vector as coefficients on cusps.
  ZVec boundary(const ZVec& v) const;
  ZMatrix boundary_matrix() const;

  // Saturated cuspidal lattice: basis vectors in quotient coordinates, and
  // the coordinate map on cuspidal vectors (values on the non-tree edges).
  const std::vector<ZVec>& cuspidal_basis() const { return cuspidal_basis_; }
  ZVec cuspidal_coordinates(const ZVec& v) const;
  // Quotient index of the free edge carrying each cuspidal coordinate.
  const std::vector<std::size_t>& cuspidal_free_edges() const { return cusp_coord_of_; }
  // Sparse form of a cuspidal basis vector: (free index, coefficient) pairs.
  const std::vector<std::vector<std::pair<std::size_t, std::int64_t>>>& cuspidal_basis_sparse() const {
    return cuspidal_sparse_;
  }
  bool is_cuspidal(const ZVec& v) const;

  // Continued-fraction expansion of the path {a, b} into Manin symbols.
  void path_symbols(const QPoint& from, const QPoint& to,
                    const std::function<void(std::int64_t symbol, std::int64_t sign)>& emit) const;
  ZVec manin_trick(const QPoint& from, const QPoint& to) const;

  // A matrix in SL2(Z) whose bottom row lifts the given symbol.
  Mat2 lift(std::size_t symbol) const;

  // Adds coef * op(symbol) into an upstairs accumulator of length psi.
  void apply_upstairs(const OperatorLabel& op, HeckeRoute route, std::size_t symbol, std::int64_t coef,
                      std::vector<std::int64_t>& acc) const;

  HeckeMatrix hecke_T(std::int64_t r, HeckeRoute route = HeckeRoute::Heilbronn) const;
  HeckeMatrix hecke_U(std::int64_t q, HeckeRoute route = HeckeRoute::Coset) const;
  HeckeMatrix atkin_lehner(std::int64_t q) const;
  HeckeMatrix op_matrix(const OperatorLabel& op, HeckeRoute route) const;

  // Operator on the cuspidal lattice in cuspidal coordinates.
  ZMatrix cuspidal_matrix(const OperatorLabel& op, HeckeRoute route) const;
  std::vector<std::vector<std::int64_t>> cuspidal_matrix_i64(const OperatorLabel& op, HeckeRoute route) const;
  ZMatrix restrict_to_cuspidal(const ZMatrix& full) const;

  // Matrix W = [[q a, b], [N, q]] of determinant q.
  Mat2 atkin_lehner_matrix(std::int64_t q) const;

 private:
  void validate_operator(const OperatorLabel& op) const;

  SquarefreeLevel level_;
  Presentation pres_;
  P1List p1_;
  std::vector<std::int64_t> cusps_;
  std::vector<std::size_t> free_head_, free_tail_;  // boundary = P_head - P_tail
  std::vector<std::size_t> cusp_coord_of_;
  std::vector<std::int64_t> coord_of_free_;  // -1 for tree edges
  std::vector<ZVec> cuspidal_basis_;
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> cuspidal_sparse_;
};

std::shared_ptr<const ModularSymbolSpace> build_space(const SquarefreeLevel& n);

// Merel's set of integer matrices [[a,b],[c,d]] with ad - bc = n, a > b >= 0,
// d > c >= 0. Cached process-wide.
const std::vector<Mat2>& heilbronn_merel(std::int64_t n);

enum class DegeneracyKind { Alpha, Beta };
enum class DegeneracyDirection { Pullback, Pushforward };

// Pullback: matrix from level N to level Np (rows indexed by the level-N
// basis). Pushforward: matrix from level Np to level N.
ZMatrix degeneracy(const ModularSymbolSpace& space_n, const ModularSymbolSpace& space_np, std::int64_t p,
                   DegeneracyKind kind, DegeneracyDirection direction = DegeneracyDirection::Pullback);

}  // namespace eisen
