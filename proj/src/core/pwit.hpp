#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "core/heavy_tail.hpp"
#include "core/rng.hpp"

namespace levyspec {

// (B,H)-truncated Poisson weighted infinite tree. Vertices are strings over
// {1..B} of length <= H; offspring marks of every vertex come from a stream
// keyed by the vertex's path, so any partial materialization agrees exactly
// with the full truncation drawn from the same generator.
struct PwitShape {
  double alpha = 0.5;  // used only to rank subtrees when pruning
  double theta = 1.0;
  int B = 50;
  int H = 8;
};

// Which part of the (B,H) tree is held in memory. The default holds all of
// it. max_depth < H keeps the ball of that radius (marks of the boundary's
// offspring are still drawn, so rho is exact there). prune_tol > 0 skips
// subtrees whose path influence, the product over edges of
// w_e^2 / (sum of squared weights at the parent), falls below it.
struct Materialization {
  int max_depth = -1;  // -1: H
  double prune_tol = 0.0;
  std::int64_t max_vertices = 4'000'000;
};

struct PwitTruncation {
  int B = 0;
  int H = 0;
  double theta = 1.0;
  // Depth-first order; index 0 is the root.
  std::vector<std::int32_t> parent;  // -1 for the root
  std::vector<std::int32_t> depth;
  std::vector<std::int32_t> rank;    // position k in 1..B among siblings (0: root)
  std::vector<double> mark;          // signed y_v (0 for the root)
  // Signed marks y_{v1..vB} of every vertex with depth < H, whether or not
  // the offspring themselves are materialized.
  std::vector<std::int64_t> offspring_begin;  // size() + 1 entries
  std::vector<double> offspring_marks;

  std::int64_t size() const { return static_cast<std::int64_t>(parent.size()); }
  std::span<const double> offspring(std::int64_t v) const {
    return {offspring_marks.data() + offspring_begin[static_cast<std::size_t>(v)],
            offspring_marks.data() + offspring_begin[static_cast<std::size_t>(v) + 1]};
  }
  // True when every vertex of the (B,H) tree is materialized.
  bool complete() const;
};

// (B^{H+1} - 1) / (B - 1), saturating at INT64_MAX.
std::int64_t full_vertex_count(int B, int H);

PwitTruncation sample_tree(const PwitShape& shape, const Rng& base, const Materialization& m = {});

// Depth of the ball whose operator reproduces p_ell, ell <= max_ell, of the
// full truncation exactly.
int moment_depth(int max_ell);

enum class OperatorKind { kT, kK, kS };

// Tree-supported operator restricted (compressed) to the materialized
// vertices. Stored in symmetric form: edge[v] is the entry between v and its
// parent. For kK the symmetric form is S and rho carries the reweighting
// K(v,w) = S(v,w) sqrt(rho(w)/rho(v)).
struct RootOperator {
  OperatorKind kind = OperatorKind::kT;
  std::vector<std::int32_t> parent;
  std::vector<double> edge;
  std::vector<double> rho;  // kinds K and S

  std::int64_t size() const { return static_cast<std::int64_t>(parent.size()); }

  // y = A x, A the symmetric form.
  void apply(std::span<const double> x, std::span<double> y) const;
  void apply(std::span<const std::complex<double>> x, std::span<std::complex<double>> y) const;
  // Matrix entry of the operator itself (K is not symmetric).
  double entry(std::int64_t v, std::int64_t w) const;
  Matrix dense_symmetric() const;
};

// T: sign(y)|y|^{-1/alpha} on tree edges. K, S: random walk with conductance
// |y|^{-1/alpha}; require alpha in (0,1).
RootOperator build_operator(const PwitTruncation& tree, OperatorKind kind, double alpha);

// <delta_root, (A - z)^{-1} delta_root> by exact elimination on the tree.
// Throws NumericError if the reconstructed solution's residual is too large.
std::complex<double> root_resolvent(const RootOperator& op, std::complex<double> z,
                                    double* residual = nullptr);

// p_ell = <delta_root, A^ell delta_root>, ell = 0..max_ell.
std::vector<double> root_moments(const RootOperator& op, int max_ell);

// Expected per-vertex l2 mass dropped by truncating offspring at width B,
// E sum_{k>B} |y_k|^{-2/alpha} ~ B^{1-2/alpha} / (2/alpha - 1).
double discarded_l2_mass(double alpha, int B);

// Leading k coordinates of a PD(alpha, 0) vector from tail_terms explicit
// points plus the integral correction for the remaining ones.
std::vector<double> sample_pd(double alpha, int k, std::int64_t tail_terms, Rng& rng);

// Returns x_i with probability x_i / sum x.
double size_biased_pick(std::span<const double> points, Rng& rng);

std::string_view to_string(OperatorKind kind);

}  // namespace levyspec
