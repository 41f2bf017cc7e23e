#include "core/pwit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "core/errors.hpp"

namespace levyspec {

namespace {

constexpr std::uint64_t kRootPath = 0x243F6A8885A308D3ull;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::uint64_t child_path(std::uint64_t parent, int k) {
  return splitmix64(parent ^ splitmix64(static_cast<std::uint64_t>(k)));
}

double log_sum_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

// log |y|^{-1/alpha}
double log_weight(double mark, double alpha) { return -std::log(std::abs(mark)) / alpha; }

struct Pending {
  std::int32_t parent;
  std::int32_t depth;
  std::int32_t rank;
  double mark;
  std::uint64_t path;
  double log_influence;
};

}  // namespace

bool PwitTruncation::complete() const { return size() == full_vertex_count(B, H); }

std::int64_t full_vertex_count(int B, int H) {
  std::int64_t total = 0;
  std::int64_t level = 1;
  for (int d = 0; d <= H; ++d) {
    if (total > std::numeric_limits<std::int64_t>::max() - level) return std::numeric_limits<std::int64_t>::max();
    total += level;
    if (d < H) {
      if (level > std::numeric_limits<std::int64_t>::max() / B) return std::numeric_limits<std::int64_t>::max();
      level *= B;
    }
  }
  return total;
}

// A closed walk of length ell stays within depth ell/2, and rho there is
// exact because boundary offspring marks are drawn.
int moment_depth(int max_ell) { return std::max(0, max_ell / 2); }

PwitTruncation sample_tree(const PwitShape& shape, const Rng& base, const Materialization& m) {
  require(shape.B >= 1, "sample_tree: B must be >= 1");
  require(shape.H >= 0, "sample_tree: H must be >= 0");
  require(shape.alpha > 0.0, "sample_tree: alpha must be > 0");
  require(shape.theta >= 0.0 && shape.theta <= 1.0, "sample_tree: theta must lie in [0,1]");
  require(m.prune_tol >= 0.0 && m.prune_tol < 1.0, "sample_tree: prune tolerance must lie in [0,1)");
  const int max_depth = m.max_depth < 0 ? shape.H : std::min(m.max_depth, shape.H);
  const double log_tol = m.prune_tol > 0.0 ? std::log(m.prune_tol) : kNegInf;

  PwitTruncation t;
  t.B = shape.B;
  t.H = shape.H;
  t.theta = shape.theta;
  t.offspring_begin.push_back(0);

  std::vector<Pending> stack;
  stack.push_back({-1, 0, 0, 0.0, kRootPath, 0.0});
  std::vector<double> abs_marks(static_cast<std::size_t>(shape.B));
  std::vector<double> log_w(static_cast<std::size_t>(shape.B));

  while (!stack.empty()) {
    const Pending cur = stack.back();
    stack.pop_back();
    if (t.size() >= m.max_vertices) {
      std::ostringstream msg;
      msg << "sample_tree: materialization exceeds " << m.max_vertices
          << " vertices; lower max_depth or raise prune_tol";
      throw NumericError(msg.str());
    }
    const auto index = static_cast<std::int32_t>(t.size());
    t.parent.push_back(cur.parent);
    t.depth.push_back(cur.depth);
    t.rank.push_back(cur.rank);
    t.mark.push_back(cur.mark);

    if (cur.depth < shape.H) {
      Rng rng = base.derive(cur.path);
      double gamma = 0.0;
      for (int k = 0; k < shape.B; ++k) {
        gamma += rng.exponential();
        abs_marks[static_cast<std::size_t>(k)] = gamma;
      }
      double log_norm = cur.parent < 0 ? kNegInf : 2.0 * log_weight(cur.mark, shape.alpha);
      for (int k = 0; k < shape.B; ++k) {
        const double sign = rng.uniform() < shape.theta ? 1.0 : -1.0;
        t.offspring_marks.push_back(sign * abs_marks[static_cast<std::size_t>(k)]);
        log_w[static_cast<std::size_t>(k)] = log_weight(abs_marks[static_cast<std::size_t>(k)], shape.alpha);
        log_norm = log_sum_exp(log_norm, 2.0 * log_w[static_cast<std::size_t>(k)]);
      }
      if (cur.depth + 1 <= max_depth) {
        const auto first = t.offspring_marks.size() - static_cast<std::size_t>(shape.B);
        for (int k = shape.B; k >= 1; --k) {
          const double influence =
              cur.log_influence + 2.0 * log_w[static_cast<std::size_t>(k - 1)] - log_norm;
          if (influence < log_tol) continue;
          stack.push_back({index, cur.depth + 1, k, t.offspring_marks[first + static_cast<std::size_t>(k - 1)],
                           child_path(cur.path, k), influence});
        }
      }
    }
    t.offspring_begin.push_back(static_cast<std::int64_t>(t.offspring_marks.size()));
  }
  return t;
}

std::string_view to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::kT: return "T";
    case OperatorKind::kK: return "K";
    case OperatorKind::kS: return "S";
  }
  return "?";
}

RootOperator build_operator(const PwitTruncation& tree, OperatorKind kind, double alpha) {
  require(alpha > 0.0, "build_operator: alpha must be > 0");
  if (kind != OperatorKind::kT) {
    require(alpha < 1.0, "build_operator: kinds K and S require alpha in (0,1)");
  }
  const std::int64_t n = tree.size();
  RootOperator op;
  op.kind = kind;
  op.parent = tree.parent;
  op.edge.assign(static_cast<std::size_t>(n), 0.0);

  if (kind == OperatorKind::kT) {
    for (std::int64_t v = 1; v < n; ++v) {
      const double y = tree.mark[static_cast<std::size_t>(v)];
      op.edge[static_cast<std::size_t>(v)] = (y > 0.0 ? 1.0 : -1.0) * std::pow(std::abs(y), -1.0 / alpha);
    }
    return op;
  }

  std::vector<double> log_rho(static_cast<std::size_t>(n));
  for (std::int64_t v = 0; v < n; ++v) {
    double acc = v == 0 ? kNegInf : log_weight(tree.mark[static_cast<std::size_t>(v)], alpha);
    for (double y : tree.offspring(v)) acc = log_sum_exp(acc, log_weight(y, alpha));
    log_rho[static_cast<std::size_t>(v)] = acc;
  }
  op.rho.resize(static_cast<std::size_t>(n));
  for (std::int64_t v = 0; v < n; ++v) op.rho[static_cast<std::size_t>(v)] = std::exp(log_rho[static_cast<std::size_t>(v)]);
  for (std::int64_t v = 1; v < n; ++v) {
    const auto p = static_cast<std::size_t>(tree.parent[static_cast<std::size_t>(v)]);
    const double lw = log_weight(tree.mark[static_cast<std::size_t>(v)], alpha);
    op.edge[static_cast<std::size_t>(v)] =
        std::exp(lw - 0.5 * (log_rho[p] + log_rho[static_cast<std::size_t>(v)]));
  }
  return op;
}

namespace {

template <class T>
void apply_tree(const RootOperator& op, std::span<const T> x, std::span<T> y) {
  require(static_cast<std::int64_t>(x.size()) == op.size() && static_cast<std::int64_t>(y.size()) == op.size(),
          "RootOperator::apply: size mismatch");
  std::fill(y.begin(), y.end(), T(0));
  for (std::size_t v = 1; v < op.parent.size(); ++v) {
    const auto p = static_cast<std::size_t>(op.parent[v]);
    y[v] += op.edge[v] * x[p];
    y[p] += op.edge[v] * x[v];
  }
}

}  // namespace

void RootOperator::apply(std::span<const double> x, std::span<double> y) const { apply_tree(*this, x, y); }

void RootOperator::apply(std::span<const std::complex<double>> x,
                         std::span<std::complex<double>> y) const {
  apply_tree(*this, x, y);
}

double RootOperator::entry(std::int64_t v, std::int64_t w) const {
  double e = 0.0;
  if (w > 0 && parent[static_cast<std::size_t>(w)] == v) {
    e = edge[static_cast<std::size_t>(w)];
  } else if (v > 0 && parent[static_cast<std::size_t>(v)] == w) {
    e = edge[static_cast<std::size_t>(v)];
  }
  if (e == 0.0 || kind != OperatorKind::kK) return e;
  return e * std::sqrt(rho[static_cast<std::size_t>(w)] / rho[static_cast<std::size_t>(v)]);
}

Matrix RootOperator::dense_symmetric() const {
  const std::int64_t n = size();
  Matrix a = Matrix::Zero(n, n);
  for (std::int64_t v = 1; v < n; ++v) {
    const auto p = parent[static_cast<std::size_t>(v)];
    a(p, v) = edge[static_cast<std::size_t>(v)];
    a(v, p) = edge[static_cast<std::size_t>(v)];
  }
  return a;
}

std::complex<double> root_resolvent(const RootOperator& op, std::complex<double> z, double* residual) {
  require(z.imag() > 0.0, "root_resolvent: Im z must be > 0");
  const std::int64_t n = op.size();
  using C = std::complex<double>;
  std::vector<C> acc(static_cast<std::size_t>(n), C(0.0));
  std::vector<C> g(static_cast<std::size_t>(n));
  // Depth-first order puts every child after its parent.
  for (std::int64_t v = n - 1; v >= 0; --v) {
    const auto i = static_cast<std::size_t>(v);
    g[i] = -1.0 / (z + acc[i]);
    if (v > 0) acc[static_cast<std::size_t>(op.parent[i])] += op.edge[i] * op.edge[i] * g[i];
  }

  // Back-substitute the full column and check the residual of (A - z) x = e_root.
  std::vector<C> x(static_cast<std::size_t>(n));
  x[0] = g[0];
  for (std::int64_t v = 1; v < n; ++v) {
    const auto i = static_cast<std::size_t>(v);
    x[i] = -g[i] * op.edge[i] * x[static_cast<std::size_t>(op.parent[i])];
  }
  std::vector<C> ax(static_cast<std::size_t>(n));
  op.apply(std::span<const C>(x), std::span<C>(ax));
  double res2 = 0.0;
  double scale = 1.0;
  for (std::int64_t v = 0; v < n; ++v) {
    const auto i = static_cast<std::size_t>(v);
    const C r = ax[i] - z * x[i] - (v == 0 ? C(1.0) : C(0.0));
    res2 += std::norm(r);
    scale = std::max(scale, std::abs(ax[i]) + std::abs(z * x[i]));
  }
  const double res = std::sqrt(res2);
  if (residual != nullptr) *residual = res;
  if (!(res <= 1e-9 * scale)) {
    std::ostringstream msg;
    msg << "root_resolvent: elimination residual " << res << " exceeds tolerance";
    throw NumericError(msg.str());
  }
  return g[0];
}

std::vector<double> root_moments(const RootOperator& op, int max_ell) {
  require(max_ell >= 0, "root_moments: max_ell must be >= 0");
  const auto n = static_cast<std::size_t>(op.size());
  std::vector<double> cur(n, 0.0);
  std::vector<double> next(n, 0.0);
  cur[0] = 1.0;
  std::vector<double> p{1.0};
  for (int ell = 1; ell <= max_ell; ++ell) {
    op.apply(std::span<const double>(cur), std::span<double>(next));
    std::swap(cur, next);
    p.push_back(cur[0]);
  }
  return p;
}

double discarded_l2_mass(double alpha, int B) {
  require(alpha > 0.0 && alpha < 2.0, "discarded_l2_mass: alpha must lie in (0,2)");
  const double e = 2.0 / alpha;
  return std::pow(static_cast<double>(B), 1.0 - e) / (e - 1.0);
}

std::vector<double> sample_pd(double alpha, int k, std::int64_t tail_terms, Rng& rng) {
  require(alpha > 0.0 && alpha < 1.0, "sample_pd: alpha must lie in (0,1)");
  require(k >= 1, "sample_pd: k must be >= 1");
  require(tail_terms >= k, "sample_pd: tail_terms must be >= k");
  const double inv_alpha = 1.0 / alpha;
  std::vector<double> gamma(static_cast<std::size_t>(k));
  double g = 0.0;
  for (int j = 0; j < k; ++j) {
    g += rng.exponential();
    gamma[static_cast<std::size_t>(j)] = g;
  }
  const double g1 = gamma[0];
  // Everything relative to the largest point x_1 = g1^{-1/alpha}.
  double rel_sum = 0.0;
  for (int j = 0; j < k; ++j) rel_sum += std::pow(g1 / gamma[static_cast<std::size_t>(j)], inv_alpha);
  for (std::int64_t j = k; j < tail_terms; ++j) {
    g += rng.exponential();
    rel_sum += std::pow(g1 / g, inv_alpha);
  }
  const double m = static_cast<double>(tail_terms);
  // int_m^inf s^{-1/alpha} ds, relative to x_1.
  rel_sum += std::pow(g1, inv_alpha) * std::pow(m, 1.0 - inv_alpha) / (inv_alpha - 1.0);

  std::vector<double> v(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) v[static_cast<std::size_t>(j)] = std::pow(g1 / gamma[static_cast<std::size_t>(j)], inv_alpha) / rel_sum;
  return v;
}

double size_biased_pick(std::span<const double> points, Rng& rng) {
  require(!points.empty(), "size_biased_pick: empty list");
  double total = 0.0;
  for (double x : points) {
    require(x > 0.0 && std::isfinite(x), "size_biased_pick: points must be positive and finite");
    total += x;
  }
  const double target = rng.uniform() * total;
  double acc = 0.0;
  for (double x : points) {
    acc += x;
    if (target < acc) return x;
  }
  return points.back();
}

}  // namespace levyspec
