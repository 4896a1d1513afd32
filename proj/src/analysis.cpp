#include "graphmix/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "graphmix/mixup.hpp"
#include "graphmix/rng.hpp"

namespace graphmix {

namespace {

constexpr int kMaxMotifNodes = 8;
constexpr int kMaxExactCutK = 20;
constexpr double kMaxEnumerationTerms = 1e8;

// Row-per-node bit matrix; fast adjacency tests and common-neighbor counts.
class BitAdjacency {
 public:
  explicit BitAdjacency(const Graph& g)
      : n_(g.num_nodes()), words_((n_ + 63) / 64), bits_(n_ * words_, 0) {
    for (const auto& [u, v] : g.edges()) {
      set(u, v);
      set(v, u);
    }
  }

  bool test(int u, int v) const {
    return (row(u)[v >> 6] >> (v & 63)) & 1ULL;
  }

  std::int64_t common_neighbors(int u, int v) const {
    const std::uint64_t* a = row(u);
    const std::uint64_t* b = row(v);
    std::int64_t count = 0;
    for (int w = 0; w < words_; ++w) count += std::popcount(a[w] & b[w]);
    return count;
  }

  const std::uint64_t* row(int u) const { return bits_.data() + u * words_; }
  int words() const { return words_; }

 private:
  void set(int u, int v) { bits_[u * words_ + (v >> 6)] |= 1ULL << (v & 63); }

  int n_;
  int words_;
  std::vector<std::uint64_t> bits_;
};

// Motif vertices reordered so every vertex after the first of its component
// has at least one earlier neighbor; earlier_neighbors[i] lists positions
// (in the new order) the i-th vertex must be adjacent to.
struct MotifPlan {
  std::vector<int> order;
  std::vector<std::vector<int>> earlier_neighbors;
};

MotifPlan plan_motif(const Graph& pattern) {
  const int v = pattern.num_nodes();
  const auto adj = pattern.adjacency_lists();
  MotifPlan plan;
  std::vector<int> position(v, -1);
  std::vector<char> seen(v, 0);
  for (int root = 0; root < v; ++root) {
    if (seen[root]) continue;
    // BFS keeps each new vertex attached to the explored part.
    std::vector<int> queue{root};
    seen[root] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const int u = queue[qi];
      position[u] = static_cast<int>(plan.order.size());
      plan.order.push_back(u);
      for (int nb : adj[u]) {
        if (!seen[nb]) {
          seen[nb] = 1;
          queue.push_back(nb);
        }
      }
    }
  }
  plan.earlier_neighbors.resize(v);
  for (int i = 0; i < v; ++i) {
    const int u = plan.order[i];
    for (int nb : adj[u]) {
      if (position[nb] < i) plan.earlier_neighbors[i].push_back(position[nb]);
    }
  }
  return plan;
}

std::int64_t hom_count_backtrack(const MotifPlan& plan, const BitAdjacency& adj,
                                 int n) {
  const int v = static_cast<int>(plan.order.size());
  std::vector<int> image(v, 0);
  std::int64_t count = 0;

  // Iterative backtracking; vertices with no earlier neighbor range over all
  // n graph nodes, the rest only over nodes adjacent to every mapped earlier
  // neighbor.
  const auto admissible = [&](int level, int candidate) {
    for (int e : plan.earlier_neighbors[level]) {
      if (!adj.test(image[e], candidate)) return false;
    }
    return true;
  };

  int level = 0;
  image[0] = -1;
  while (level >= 0) {
    bool advanced = false;
    for (int cand = image[level] + 1; cand < n; ++cand) {
      if (admissible(level, cand)) {
        image[level] = cand;
        advanced = true;
        break;
      }
    }
    if (!advanced) {
      --level;
      continue;
    }
    if (level == v - 1) {
      ++count;
      continue;
    }
    ++level;
    image[level] = -1;
  }
  return count;
}

// Splits the motif into connected components, each as a standalone graph.
std::vector<Graph> motif_components(const Graph& pattern) {
  const int v = pattern.num_nodes();
  const auto adj = pattern.adjacency_lists();
  std::vector<int> comp(v, -1);
  int num_comp = 0;
  for (int root = 0; root < v; ++root) {
    if (comp[root] >= 0) continue;
    std::vector<int> queue{root};
    comp[root] = num_comp;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      for (int nb : adj[queue[qi]]) {
        if (comp[nb] < 0) {
          comp[nb] = num_comp;
          queue.push_back(nb);
        }
      }
    }
    ++num_comp;
  }

  std::vector<std::vector<int>> members(num_comp);
  std::vector<int> local(v);
  for (int u = 0; u < v; ++u) {
    local[u] = static_cast<int>(members[comp[u]].size());
    members[comp[u]].push_back(u);
  }
  std::vector<std::vector<Edge>> edges(num_comp);
  for (const auto& [a, b] : pattern.edges()) {
    edges[comp[a]].emplace_back(local[a], local[b]);
  }
  std::vector<Graph> out;
  for (int c = 0; c < num_comp; ++c) {
    out.emplace_back(static_cast<int>(members[c].size()),
                     std::move(edges[c]));
  }
  return out;
}

bool is_tree(const Graph& component) {
  return component.num_edges() == component.num_nodes() - 1;
}

bool is_triangle(const Graph& component) {
  return component.num_nodes() == 3 && component.num_edges() == 3;
}

// hom(T, G) / n^v for a tree component: leaves-to-root message passing.
// hom(T, G) = sum_a msg_root(a) with msg_u(a) = prod_children sum over
// neighbors b of a of msg_child(b).
double tree_density(const Graph& tree, const Graph& g,
                    const std::vector<std::vector<int>>& g_adj) {
  const int n = g.num_nodes();
  const int v = tree.num_nodes();
  const auto t_adj = tree.adjacency_lists();

  std::vector<int> order{0};
  std::vector<int> parent(v, -1);
  std::vector<char> seen(v, 0);
  seen[0] = 1;
  for (std::size_t qi = 0; qi < order.size(); ++qi) {
    for (int nb : t_adj[order[qi]]) {
      if (!seen[nb]) {
        seen[nb] = 1;
        parent[nb] = order[qi];
        order.push_back(nb);
      }
    }
  }

  std::vector<Eigen::VectorXd> msg(v, Eigen::VectorXd::Ones(n));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int u = *it;
    if (parent[u] < 0) continue;
    Eigen::VectorXd up(n);
    for (int a = 0; a < n; ++a) {
      double sum = 0.0;
      for (int b : g_adj[a]) sum += msg[u](b);
      up(a) = sum;
    }
    msg[parent[u]].array() *= up.array();
  }
  const double hom = msg[0].sum();
  return hom / std::pow(static_cast<double>(n), v);
}

double triangle_density(const Graph& g, const BitAdjacency& adj) {
  // Each triangle is seen once per edge; homs count 6 orientations.
  std::int64_t triple = 0;
  for (const auto& [u, v] : g.edges()) triple += adj.common_neighbors(u, v);
  const double n = static_cast<double>(g.num_nodes());
  return 2.0 * static_cast<double>(triple) / (n * n * n);
}

double graphon_density_recurse(const MotifPlan& plan,
                               const Eigen::MatrixXd& w,
                               std::vector<int>& blocks, int level) {
  const int k = static_cast<int>(w.rows());
  const int v = static_cast<int>(plan.order.size());
  if (level == v) return 1.0;
  double total = 0.0;
  for (int b = 0; b < k; ++b) {
    double weight = 1.0;
    for (int e : plan.earlier_neighbors[level]) {
      weight *= w(blocks[e], b);
      if (weight == 0.0) break;
    }
    if (weight == 0.0) continue;
    blocks[level] = b;
    total += weight * graphon_density_recurse(plan, w, blocks, level + 1);
  }
  return total;
}

double graphon_density(const Graph& pattern, const Eigen::MatrixXd& w) {
  const int v = pattern.num_nodes();
  const int k = static_cast<int>(w.rows());
  if (std::pow(static_cast<double>(k), v) > kMaxEnumerationTerms) {
    throw std::invalid_argument(
        "hom_density_graphon: enumeration guard exceeded");
  }
  const MotifPlan plan = plan_motif(pattern);
  std::vector<int> blocks(v, 0);
  const double sum = graphon_density_recurse(plan, w, blocks, 0);
  return sum / std::pow(static_cast<double>(k), v);
}

// One alternating-maximization pass of s over rows, t over columns for a
// fixed sign of the objective sign * sᵀ d t.
double alternate_from(const Eigen::MatrixXd& d, double sign,
                      std::vector<char>& s, std::vector<char>& t) {
  const int k = static_cast<int>(d.rows());
  double value = -1.0;
  for (int iter = 0; iter < 4 * k + 8; ++iter) {
    bool changed = false;
    // Best t given s.
    Eigen::VectorXd col = Eigen::VectorXd::Zero(k);
    for (int i = 0; i < k; ++i) {
      if (s[i]) col += sign * d.row(i).transpose();
    }
    for (int j = 0; j < k; ++j) {
      const char want = col(j) > 0.0 ? 1 : 0;
      if (t[j] != want) {
        t[j] = want;
        changed = true;
      }
    }
    // Best s given t.
    Eigen::VectorXd row = Eigen::VectorXd::Zero(k);
    for (int j = 0; j < k; ++j) {
      if (t[j]) row += sign * d.col(j);
    }
    for (int i = 0; i < k; ++i) {
      const char want = row(i) > 0.0 ? 1 : 0;
      if (s[i] != want) {
        s[i] = want;
        changed = true;
      }
    }
    double v = 0.0;
    for (int i = 0; i < k; ++i) {
      if (s[i]) v += row(i);  // row already carries the sign
    }
    value = v;
    if (!changed) break;
  }
  return value;
}

// Canonical fresh evaluation of |sum over s×t of d| for a vertex pair.
double vertex_value(const Eigen::MatrixXd& d, std::uint32_t s_mask,
                    std::uint32_t t_mask) {
  const int k = static_cast<int>(d.rows());
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    if (!((s_mask >> i) & 1U)) continue;
    for (int j = 0; j < k; ++j) {
      if ((t_mask >> j) & 1U) sum += d(i, j);
    }
  }
  return std::abs(sum);
}

// Enumerates s over {0,1}^K with Gray-code updates of the column aggregates
// c_j = sum_{i in s} d_ij; for each s the best t is the indicator of the
// positive (or of the negative) aggregates. Aggregates are refreshed
// periodically to keep incremental rounding below the report tolerance.
double search_best_vertex(const Eigen::MatrixXd& d) {
  const int k = static_cast<int>(d.rows());
  Eigen::VectorXd c = Eigen::VectorXd::Zero(k);
  std::uint32_t mask = 0;
  double best = 0.0;
  std::uint32_t best_s = 0;
  std::uint32_t best_t_pos = 0;  // chosen sign resolved at refresh below

  const std::uint64_t total = 1ULL << k;
  for (std::uint64_t g = 1; g < total; ++g) {
    const int flip = std::countr_zero(g);
    if ((g & 0xFFFULL) == 0) {
      // Periodic refresh bounds drift from the incremental updates.
      const std::uint32_t gray = static_cast<std::uint32_t>(g ^ (g >> 1));
      c.setZero();
      for (int i = 0; i < k; ++i) {
        if ((gray >> i) & 1U) c += d.row(i).transpose();
      }
      mask = gray;
    } else {
      if ((mask >> flip) & 1U) {
        c -= d.row(flip).transpose();
        mask &= ~(1U << flip);
      } else {
        c += d.row(flip).transpose();
        mask |= 1U << flip;
      }
    }
    double pos = 0.0, neg = 0.0;
    std::uint32_t t_pos = 0, t_neg = 0;
    for (int j = 0; j < k; ++j) {
      if (c(j) > 0.0) {
        pos += c(j);
        t_pos |= 1U << j;
      } else if (c(j) < 0.0) {
        neg -= c(j);
        t_neg |= 1U << j;
      }
    }
    if (pos > best) {
      best = pos;
      best_s = mask;
      best_t_pos = t_pos;
    }
    if (neg > best) {
      best = neg;
      best_s = mask;
      best_t_pos = t_neg;
    }
  }
  if (best == 0.0) return 0.0;
  return vertex_value(d, best_s, best_t_pos);
}

std::string matrix_digest(const Eigen::MatrixXd& m) {
  // Cheap content fingerprint for report provenance.
  std::uint64_t h = 1469598103934665603ULL;
  const auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ULL;
  };
  mix(static_cast<std::uint64_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    std::uint64_t bits;
    const double value = m.data()[i];
    std::memcpy(&bits, &value, sizeof(bits));
    mix(bits);
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace

Motif::Motif(Graph pattern) : pattern_(std::move(pattern)) {
  if (pattern_.num_nodes() < 1) {
    throw std::invalid_argument("Motif: at least one node required");
  }
  if (pattern_.num_nodes() > kMaxMotifNodes) {
    throw std::invalid_argument("Motif: at most 8 nodes supported");
  }
}

Motif Motif::parse(const std::string& text) {
  // Format: "v=3; 0-1 1-2 2-0"
  const auto fail = [&text](const std::string& why) {
    return std::invalid_argument("Motif::parse '" + text + "': " + why);
  };
  const std::size_t eq = text.find('=');
  const std::size_t semi = text.find(';');
  if (text.find("v") == std::string::npos || eq == std::string::npos ||
      semi == std::string::npos || eq > semi) {
    throw fail("expected 'v=<n>; <edges>'");
  }
  int v = 0;
  {
    const std::string num = text.substr(eq + 1, semi - eq - 1);
    const auto first = num.find_first_not_of(" \t");
    if (first == std::string::npos) throw fail("missing node count");
    const auto last = num.find_last_not_of(" \t");
    const auto [p, ec] = std::from_chars(num.data() + first,
                                         num.data() + last + 1, v);
    if (ec != std::errc{} || p != num.data() + last + 1) {
      throw fail("bad node count");
    }
  }
  std::vector<Edge> edges;
  std::istringstream rest(text.substr(semi + 1));
  std::string token;
  while (rest >> token) {
    const std::size_t dash = token.find('-');
    if (dash == std::string::npos) throw fail("bad edge token " + token);
    int a = 0, b = 0;
    const auto [pa, ea] =
        std::from_chars(token.data(), token.data() + dash, a);
    const auto [pb, eb] = std::from_chars(token.data() + dash + 1,
                                          token.data() + token.size(), b);
    if (ea != std::errc{} || eb != std::errc{} ||
        pa != token.data() + dash || pb != token.data() + token.size()) {
      throw fail("bad edge token " + token);
    }
    edges.emplace_back(a, b);
  }
  return Motif(Graph(v, std::move(edges)));
}

Motif Motif::named(const std::string& name) {
  if (name == "node") return Motif(Graph(1, {}));
  if (name == "edge") return Motif(Graph(2, {{0, 1}}));
  if (name == "triangle") return Motif(Graph(3, {{0, 1}, {1, 2}, {0, 2}}));
  if (name.rfind("path", 0) == 0 || name.rfind("cycle", 0) == 0) {
    const bool cycle = name[0] == 'c';
    const std::string num = name.substr(cycle ? 5 : 4);
    int v = 0;
    const auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
    if (ec == std::errc{} && p == num.data() + num.size() && v >= 2 &&
        v <= kMaxMotifNodes && (!cycle || v >= 3)) {
      std::vector<Edge> edges;
      for (int i = 0; i + 1 < v; ++i) edges.emplace_back(i, i + 1);
      if (cycle) edges.emplace_back(0, v - 1);
      return Motif(Graph(v, std::move(edges)));
    }
  }
  throw std::invalid_argument("unknown motif name: " + name);
}

BoundReport make_bound_report(double lhs, double rhs, std::string digest,
                              bool vacuous) {
  BoundReport report;
  report.lhs = lhs;
  report.rhs = rhs;
  report.satisfied = lhs <= rhs + kBoundTolerance;
  report.vacuous = vacuous;
  report.inputs_digest = std::move(digest);
  return report;
}

std::int64_t hom_count(const Motif& f, const Graph& g) {
  if (g.num_nodes() == 0) return 0;
  const MotifPlan plan = plan_motif(f.pattern());
  const BitAdjacency adj(g);
  return hom_count_backtrack(plan, adj, g.num_nodes());
}

double hom_density_graph(const Motif& f, const Graph& g) {
  const int n = g.num_nodes();
  if (n == 0) {
    throw std::invalid_argument("hom_density_graph: empty graph");
  }
  // Built on first use; large sampled graphs usually need only one of them.
  std::unique_ptr<BitAdjacency> bits;
  std::vector<std::vector<int>> lists;
  const auto bit_adj = [&]() -> const BitAdjacency& {
    if (!bits) bits = std::make_unique<BitAdjacency>(g);
    return *bits;
  };
  const auto list_adj = [&]() -> const std::vector<std::vector<int>>& {
    if (lists.empty()) lists = g.adjacency_lists();
    return lists;
  };

  double density = 1.0;
  for (const Graph& comp : motif_components(f.pattern())) {
    if (comp.num_nodes() == 1) {
      continue;  // single node contributes n/n = 1
    }
    if (is_tree(comp)) {
      density *= tree_density(comp, g, list_adj());
    } else if (is_triangle(comp)) {
      density *= triangle_density(g, bit_adj());
    } else {
      if (std::pow(static_cast<double>(n), comp.num_nodes()) >
          kMaxEnumerationTerms) {
        throw std::invalid_argument(
            "hom_density_graph: motif too complex for a graph this large");
      }
      const MotifPlan plan = plan_motif(comp);
      const double hom =
          static_cast<double>(hom_count_backtrack(plan, bit_adj(), n));
      density *= hom / std::pow(static_cast<double>(n), comp.num_nodes());
    }
  }
  return density;
}

double hom_density_graphon(const Motif& f, const StepGraphon& w) {
  double density = 1.0;
  for (const Graph& comp : motif_components(f.pattern())) {
    density *= graphon_density(comp, w.w);
  }
  return density;
}

Eigen::VectorXd degree_function(const StepGraphon& w) {
  return w.w.rowwise().mean();
}

double cut_norm_exact(const Eigen::MatrixXd& d) {
  const int k = static_cast<int>(d.rows());
  if (k < 1 || d.cols() != k) {
    throw std::invalid_argument("cut_norm_exact: matrix must be square");
  }
  if (k > kMaxExactCutK) {
    throw std::invalid_argument("cut_norm_exact: K > 20 needs the bound");
  }
  // Searching d and dᵀ makes the result exactly transpose-invariant.
  const double best =
      std::max(search_best_vertex(d), search_best_vertex(d.transpose()));
  return best / (static_cast<double>(k) * k);
}

double cut_norm_lower_bound(const Eigen::MatrixXd& d, int restarts,
                            std::uint64_t seed) {
  const int k = static_cast<int>(d.rows());
  if (k < 1 || d.cols() != k) {
    throw std::invalid_argument("cut_norm_lower_bound: matrix must be square");
  }
  if (restarts < 1) {
    throw std::invalid_argument("cut_norm_lower_bound: restarts must be >= 1");
  }

  double best = 0.0;
  for (int r = 0; r < restarts; ++r) {
    Rng rng(split_seed(seed, r));
    std::vector<char> s0(k), t0(k);
    for (int i = 0; i < k; ++i) s0[i] = rng.bernoulli(0.5);
    for (int j = 0; j < k; ++j) t0[j] = rng.bernoulli(0.5);
    for (const double sign : {1.0, -1.0}) {
      std::vector<char> s = s0, t = t0;
      alternate_from(d, sign, s, t);
      double sum = 0.0;
      for (int i = 0; i < k; ++i) {
        if (!s[i]) continue;
        for (int j = 0; j < k; ++j) {
          if (t[j]) sum += d(i, j);
        }
      }
      best = std::max(best, std::abs(sum));
    }
  }
  return best / (static_cast<double>(k) * k);
}

BoundReport check_theorem1(const StepGraphon& wg, const StepGraphon& wh,
                           const Motif& f, double lambda) {
  if (wg.k() != wh.k()) {
    throw std::invalid_argument("check_theorem1: graphon sizes differ");
  }
  if (lambda < 0.0 || lambda > 1.0) {
    throw std::invalid_argument("check_theorem1: lambda must be in [0, 1]");
  }
  const Eigen::MatrixXd mix = lambda * wg.w + (1.0 - lambda) * wh.w;
  const double cut = cut_norm_exact(wh.w - wg.w);
  const double edges = static_cast<double>(f.num_edges());

  double t_mix = 1.0, t_g = 1.0, t_h = 1.0;
  for (const Graph& comp : motif_components(f.pattern())) {
    t_mix *= graphon_density(comp, mix);
    t_g *= graphon_density(comp, wg.w);
    t_h *= graphon_density(comp, wh.w);
  }

  const double lhs_g = std::abs(t_mix - t_g);
  const double rhs_g = (1.0 - lambda) * edges * cut;
  const double lhs_h = std::abs(t_mix - t_h);
  const double rhs_h = lambda * edges * cut;

  // Report the tighter side; satisfaction requires both.
  const bool g_tighter = (rhs_g - lhs_g) <= (rhs_h - lhs_h);
  const double lhs = g_tighter ? lhs_g : lhs_h;
  const double rhs = g_tighter ? rhs_g : rhs_h;

  std::ostringstream digest;
  digest << "theorem1 k=" << wg.k() << " vF=" << f.num_nodes()
         << " eF=" << f.num_edges() << " lambda=" << lambda
         << " cut=" << cut << " side=" << (g_tighter ? "g" : "h")
         << " wg=" << matrix_digest(wg.w) << " wh=" << matrix_digest(wh.w);

  BoundReport report = make_bound_report(lhs, rhs, digest.str());
  report.satisfied = lhs_g <= rhs_g + kBoundTolerance &&
                     lhs_h <= rhs_h + kBoundTolerance;
  return report;
}

BoundReport check_theorem2(const StepGraphon& w, const Motif& f, int n,
                           double epsilon, int trials, std::uint64_t seed) {
  if (epsilon <= 0.0 || epsilon >= 1.0) {
    throw std::invalid_argument("check_theorem2: epsilon must be in (0, 1)");
  }
  if (n < 1 || trials < 1) {
    throw std::invalid_argument("check_theorem2: n and trials must be >= 1");
  }

  const double t_w = hom_density_graphon(f, w);
  int exceed = 0;
  for (int trial = 0; trial < trials; ++trial) {
    const Graph g = sample_graph(w, n, split_seed(seed, trial));
    if (std::abs(hom_density_graph(f, g) - t_w) > epsilon) ++exceed;
  }

  const double vf = static_cast<double>(f.num_nodes());
  const double bound =
      2.0 * std::exp(-epsilon * epsilon * n / (8.0 * vf * vf));
  const bool vacuous = bound >= 1.0;
  const double se =
      vacuous ? 0.0 : std::sqrt(bound * (1.0 - bound) / trials);
  const double lhs = static_cast<double>(exceed) / trials;

  std::ostringstream digest;
  digest << "theorem2 k=" << w.k() << " vF=" << f.num_nodes() << " n=" << n
         << " eps=" << epsilon << " trials=" << trials << " seed=" << seed
         << " exceed=" << exceed << " bound=" << bound << " se=" << se
         << " tW=" << t_w;

  return make_bound_report(lhs, bound + se, digest.str(), vacuous);
}

CollisionProbability collision_probability(const StepGraphon& w) {
  // Product over all K² cells of w² + (1-w)²; every factor is >= 1/2 so the
  // log never diverges, but the product underflows quickly — hence log space.
  double log_p = 0.0;
  for (int i = 0; i < w.k(); ++i) {
    for (int j = 0; j < w.k(); ++j) {
      const double p = w.w(i, j);
      log_p += std::log(p * p + (1.0 - p) * (1.0 - p));
    }
  }
  return CollisionProbability{std::exp(log_p), log_p};
}

double step_approx_error(const StepGraphon& fine, int k_coarse) {
  if (k_coarse < 1 || k_coarse > fine.k()) {
    throw std::invalid_argument(
        "step_approx_error: need 1 <= k_coarse <= fine.k()");
  }
  if (fine.k() > kMaxExactCutK) {
    throw std::invalid_argument("step_approx_error: fine grid exceeds K=20");
  }
  const auto [coarse_w, coarse_x] = resize_to_grid(fine.w, fine.x, k_coarse);
  const auto [expanded_w, expanded_x] =
      resize_to_grid(coarse_w, coarse_x, fine.k());
  return cut_norm_exact(fine.w - expanded_w);
}

}  // namespace graphmix
