#include "mms/space.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace mms {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const std::vector<Point>& empty_points() {
  static const std::vector<Point> none;
  return none;
}

const std::vector<WeightedEdge>& empty_edges() {
  static const std::vector<WeightedEdge> none;
  return none;
}

void validate_table(const std::vector<double>& t, std::size_t n) {
  if (t.size() != n * n) throw std::invalid_argument("distance table must have n*n entries");
  double scale = 0.0;
  for (double v : t) {
    if (!(v >= 0) || !std::isfinite(v))
      throw std::invalid_argument("distances must be finite and nonnegative");
    scale = std::max(scale, v);
  }
  const double tol = 1e-12 * std::max(1.0, scale);
  for (std::size_t i = 0; i < n; ++i) {
    if (t[i * n + i] != 0.0) throw std::invalid_argument("distance table diagonal must be zero");
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(t[i * n + j] - t[j * n + i]) > tol)
        throw std::invalid_argument("distance table must be symmetric");
      if (t[i * n + j] == 0.0) throw std::invalid_argument("distinct points at distance zero");
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (t[i * n + k] > t[i * n + j] + t[j * n + k] + tol)
          throw std::invalid_argument("distance table violates the triangle inequality");
}

const Coords& require_coords(const Point& p, std::size_t dim, Coords& scratch) {
  if (const auto* c = std::get_if<Coords>(&p)) {
    if (c->size() != dim) throw std::invalid_argument("point dimension does not match the space");
    return *c;
  }
  if (const auto* x = std::get_if<double>(&p)) {
    if (dim != 1) throw std::invalid_argument("scalar point used in a space of dimension > 1");
    scratch.assign(1, *x);
    return scratch;
  }
  throw std::invalid_argument("node point used in a Euclidean space");
}

std::size_t require_node(const Point& p, std::size_t n) {
  const auto* v = std::get_if<Node>(&p);
  if (!v) throw std::invalid_argument("finite spaces take node points");
  if (v->index >= n) throw std::out_of_range("node index outside the space");
  return v->index;
}

}  // namespace

Ball::Ball(Point c, double r, bool is_closed) : center(std::move(c)), radius(r), closed(is_closed) {
  if (!(r > 0)) throw std::invalid_argument("ball radius must be positive");
}

Space Space::euclidean(std::size_t dim, double q) {
  if (dim == 0) throw std::invalid_argument("dimension must be at least 1");
  if (!(q >= 1)) throw std::invalid_argument("l_q exponent must be in [1, inf]");
  Space s;
  s.kind_ = SpaceKind::euclidean;
  s.dim_ = dim;
  s.q_ = q;
  return s;
}

Space Space::finite_matrix(std::vector<double> table, std::size_t n) {
  if (n == 0) throw std::invalid_argument("finite space needs at least one point");
  validate_table(table, n);
  Space s;
  s.kind_ = SpaceKind::finite_matrix;
  s.n_ = n;
  s.table_ = std::make_shared<const std::vector<double>>(std::move(table));
  return s;
}

Space Space::path_graph(std::size_t n, std::vector<WeightedEdge> edges) {
  if (n == 0) throw std::invalid_argument("graph needs at least one vertex");
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (const auto& e : edges) {
    if (e.from >= n || e.to >= n) throw std::out_of_range("edge endpoint outside the vertex set");
    if (!(e.length > 0) || !std::isfinite(e.length))
      throw std::invalid_argument("edge lengths must be positive and finite");
    adj[e.from].emplace_back(e.to, e.length);
    adj[e.to].emplace_back(e.from, e.length);
  }
  std::vector<double> table(n * n, kInf);
  using Item = std::pair<double, std::size_t>;
  for (std::size_t src = 0; src < n; ++src) {
    double* row = table.data() + src * n;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    row[src] = 0.0;
    pq.emplace(0.0, src);
    while (!pq.empty()) {
      const auto [d, u] = pq.top();
      pq.pop();
      if (d > row[u]) continue;
      for (const auto& [v, w] : adj[u]) {
        if (d + w < row[v]) {
          row[v] = d + w;
          pq.emplace(row[v], v);
        }
      }
    }
    for (std::size_t v = 0; v < n; ++v)
      if (row[v] == kInf) throw std::invalid_argument("path graph is not connected");
  }
  // Separate searches can round the same path differently; keep d(u, v) = d(v, u).
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) table[u * n + v] = table[v * n + u] = std::min(table[u * n + v], table[v * n + u]);
  Space s;
  s.kind_ = SpaceKind::path_graph;
  s.n_ = n;
  s.table_ = std::make_shared<const std::vector<double>>(std::move(table));
  s.edges_ = std::make_shared<const std::vector<WeightedEdge>>(std::move(edges));
  return s;
}

Space Space::ultrametric(std::size_t n, double distance) {
  if (n == 0) throw std::invalid_argument("ultrametric space needs at least one point");
  if (!(distance > 0)) throw std::invalid_argument("ultrametric distance must be positive");
  Space s;
  s.kind_ = SpaceKind::ultrametric;
  s.n_ = n;
  s.ultra_distance_ = distance;
  return s;
}

Space Space::with_samples(std::vector<Point> samples, bool convex) const {
  for (const auto& p : samples) validate_point(p);
  Space s = *this;
  s.samples_ = std::make_shared<const std::vector<Point>>(std::move(samples));
  s.convex_ = convex;
  return s;
}

Space Space::with_tolerance(double tol) const {
  if (!(tol >= 0)) throw std::invalid_argument("tolerance must be nonnegative");
  Space s = *this;
  s.tol_ = tol;
  return s;
}

std::span<const Point> Space::samples() const {
  return samples_ ? std::span<const Point>(*samples_) : std::span<const Point>(empty_points());
}

const std::vector<WeightedEdge>& Space::edges() const {
  return edges_ ? *edges_ : empty_edges();
}

double Space::distance(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) throw std::out_of_range("node index outside the space");
  if (kind_ == SpaceKind::ultrametric) return i == j ? 0.0 : ultra_distance_;
  return (*table_)[i * n_ + j];
}

double Space::distance(const Point& a, const Point& b) const {
  if (kind_ != SpaceKind::euclidean) return distance(require_node(a, n_), require_node(b, n_));
  Coords sa, sb;
  const Coords& x = require_coords(a, dim_, sa);
  const Coords& y = require_coords(b, dim_, sb);
  if (dim_ == 1) return std::abs(x[0] - y[0]);
  if (std::isinf(q_)) {
    double m = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) m = std::max(m, std::abs(x[i] - y[i]));
    return m;
  }
  if (q_ == 1.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) s += std::abs(x[i] - y[i]);
    return s;
  }
  if (q_ == 2.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
    return std::sqrt(s);
  }
  double s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) s += std::pow(std::abs(x[i] - y[i]), q_);
  return std::pow(s, 1.0 / q_);
}

bool Space::within(double d, double r, bool closed) const {
  return closed ? d <= r + tol_ : d < r - tol_;
}

bool Space::contains(const Ball& b, const Point& p) const {
  return within(distance(b.center, p), b.radius, b.closed);
}

std::vector<Point> Space::universe() const {
  if (is_finite()) {
    std::vector<Point> pts;
    pts.reserve(n_);
    for (std::size_t i = 0; i < n_; ++i) pts.emplace_back(Node{i});
    return pts;
  }
  auto s = samples();
  return {s.begin(), s.end()};
}

void Space::validate_point(const Point& p) const {
  if (kind_ == SpaceKind::euclidean) {
    Coords scratch;
    require_coords(p, dim_, scratch);
  } else {
    require_node(p, n_);
  }
}

std::string Space::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case SpaceKind::euclidean:
      os << "euclidean d=" << dim_ << " q=" << (std::isinf(q_) ? std::string("inf") : std::to_string(q_));
      if (!convex_) os << " (non-convex subset)";
      break;
    case SpaceKind::finite_matrix: os << "finite-matrix n=" << n_; break;
    case SpaceKind::path_graph: os << "path-graph n=" << n_ << " edges=" << edges().size(); break;
    case SpaceKind::ultrametric: os << "ultrametric-discrete n=" << n_ << " c=" << ultra_distance_; break;
  }
  if (samples_) os << " samples=" << samples_->size();
  return os.str();
}

IntersectResult balls_intersect(const Space& s, const Ball& b1, const Ball& b2,
                                std::span<const Point> witnesses) {
  if (s.kind() == SpaceKind::euclidean && s.convex()) {
    // Segment between the centers meets both balls iff the radii cover it.
    const double d = s.distance(b1.center, b2.center);
    return {s.within(d, b1.radius + b2.radius, b1.closed && b2.closed), Provenance::exact};
  }
  if (s.is_finite()) {
    for (std::size_t i = 0; i < s.cardinality(); ++i) {
      const Point p = Node{i};
      if (s.contains(b1, p) && s.contains(b2, p)) return {true, Provenance::exact};
    }
    return {false, Provenance::exact};
  }
  if (witnesses.empty()) witnesses = s.samples();
  if (witnesses.empty())
    throw std::invalid_argument("ball intersection in this space needs a witness set");
  for (const auto& p : witnesses)
    if (s.contains(b1, p) && s.contains(b2, p)) return {true, Provenance::sampled};
  return {false, Provenance::sampled};
}

namespace {

// Reads the next non-comment token line by line; '#' starts a comment.
class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  bool next(std::string& tok) {
    while (!(line_ >> tok)) {
      std::string raw;
      if (!std::getline(in_, raw)) return false;
      if (auto pos = raw.find('#'); pos != std::string::npos) raw.erase(pos);
      line_.clear();
      line_.str(raw);
    }
    return true;
  }

  double number() {
    std::string tok;
    if (!next(tok)) throw std::invalid_argument("space file ended early");
    if (tok == "inf") return kInf;
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("bad number in space file: " + tok);
    return v;
  }

  std::size_t count() {
    const double v = number();
    if (v < 0 || v != std::floor(v)) throw std::invalid_argument("expected a nonnegative integer");
    return static_cast<std::size_t>(v);
  }

 private:
  std::istream& in_;
  std::istringstream line_;
};

}  // namespace

Space parse_space(std::istream& in) {
  TokenReader rd(in);
  std::string kind;
  if (!rd.next(kind)) throw std::invalid_argument("empty space file");
  if (kind == "euclidean") {
    const std::size_t d = rd.count();
    const double q = rd.number();
    Space s = Space::euclidean(d, q);
    std::vector<Point> samples;
    std::string tok;
    while (rd.next(tok)) {
      Coords c{std::stod(tok)};
      for (std::size_t i = 1; i < d; ++i) c.push_back(rd.number());
      samples.emplace_back(std::move(c));
    }
    return samples.empty() ? s : s.with_samples(std::move(samples));
  }
  if (kind == "matrix") {
    const std::size_t n = rd.count();
    std::vector<double> table(n * n);
    for (auto& v : table) v = rd.number();
    return Space::finite_matrix(std::move(table), n);
  }
  if (kind == "graph") {
    const std::size_t n = rd.count();
    std::vector<WeightedEdge> edges;
    std::string tok;
    while (rd.next(tok)) {
      WeightedEdge e;
      e.from = static_cast<std::size_t>(std::stoul(tok));
      e.to = rd.count();
      e.length = rd.number();
      edges.push_back(e);
    }
    return Space::path_graph(n, std::move(edges));
  }
  if (kind == "ultrametric") {
    const std::size_t n = rd.count();
    const double c = rd.number();
    return Space::ultrametric(n, c);
  }
  throw std::invalid_argument("unknown space kind: " + kind);
}

Space load_space(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open space file " + path.string());
  return parse_space(in);
}

}  // namespace mms
