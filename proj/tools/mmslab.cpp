#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mms/claims.hpp"
#include "mms/gallery.hpp"
#include "mms/gaussian_lab.hpp"
#include "mms/geometry.hpp"
#include "mms/measure.hpp"
#include "mms/norms.hpp"
#include "mms/operators.hpp"
#include "mms/report.hpp"

namespace {

using nlohmann::json;
using namespace mms;

/// Bad flags or inputs: usage text and exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string verb;
  std::string action;
  std::string target;
  std::string space_file;
  std::string gallery;
  std::size_t n = 0;
  std::string measure = "auto";
  std::string function = "one";
  std::vector<std::string> points;
  std::string op = "average";
  double r = 1.0;
  std::vector<double> radii;
  bool closed = false;
  double p = 1.0;
  std::string method = "all";
  std::size_t probes = 0;
  std::string balls_file;
  std::size_t random_balls = 0;
  double k = 0.0;
  std::size_t d = 0;
  std::string d_range;
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::uint64_t samples = 1000000;
  bool quick = false;
  bool timings = false;
  std::vector<int> claims;
  std::string format = "json";
  std::string output;

  json to_json() const {
    json j{{"verb", verb},       {"action", action},   {"format", format},
           {"measure", measure}, {"function", function}, {"op", op},
           {"r", r},             {"radii", radii},     {"closed", closed},
           {"p", p},             {"method", method},   {"probes", probes},
           {"samples", samples}, {"quick", quick},     {"points", points}};
    if (!target.empty()) j["target"] = target;
    if (!space_file.empty()) j["space"] = space_file;
    if (!gallery.empty()) j["gallery"] = gallery;
    if (n > 0) j["n"] = n;
    if (!balls_file.empty()) j["balls"] = balls_file;
    if (random_balls > 0) j["random_balls"] = random_balls;
    if (k > 0.0) j["k"] = k;
    if (d > 0) j["d"] = d;
    if (!d_range.empty()) j["d_range"] = d_range;
    j["seed"] = has_seed ? json(seed) : json(nullptr);
    if (!claims.empty()) j["claims"] = claims;
    return j;
  }
};

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string point_string(const Point& p) {
  if (const auto* n = std::get_if<Node>(&p)) return std::to_string(n->index);
  if (const auto* x = std::get_if<double>(&p)) return fmt(*x);
  std::string s;
  for (double c : std::get<Coords>(p)) s += (s.empty() ? "" : " ") + fmt(c);
  return s;
}

Point parse_point(const std::string& text, const Space& s) {
  try {
    if (s.is_finite()) return node(std::stoul(text));
    Coords c;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) c.push_back(std::stod(tok));
    if (c.size() != s.dimension())
      throw UsageError("point '" + text + "' needs " + std::to_string(s.dimension()) + " coordinates");
    if (c.size() == 1) return c[0];
    return c;
  } catch (const std::logic_error&) {
    throw UsageError("cannot parse point '" + text + "'");
  }
}

std::vector<std::size_t> parse_range(const std::string& text) {
  std::vector<std::size_t> parts;
  std::stringstream ss(text);
  std::string tok;
  try {
    while (std::getline(ss, tok, ':')) parts.push_back(std::stoul(tok));
  } catch (const std::logic_error&) {
    throw UsageError("bad --d-range '" + text + "', expected lo:hi[:step]");
  }
  if (parts.size() < 2 || parts.size() > 3 || parts[0] > parts[1] || (parts.size() == 3 && parts[2] == 0))
    throw UsageError("bad --d-range '" + text + "', expected lo:hi[:step]");
  std::vector<std::size_t> ds;
  const std::size_t step = parts.size() == 3 ? parts[2] : 1;
  for (std::size_t d = parts[0]; d <= parts[1]; d += step) ds.push_back(d);
  return ds;
}

std::vector<std::size_t> dimensions(const RunConfig& c) {
  if (!c.d_range.empty()) return parse_range(c.d_range);
  if (c.d == 0) throw UsageError("--d or --d-range is required");
  return {c.d};
}

void require_seed(const RunConfig& c) {
  if (!c.has_seed) throw UsageError(c.verb + " " + c.action + " samples randomly and needs --seed");
}

struct Setting {
  Space space;
  Measure measure;
};

Setting load_setting(const RunConfig& c, bool need_measure = true) {
  if (!c.gallery.empty() && !c.space_file.empty()) throw UsageError("use either --gallery or --space");
  if (!c.gallery.empty()) {
    GalleryEntry e = build_entry(c.gallery, c.n > 0 ? std::optional<std::size_t>(c.n) : std::nullopt);
    return {e.space, e.measure};
  }
  if (c.space_file.empty()) throw UsageError("--space or --gallery is required");
  Space s = load_space(c.space_file);
  const std::string& m = c.measure;
  if (m == "auto" || m == "counting") {
    if (s.is_finite()) return {s, counting(s)};
    if (need_measure) throw UsageError("continuous spaces need --measure");
    return {s, Atomic{}};
  }
  if (m == "exponential") return {s, exponential()};
  if (m == "lebesgue") return {s, lebesgue_line()};
  if (m == "gaussian") return {s, gaussian(s.dimension())};
  return {s, load_atomic(m, s)};
}

FunctionOnSpace load_function(const RunConfig& c, const Setting& st) {
  const std::string& f = c.function;
  if (f == "one") return constant_function(1.0);
  const auto colon = f.find(':');
  const std::string kind = f.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : f.substr(colon + 1);
  if (kind == "dirac" && !arg.empty()) return DiracProbe{parse_point(arg, st.space)};
  if (kind == "atom" && !arg.empty()) {
    const auto* a = std::get_if<Atomic>(&st.measure);
    if (!a) throw UsageError("atom functions need an atomic measure");
    const std::size_t i = std::stoul(arg);
    if (i >= a->atoms.size()) throw UsageError("atom index out of range");
    TableFunction t{std::vector<double>(a->atoms.size(), 0.0)};
    t.values[i] = 1.0;
    return t;
  }
  if (kind == "table" && !arg.empty()) {
    std::ifstream in(arg);
    if (!in) throw UsageError("cannot open " + arg);
    TableFunction t;
    double v;
    while (in >> v) t.values.push_back(v);
    return t;
  }
  throw UsageError("unknown --function '" + f + "' (one | dirac:<point> | atom:<k> | table:<file>)");
}

std::vector<Point> points_or_universe(const RunConfig& c, const Setting& st) {
  std::vector<Point> pts;
  for (const auto& p : c.points) pts.push_back(parse_point(p, st.space));
  if (pts.empty()) pts = st.space.universe();
  if (pts.empty()) throw UsageError("--point is required for this space");
  return pts;
}

struct Output {
  json result;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  bool tabular = false;
  int status = 0;
};

Output run_space(const RunConfig& c) {
  const Setting st = load_setting(c, c.action == "apply");
  Output out;
  if (c.action == "describe") {
    out.result = {{"space", st.space.describe()},
                  {"measure", c.measure == "auto" && !st.space.is_finite() ? "none" : describe(st.measure)},
                  {"finite", st.space.is_finite()},
                  {"cardinality", st.space.cardinality()},
                  {"dimension", st.space.dimension()},
                  {"total_mass", number_to_json(total_mass(st.measure))}};
    return out;
  }
  if (c.action == "distance") {
    if (c.points.size() != 2) throw UsageError("space distance needs exactly two --point values");
    const double d = st.space.distance(parse_point(c.points[0], st.space), parse_point(c.points[1], st.space));
    out.result = {{"a", c.points[0]}, {"b", c.points[1]}, {"distance", number_to_json(d)}};
    return out;
  }
  OperatorSpec spec;
  if (c.op == "average") spec.kind = OperatorSpec::Kind::average;
  else if (c.op == "centered") spec.kind = OperatorSpec::Kind::maximal_centered;
  else if (c.op == "uncentered") spec.kind = OperatorSpec::Kind::maximal_uncentered;
  else if (c.op == "directional") spec.kind = OperatorSpec::Kind::directional_right;
  else throw UsageError("unknown --op '" + c.op + "'");
  spec.radius = c.r;
  spec.radii = c.radii;
  const FunctionOnSpace f = load_function(c, st);
  const std::vector<Point> pts = points_or_universe(c, st);
  std::vector<double> values(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    try {
      values[i] = apply(spec, st.measure, st.space, f, pts[i]);
    } catch (const UndefinedAtPoint&) {
      values[i] = std::nan("");
    }
  }
  out.tabular = true;
  out.header = {"point", "value"};
  json rows = json::array();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    rows.push_back({{"point", point_string(pts[i])}, {"value", number_to_json(values[i])}});
    out.rows.push_back({point_string(pts[i]), fmt(values[i])});
  }
  out.result = {{"operator", c.op}, {"rows", std::move(rows)}};
  return out;
}

Output run_estimate(const RunConfig& c) {
  const Setting st = load_setting(c);
  const Space& s = st.space;
  const Measure& m = st.measure;
  Output out;
  std::vector<double> radii = c.radii;
  if (radii.empty() && !s.is_finite()) radii = {c.r};
  std::vector<Point> centers;
  for (const auto& p : c.points) centers.push_back(parse_point(p, s));
  if (centers.empty() && !s.is_finite()) centers.assign(s.samples().begin(), s.samples().end());

  if (c.action == "comparability") {
    if (s.is_finite()) {
      out.result = comparability_sup(m, s, radii).to_json();
      return out;
    }
    if (!std::holds_alternative<Density1D>(m) || s.dimension() != 1)
      throw UsageError("comparability on continuous spaces is supported for measures on the line");
    json per = json::array();
    ConstantEstimate best;
    best.value = 0.0;
    for (double r : radii) {
      const auto pairs = line_pair_grid(r);
      ConstantEstimate e = local_comparability(m, s, r, pairs);
      per.push_back(e.to_json());
      if (e.value > best.value) best = e;
    }
    out.result = {{"sup", best.to_json()}, {"per_radius", std::move(per)}};
    return out;
  }
  if (c.action == "doubling" || c.action == "blossom" || c.action == "bl") {
    if (!s.is_finite() && (centers.empty() || radii.empty()))
      throw UsageError("continuous spaces need --point centers (or space samples) and radii");
    const ConstantEstimate e = c.action == "doubling" ? doubling_constant(m, s, centers, radii)
                               : c.action == "blossom" ? blossom_constant(m, s, centers, radii)
                                                       : bl_constant(m, s, centers, radii);
    out.result = e.to_json();
    return out;
  }
  if (c.action == "geomdoubling") {
    if (s.is_finite()) {
      const GeometricDoubling g = geometric_doubling_finite(s);
      out.result = {{"upper", g.upper}, {"lower", g.lower}, {"method", "greedy cover and packing over critical radii"}};
      return out;
    }
    if (c.points.size() != 1 || s.samples().empty())
      throw UsageError("geomdoubling on continuous spaces needs one --point and a sampled space");
    const CoveringCount cc = geometric_doubling_number(s, Ball(centers[0], c.r), s.samples());
    out.result = {{"cover", cc.cover}, {"packing", cc.packing}, {"cover_centers", cc.cover_centers}};
    return out;
  }
  if (!s.is_finite()) throw UsageError("chain estimates need a finite space");
  const ChainDoublingCheck ch = chain_doubling_check(m, s);
  const auto k = measured_chain_length(s);
  out.result = {{"chain_length", k ? json(*k) : json(nullptr)},
                {"radii_checked", ch.radii_checked},
                {"radii_skipped", ch.radii_skipped},
                {"max_chain", ch.max_chain},
                {"worst_fraction", number_to_json(ch.worst_fraction)},
                {"c", number_to_json(ch.c)},
                {"d", number_to_json(ch.d)},
                {"pass", ch.pass}};
  return out;
}

Output run_norms(const RunConfig& c) {
  const Setting st = load_setting(c);
  Output out;
  json reports = json::array();
  const std::string& meth = c.method;
  if (std::holds_alternative<Density1D>(st.measure)) {
    if (meth != "all" && meth != "fubini") throw UsageError("measures on the line support --method fubini");
    std::vector<double> grid;
    for (const auto& p : c.points) grid.push_back(std::get<double>(parse_point(p, st.space)));
    if (grid.empty())
      for (int i = 0; i <= 96; ++i) grid.push_back(i == 0 ? 0.0 : 1e-4 * c.r * std::pow(1e5, (i - 1) / 95.0));
    reports.push_back(fubini_l1_upper(st.measure, st.space, c.r, grid).to_json());
    out.result = {{"r", c.r}, {"reports", std::move(reports)}};
    return out;
  }
  if (!std::holds_alternative<Atomic>(st.measure)) throw UsageError("norms need an atomic or line measure");
  const Kernel kern = build_kernel(st.measure, st.space, c.r, c.closed);
  const bool all = meth == "all";
  if (!all && meth != "l1" && meth != "lp" && meth != "weak") throw UsageError("unknown --method '" + meth + "'");
  if (all || meth == "l1") reports.push_back(op_norm_l1(kern).to_json());
  if ((all && c.p > 1.0) || meth == "lp") {
    if (c.p <= 1.0) throw UsageError("--method lp needs --p > 1");
    reports.push_back(op_norm_lp(kern, c.p).to_json());
  }
  if (all || meth == "weak") {
    std::vector<std::vector<double>> probes;
    if (c.probes > 0) {
      require_seed(c);
      std::mt19937_64 rng(c.seed);
      std::uniform_real_distribution<double> u(0.0, 1.0);
      for (std::size_t i = 0; i < c.probes; ++i) {
        std::vector<double> v(kern.atoms.size());
        for (auto& x : v) x = u(rng);
        probes.push_back(std::move(v));
      }
      for (std::size_t i = 0; i < kern.atoms.size(); ++i) {
        std::vector<double> e(kern.atoms.size(), 0.0);
        e[i] = 1.0;
        probes.push_back(std::move(e));
      }
    }
    reports.push_back(weak_type_constant(kern, c.p, probes).to_json());
  }
  out.result = {{"r", c.r},
                {"atoms", kern.atoms.size()},
                {"undefined_atoms", kern.undefined.size()},
                {"reports", std::move(reports)}};
  return out;
}

std::vector<Ball> read_balls(const RunConfig& c, const Setting& st) {
  std::vector<Ball> balls;
  if (!c.balls_file.empty()) {
    std::ifstream in(c.balls_file);
    if (!in) throw UsageError("cannot open " + c.balls_file);
    std::string line;
    while (std::getline(in, line)) {
      if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
      std::istringstream ls(line);
      std::string center;
      double radius;
      if (!(ls >> center)) continue;
      if (!(ls >> radius)) throw UsageError("ball lines read 'center radius'");
      balls.emplace_back(parse_point(center, st.space), radius);
    }
    return balls;
  }
  if (c.random_balls == 0) throw UsageError("vitali run needs --balls or --random");
  require_seed(c);
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (st.space.is_finite()) {
    const std::size_t n = st.space.cardinality();
    double diam = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) diam = std::max(diam, st.space.distance(i, j));
    for (std::size_t i = 0; i < c.random_balls; ++i) {
      const auto center = std::min<std::size_t>(n - 1, static_cast<std::size_t>(u(rng) * n));
      balls.emplace_back(node(center), (0.05 + 0.95 * u(rng)) * diam);
    }
    return balls;
  }
  if (st.space.dimension() != 1) throw UsageError("random families are generated on finite spaces and the line");
  for (std::size_t i = 0; i < c.random_balls; ++i) balls.emplace_back(10.0 * u(rng), 0.05 + 1.95 * u(rng));
  return balls;
}

Output run_vitali(const RunConfig& c) {
  const Setting st = load_setting(c);
  const std::vector<Ball> balls = read_balls(c, st);
  const VitaliResult v = vitali_select(st.measure, st.space, balls, c.k > 0.0 ? std::optional(c.k) : std::nullopt);
  json fam = json::array();
  for (const auto& b : balls) fam.push_back({{"center", point_string(b.center)}, {"radius", b.radius}});
  Output out;
  out.result = {{"balls", std::move(fam)},
                {"selected", v.selected},
                {"union_all", number_to_json(v.union_all)},
                {"union_selected", number_to_json(v.union_selected)},
                {"ratio", number_to_json(v.ratio)},
                {"k_reference", number_to_json(v.k_reference)},
                {"certified", v.certified},
                {"within_bound", v.within_bound}};
  return out;
}

Output run_gauss(const RunConfig& c) {
  Output out;
  if (c.action == "upper" || c.action == "lower") {
    out.tabular = true;
    out.header = {"d", "value", "log_value", "err"};
    json rows = json::array();
    for (std::size_t d : dimensions(c)) {
      if (c.action == "upper") {
        const double lv = log_l1_upper_bound(d);
        const double upper = std::exp(lv / c.p);
        rows.push_back({{"d", d}, {"p", c.p}, {"value", number_to_json(upper)}, {"log_value", lv / c.p}});
        out.rows.push_back({std::to_string(d), fmt(upper), fmt(lv / c.p), fmt(0.0)});
      } else {
        const GaussBoundReport g = weak_lower_bound(d, c.p);
        rows.push_back(g.to_json());
        out.rows.push_back({std::to_string(d), fmt(g.value), fmt(g.log_value), fmt(g.quadrature_error)});
      }
    }
    out.result = {{"bound", c.action}, {"rows", std::move(rows)}};
    return out;
  }
  if (c.action == "checks") {
    json rows = json::array();
    for (std::size_t d : dimensions(c)) {
      const CapReport cap = cap_measure_bound(d);
      const GammaRatioReport g = gamma_ratio_check(d);
      const CapVolumeReport cv = cap_volume_ratio(d);
      json row{{"d", d},
               {"cap", {{"bound", number_to_json(cap.bound)}, {"exact", number_to_json(cap.exact)}, {"holds", cap.holds}}},
               {"gamma_ratio", {{"lhs", g.lhs}, {"rhs", g.rhs}, {"holds", g.holds}}},
               {"cap_volume", {{"log_ratio", cv.log_ratio}, {"log_bound", cv.log_bound}, {"holds", cv.holds}}}};
      if (d >= 2) {
        const ShellReport sh = shell_mass(d);
        row["shell"] = {{"mass", number_to_json(sh.mass)}, {"bound", number_to_json(sh.bound)}, {"holds", sh.holds}};
      }
      rows.push_back(std::move(row));
    }
    out.result = {{"rows", std::move(rows)}};
    return out;
  }
  require_seed(c);
  if (c.d == 0) throw UsageError("--d is required");
  if (c.action == "firstop") {
    out.result = firstop_check(c.d, c.r, c.samples, c.seed).to_json();
    return out;
  }
  Coords x(c.d, 0.0);
  if (c.points.empty()) {
    x[0] = c.r;
  } else {
    const Point p = parse_point(c.points[0], Space::euclidean(c.d));
    if (const auto* v = std::get_if<double>(&p)) x[0] = *v;
    else x = std::get<Coords>(p);
  }
  out.result = secondopx_check(c.d, c.r, x, c.samples, c.seed).to_json();
  return out;
}

Output run_gallery(const RunConfig& c) {
  Output out;
  if (c.action == "list") {
    out.result = {{"entries", gallery_names()}};
    return out;
  }
  if (c.target.empty()) throw UsageError("gallery verify needs an entry name");
  const GalleryEntry e = build_entry(c.target, c.n > 0 ? std::optional<std::size_t>(c.n) : std::nullopt);
  out.result = e.verify();
  out.tabular = true;
  out.header = {"name", "claim", "computed", "expected", "pass"};
  for (const auto& row : out.result["expectations"]) {
    const auto cell = [&](const char* k) {
      if (!row.contains(k)) return std::string();
      return row[k].is_string() ? row[k].get<std::string>() : row[k].dump();
    };
    out.rows.push_back({cell("name"), cell("claim"), cell("computed"), cell("expected"), row["pass"] ? "pass" : "fail"});
  }
  out.status = out.result["pass"] ? 0 : 1;
  return out;
}

Output run_verify(const RunConfig& c) {
  if (!c.quick) require_seed(c);
  ClaimOptions opts;
  opts.quick = c.quick;
  if (c.has_seed) opts.seed = c.seed;
  opts.samples = c.samples;
  std::vector<ClaimResult> results;
  if (c.claims.empty()) {
    results = run_claims(opts);
  } else {
    for (int id : c.claims) {
      if (opts.quick && claim_uses_sampling(id)) continue;
      results.push_back(run_claim(id, opts));
    }
  }
  Output out;
  out.tabular = true;
  out.header = {"id", "title", "computed", "expected", "status"};
  json rows = json::array();
  bool fail = false;
  bool inconclusive = false;
  for (const auto& r : results) {
    rows.push_back(r.to_json(c.timings));
    const std::string status = r.inconclusive ? "inconclusive" : r.pass ? "pass" : "fail";
    out.rows.push_back({std::to_string(r.id), r.title, r.computed.dump(), r.expected, status});
    fail = fail || (!r.pass && !r.inconclusive);
    inconclusive = inconclusive || r.inconclusive;
  }
  out.result = {{"claims", std::move(rows)}, {"all_pass", !fail && !inconclusive}};
  out.status = fail ? 1 : inconclusive ? 3 : 0;
  return out;
}

void emit(const RunConfig& c, const Output& out) {
  std::ofstream file;
  if (!c.output.empty()) {
    file.open(c.output);
    if (!file) throw UsageError("cannot write " + c.output);
  }
  std::ostream& os = c.output.empty() ? std::cout : file;
  const json cfg = c.to_json();
  if (c.format == "csv") {
    if (!out.tabular) throw UsageError(c.verb + " " + c.action + " has no csv form; use --format json");
    os << "# mmslab " << kVersion << " config=" << cfg.dump() << "\n";
    for (std::size_t i = 0; i < out.header.size(); ++i) os << (i ? "," : "") << out.header[i];
    os << "\n";
    for (const auto& row : out.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
      os << "\n";
    }
    return;
  }
  const json report{{"tool", "mmslab"}, {"version", kVersion}, {"config", cfg}, {"result", out.result}};
  os << report.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"mmslab: maximal operators on metric measure spaces"};
  app.set_config("--config", "", "key=value file; command-line flags win");
  app.require_subcommand(1, 1);

  app.add_option("--space", cfg.space_file, "space file");
  app.add_option("--gallery", cfg.gallery, "gallery entry providing space and measure");
  app.add_option("--n", cfg.n, "truncation of gallery entries");
  app.add_option("--measure", cfg.measure, "counting | exponential | lebesgue | gaussian | atom file");
  app.add_option("--function", cfg.function, "one | dirac:<point> | atom:<k> | table:<file>");
  app.add_option("--point", cfg.points, "node index or comma-separated coordinates");
  app.add_option("--op", cfg.op, "average | centered | uncentered | directional");
  app.add_option("--r", cfg.r, "radius");
  app.add_option("--radii", cfg.radii, "radius grid")->delimiter(',');
  app.add_flag("--closed", cfg.closed, "closed balls in kernels");
  app.add_option("--p", cfg.p, "exponent");
  app.add_option("--method", cfg.method, "all | l1 | lp | weak | fubini");
  app.add_option("--probes", cfg.probes, "random probes for the weak type sweep");
  app.add_option("--balls", cfg.balls_file, "ball family file, 'center radius' per line");
  app.add_option("--random", cfg.random_balls, "size of a random ball family");
  app.add_option("--k", cfg.k, "blossom constant for the Vitali comparison");
  app.add_option("--d", cfg.d, "dimension");
  app.add_option("--d-range", cfg.d_range, "dimension sweep lo:hi[:step]");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--samples", cfg.samples, "Monte Carlo samples");
  app.add_flag("--quick", cfg.quick, "skip sampled claims");
  app.add_flag("--timings", cfg.timings, "include run times in claim reports");
  app.add_option("--claims", cfg.claims, "claim ids to run")->delimiter(',');
  app.add_option("--format", cfg.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output", cfg.output, "report path, stdout by default");

  auto verb = [&](const char* name, const char* desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->fallthrough();
    return sub;
  };
  CLI::App* space = verb("space", "describe a space, distances, operator values");
  space->add_option("action", cfg.action)->required()->check(CLI::IsMember({"describe", "distance", "apply"}));
  CLI::App* estimate = verb("estimate", "comparability, doubling, blossom and covering constants");
  estimate->add_option("action", cfg.action)
      ->required()
      ->check(CLI::IsMember({"comparability", "doubling", "blossom", "bl", "geomdoubling", "chain"}));
  verb("norms", "operator norms of A_r");
  CLI::App* vitali = verb("vitali", "greedy Vitali selection");
  vitali->add_option("action", cfg.action)->required()->check(CLI::IsMember({"run"}));
  CLI::App* gauss = verb("gauss", "Gaussian bounds and lemma checks");
  gauss->add_option("action", cfg.action)
      ->required()
      ->check(CLI::IsMember({"upper", "lower", "checks", "firstop", "secondopx"}));
  CLI::App* gallery = verb("gallery", "example spaces and their expected properties");
  gallery->add_option("action", cfg.action)->required()->check(CLI::IsMember({"list", "verify"}));
  gallery->add_option("name", cfg.target);
  verb("verify-paper", "run the acceptance claims");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  cfg.verb = app.get_subcommands().front()->get_name();
  cfg.has_seed = app.count("--seed") > 0;

  try {
    Output out;
    if (cfg.verb == "space") out = run_space(cfg);
    else if (cfg.verb == "estimate") out = run_estimate(cfg);
    else if (cfg.verb == "norms") out = run_norms(cfg);
    else if (cfg.verb == "vitali") out = run_vitali(cfg);
    else if (cfg.verb == "gauss") out = run_gauss(cfg);
    else if (cfg.verb == "gallery") out = run_gallery(cfg);
    else out = run_verify(cfg);
    emit(cfg, out);
    return out.status;
  } catch (const QuadratureError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\nRun with --help for more information.\n";
    return 2;
  }
}
