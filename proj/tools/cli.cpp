#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "psdcert/completion.hpp"
#include "psdcert/criterion.hpp"
#include "psdcert/graph.hpp"
#include "psdcert/io.hpp"
#include "psdcert/quadratic.hpp"
#include "psdcert/sdp_cases.hpp"

namespace psdcert::cli {

namespace {

using json = nlohmann::json;

constexpr std::size_t exact_dimension_limit = 10;

struct Config {
  std::string backend = "auto";
  Tolerance tol;
  std::size_t psd_cap = default_classic_cap;
  std::string format = "text";
};

struct Pair {
  std::size_t a = 0;
  std::size_t b = 0;
};

// "i,j", 1-based.
Pair parse_pair(const std::string& s, const char* what) {
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument("");
    std::size_t used = 0;
    const long a = std::stol(s.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument("");
    const std::string rest = s.substr(comma + 1);
    const long b = std::stol(rest, &used);
    if (used != rest.size() || a < 1 || b < 1) throw std::invalid_argument("");
    return {static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1)};
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string(what) + " must be two 1-based indices \"i,j\", got '" + s + "'");
  }
}

bool use_exact(const Config& c, std::size_t m) {
  std::string b = c.backend;
  if (b == "auto")
    if (const char* env = std::getenv("PSDCERT_BACKEND")) b = env;
  if (b == "exact") return true;
  if (b == "float") return false;
  if (b != "auto") throw std::invalid_argument("unknown backend '" + b + "' (exact, float)");
  return m <= exact_dimension_limit;
}

Mode parse_mode(const std::string& s) { return s == "pd" ? Mode::pd : Mode::psd; }

std::string set_text(const std::optional<IndexSet>& s) {
  if (!s) return "none";
  std::string out = "{";
  bool first = true;
  for (std::size_t i : *s) {
    out += (first ? "" : ",") + std::to_string(i + 1);
    first = false;
  }
  return out + "}";
}

bool write_to(const std::string& path, const std::string& data, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << data;
    return true;
  }
  std::ofstream f(path, std::ios::binary);
  f << data;
  return static_cast<bool>(f);
}

// check and quadratic need every entry
void require_full(const RawMatrix& raw) {
  for (std::size_t i = 0; i < raw.m; ++i)
    for (std::size_t j = 0; j < raw.m; ++j)
      if (!raw.rows[i][j].text)
        throw std::invalid_argument("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                    ") is a hole; this command needs a fully observed matrix");
}

// ---- check

template <class T>
int do_check(const RawMatrix& raw, const Config& c, Mode mode, const std::string& criterion, std::ostream& out) {
  const auto x = to_matrix<T>(raw, c.tol);
  std::vector<std::pair<std::string, Verdict>> runs;
  if (mode == Mode::pd) {
    runs.emplace_back("classic", check_pd_classic(x, c.tol));
  } else {
    if (criterion == "strong" || criterion == "both") runs.emplace_back("strong", check_psd_strong(x, c.tol));
    if (criterion == "classic" || criterion == "both")
      runs.emplace_back("classic", check_psd_classic(x, c.psd_cap, c.tol));
  }
  const bool agree = std::all_of(runs.begin(), runs.end(),
                                  [&](const auto& r) { return r.second.positive == runs.front().second.positive; });
  if (c.format == "json") {
    json j;
    if (runs.size() == 1) {
      j = verdict_json(runs.front().second, mode);
    } else {
      for (const auto& [name, v] : runs) j[name] = verdict_json(v, mode);
      j["agree"] = agree;
    }
    out << j.dump(2) << '\n';
  } else {
    for (const auto& [name, v] : runs) {
      out << name << ": " << mode_name(mode) << " " << (v.positive ? "yes" : "no") << ", det_evals "
          << v.stats.det_evaluations;
      if (v.witness) out << ", witness " << set_text(v.witness);
      out << '\n';
    }
    if (runs.size() > 1) out << (agree ? "verdicts agree" : "verdicts DISAGREE") << '\n';
  }
  if (!agree) return disagreement;
  return runs.front().second.positive ? ok : negative;
}

// ---- quadratic

std::vector<std::size_t> corner_order(std::size_t m, Pair p) {
  if (p.a >= m || p.b >= m || p.a == p.b) throw DimensionError("corner must be two distinct indices within 1.." + std::to_string(m));
  std::vector<std::size_t> order{p.a};
  for (std::size_t k = 0; k < m; ++k)
    if (k != p.a && k != p.b) order.push_back(k);
  order.push_back(p.b);
  return order;
}

template <class T>
int do_quadratic(const RawMatrix& raw, const Config& c, const std::optional<Pair>& corner, std::ostream& out) {
  const auto x0 = to_matrix<T>(raw, c.tol);
  const std::size_t m = x0.dim();
  if (m < 2) throw DimensionError("corner quadratic needs dimension >= 2");
  const auto order = corner_order(m, corner.value_or(Pair{0, m - 1}));
  const auto x = x0.reindexed(order);
  const auto q = corner_quadratic(x);
  const T lead = det(submatrix(x, IndexSet::range(0, m - 1)));
  const T trail = det(submatrix(x, IndexSet::range(1, m - 1)));
  const T gap = discriminant_identity_gap(x);
  bool gap_ok;
  if constexpr (ScalarTraits<T>::exact)
    gap_ok = sgn(gap) == 0;
  else
    gap_ok = std::fabs(gap) <= 1e-9 * std::max(1.0, std::fabs(q.discriminant()));
  const std::string at = "(" + std::to_string(order.front() + 1) + "," + std::to_string(order.back() + 1) + ")";
  if (c.format == "json") {
    json j = quadratic_json(q);
    j["corner"] = {order.front() + 1, order.back() + 1};
    j["det_leading"] = scalar_json(lead);
    j["det_trailing"] = scalar_json(trail);
    j["gap"] = scalar_json(gap);
    j["identity_holds"] = gap_ok;
    out << j.dump(2) << '\n';
  } else {
    out << "corner X" << at << "\n";
    out << "a = " << scalar_to_string(q.a) << "\nb = " << scalar_to_string(q.b) << "\nc = " << scalar_to_string(q.c)
        << "\n";
    out << "discriminant = " << scalar_to_string(q.discriminant()) << "\n";
    out << "det leading block = " << scalar_to_string(lead) << "\ndet trailing block = " << scalar_to_string(trail)
        << "\n";
    out << "identity gap = " << scalar_to_string(gap) << (gap_ok ? "" : "  (NONZERO)") << "\n";
  }
  return gap_ok ? ok : negative;
}

// ---- range

template <class T>
int do_range(const RawMatrix& raw, const Config& c, Pair e, Mode mode, std::ostream& out, std::ostream& err) {
  const auto p = to_partial<T>(raw, c.tol);
  const std::size_t m = p.dim();
  if (e.a >= m || e.b >= m || e.a == e.b)
    throw DimensionError("entry must be an off-diagonal position within 1.." + std::to_string(m));
  const Position pos = Position::of(e.a, e.b);
  if (!p.is_missing(pos.i, pos.j)) throw std::invalid_argument("entry " + pos.to_string() + " is not a hole");
  auto g = PatternGraph::of(p);
  g.add_edge(pos.i, pos.j);
  std::vector<IndexSet> blocks;
  for (const auto& cl : maximal_cliques(g))
    if (std::binary_search(cl.begin(), cl.end(), pos.i) && std::binary_search(cl.begin(), cl.end(), pos.j))
      blocks.push_back(cl);
  if (blocks.size() != 1) {
    err << "error: entry " << pos.to_string() << " is not the only hole of a single block (it lies in "
        << blocks.size() << " largest blocks whose other entries are known); use `complete` for several holes\n";
    return input_error;
  }
  const auto& block = blocks.front();
  std::vector<std::size_t> order{pos.i};
  for (std::size_t k : block)
    if (k != pos.i && k != pos.j) order.push_back(k);
  order.push_back(pos.j);
  const auto x = p.values().reindexed(order);
  Interval<T> iv;
  try {
    iv = mode == Mode::pd ? pd_corner_interval(x, c.tol) : psd_corner_interval(x, c.tol);
  } catch (const PreconditionError& ex) {
    const std::string msg = ex.what();
    err << "error: block " << block.to_string() << ": " << msg << "\n";
    return negative;
  }
  if (c.format == "json") {
    json j{{"entry", {pos.i + 1, pos.j + 1}},
           {"block", index_set_json(block)},
           {"mode", mode_name(mode)},
           {"interval", interval_json(iv)}};
    out << j.dump(2) << '\n';
  } else {
    out << "X" << pos.to_string() << " in " << iv.to_string() << "\n";
    out << "block " << set_text(block) << ", " << mode_name(mode) << "\n";
  }
  return ok;
}

// ---- complete

template <class T>
int do_complete(const RawMatrix& raw, const Config& c, Mode mode, std::size_t grid, const std::string& out_path,
                const std::optional<Pair>& region, const std::string& region_out, std::ostream& out,
                std::ostream& err) {
  const auto p = to_partial<T>(raw, c.tol);
  GridConfig g;
  g.points_per_axis = grid;
  g.mode = mode;
  g.exhaustive = false;
  g.tol = c.tol;
  const auto r = complete(p, g);
  const auto holes = p.missing();

  std::string report;
  if (c.format == "json") {
    json j{{"status", status_name(r.status)}, {"mode", mode_name(mode)}, {"grid", grid}};
    auto vals = json::array();
    for (std::size_t k = 0; k < r.values.size(); ++k)
      vals.push_back({{"entry", {holes[k].i + 1, holes[k].j + 1}}, {"value", scalar_json(r.values[k])}});
    j["values"] = vals;
    j["matrix"] = r.matrix ? matrix_json(*r.matrix) : json(nullptr);
    j["witness"] = index_set_json(r.witness);
    j["reduction"] = r.reduction.note;
    report = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "status: " << status_name(r.status);
    if (r.status == CompletionStatus::not_found_at_resolution) os << " (grid " << grid << ")";
    os << "\n";
    if (r.witness) os << "observed block " << set_text(r.witness) << " is not " << mode_name(mode) << "\n";
    if (!r.reduction.removed.empty()) os << r.reduction.note << "\n";
    for (std::size_t k = 0; k < r.values.size(); ++k)
      os << "x" << k + 1 << " " << holes[k].to_string() << " = " << scalar_to_string(r.values[k]) << "\n";
    if (r.matrix) os << matrix_to_text(*r.matrix);
    report = os.str();
  }
  // the matrix file gets only the completed matrix
  if (!out_path.empty()) {
    if (r.matrix) {
      const std::string body = c.format == "json" ? matrix_json(*r.matrix).dump(2) + "\n" : matrix_to_text(*r.matrix);
      if (!write_to(out_path, body, out)) {
        err << "error: cannot write '" << out_path << "'\n";
        return input_error;
      }
    }
    std::string first_line = report.substr(0, report.find('\n') + 1);
    out << (c.format == "json" ? report : first_line);
  } else {
    out << report;
  }

  if (region) {
    if (p.has_missing_diagonal()) throw PreconditionError("region export needs every diagonal entry");
    const auto reg = feasible_region(p, region->a, region->b, g);
    if (!write_to(region_out, region_csv(reg), out)) {
      err << "error: cannot write '" << region_out << "'\n";
      return input_error;
    }
  }
  switch (r.status) {
    case CompletionStatus::completed:
      return ok;
    case CompletionStatus::certified_infeasible:
      return negative;
    default:
      return not_found;
  }
}

// ---- sdp-cases

template <class T>
json evaluate_json(const SymMatrix<T>& x, const Config& c, std::string& text) {
  json arr = json::array();
  std::ostringstream os;
  for (const auto& s : psd_cases_m4()) {
    const auto e = evaluate_case(x, s, c.tol);
    json rep = json::array();
    for (const auto& o : e.report) rep.push_back({{"constraint", o.constraint.to_string()}, {"holds", o.holds}});
    arr.push_back({{"case", s.id}, {"holds", e.holds}, {"report", rep}});
    os << "case " << s.id << ": " << (e.holds ? "true" : "false") << "\n";
  }
  const auto cover = psd_case_cover_check(x, c.tol);
  os << "covered: " << (cover.covered ? "true" : "false") << "\n";
  text = os.str();
  return {{"cases", arr}, {"covered", cover.covered}};
}

int do_sdp_cases(const Config& c, std::size_t m, const std::string& evaluate, std::ostream& out) {
  if (m != 4) throw DimensionError("case systems are tabulated for m = 4 only, got m = " + std::to_string(m));
  const auto cases = psd_cases_m4();
  if (!evaluate.empty()) {
    const auto raw = read_matrix(read_file(evaluate));
    if (raw.m != 4) throw DimensionError("--evaluate needs a 4x4 matrix, got " + std::to_string(raw.m) + "x" + std::to_string(raw.m));
    std::string text;
    json j;
    if (use_exact(c, raw.m))
      j = evaluate_json(to_matrix<Rational>(raw, c.tol), c, text);
    else
      j = evaluate_json(to_matrix<double>(raw, c.tol), c, text);
    out << (c.format == "json" ? j.dump(2) + "\n" : text);
    return ok;
  }
  if (c.format == "csv") {
    out << cases_to_csv(cases);
  } else if (c.format == "json") {
    out << cases_to_json(cases) << '\n';
  } else {
    for (const auto& s : cases) {
      out << "case " << s.id << ": " << s.description << "\n";
      for (const auto& k : s.constraints) out << "  " << k.to_string() << "\n";
    }
  }
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Determinant-based PD/PSD certification and completion"};
  app.name("psdcert");
  app.require_subcommand(1);
  app.set_version_flag("--version", "psdcert 0.1.0");

  Config c;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--backend", c.backend, "exact, float, or auto (exact up to m = 10)")
        ->check(CLI::IsMember({"auto", "exact", "float"}));
    sub->add_option("--tol-abs", c.tol.abs, "absolute zero band (float backend)")->check(CLI::NonNegativeNumber);
    sub->add_option("--tol-rel", c.tol.rel, "relative zero band (float backend)")->check(CLI::NonNegativeNumber);
    sub->add_option("--psd-cap", c.psd_cap, "largest m for the classic all-minors check");
  };

  std::string file, mode_s = "psd", criterion = "strong", corner_s, entry_s, out_path, region_s, region_out, evaluate;
  std::size_t grid = GridConfig{}.points_per_axis, m_cases = 4;

  auto* check = app.add_subcommand("check", "certify a fully observed matrix");
  check->add_option("file", file, "matrix file (text or JSON)")->required();
  check->add_option("--mode", mode_s)->check(CLI::IsMember({"pd", "psd"}));
  check->add_option("--criterion", criterion)->check(CLI::IsMember({"strong", "classic", "both"}));
  check->add_option("--format", c.format)->check(CLI::IsMember({"text", "json"}));
  add_common(check);

  auto* quad = app.add_subcommand("quadratic", "determinant as a quadratic in one corner entry");
  quad->add_option("file", file)->required();
  quad->add_option("--corner", corner_s, "i,j moved to (1,m); default 1,m");
  quad->add_option("--format", c.format)->check(CLI::IsMember({"text", "json"}));
  add_common(quad);

  auto* range = app.add_subcommand("range", "admissible interval of a single hole");
  range->add_option("file", file)->required();
  range->add_option("--entry", entry_s, "i,j of the hole")->required();
  range->add_option("--mode", mode_s)->check(CLI::IsMember({"pd", "psd"}));
  range->add_option("--format", c.format)->check(CLI::IsMember({"text", "json"}));
  add_common(range);

  auto* comp = app.add_subcommand("complete", "PD/PSD completion by grid search");
  comp->add_option("file", file)->required();
  comp->add_option("--mode", mode_s)->check(CLI::IsMember({"pd", "psd"}));
  comp->add_option("--grid", grid, "grid points per axis")->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  comp->add_option("--out", out_path, "write the completed matrix here");
  comp->add_option("--region", region_s, "two variable labels k,l (1-based, label order)");
  comp->add_option("--region-out", region_out, "CSV for --region; stdout if omitted");
  comp->add_option("--format", c.format)->check(CLI::IsMember({"text", "json"}));
  add_common(comp);

  auto* cases = app.add_subcommand("sdp-cases", "elementwise constraint systems for 4x4 PSD");
  cases->add_option("--m", m_cases);
  cases->add_option("--format", c.format)->check(CLI::IsMember({"text", "json", "csv"}));
  cases->add_option("--evaluate", evaluate, "matrix file to test against every case");
  add_common(cases);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : input_error;
  }
  if (c.psd_cap < 1) {
    err << "error: --psd-cap must be at least 1\n";
    return input_error;
  }
  // sdp-cases defaults to JSON
  if (*cases && cases->count("--format") == 0) c.format = "json";

  try {
    const Mode mode = parse_mode(mode_s);
    if (*cases) return do_sdp_cases(c, m_cases, evaluate, out);
    const auto raw = read_matrix(read_file(file));
    const bool exact = use_exact(c, raw.m);
    if (*check || *quad) require_full(raw);
    if (*check)
      return exact ? do_check<Rational>(raw, c, mode, criterion, out) : do_check<double>(raw, c, mode, criterion, out);
    if (*quad) {
      std::optional<Pair> corner;
      if (!corner_s.empty()) corner = parse_pair(corner_s, "--corner");
      return exact ? do_quadratic<Rational>(raw, c, corner, out) : do_quadratic<double>(raw, c, corner, out);
    }
    if (*range) {
      const auto e = parse_pair(entry_s, "--entry");
      return exact ? do_range<Rational>(raw, c, e, mode, out, err) : do_range<double>(raw, c, e, mode, out, err);
    }
    if (*comp) {
      std::optional<Pair> region;
      if (!region_s.empty()) region = parse_pair(region_s, "--region");
      return exact ? do_complete<Rational>(raw, c, mode, grid, out_path, region, region_out, out, err)
                   : do_complete<double>(raw, c, mode, grid, out_path, region, region_out, out, err);
    }
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return negative;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  }
  return input_error;
}

}  // namespace psdcert::cli
