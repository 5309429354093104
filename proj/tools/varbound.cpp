// varbound: variance-sum bounds and joint numerical range data from the
// command line.
//
//   varbound bound X.json Y.json --method certified --tol 1e-4
//   varbound bound --angmom 3/2 --method exact
//   varbound table1 --j 1/2..10 --method numeric
//   varbound jnr3d --angmom 3/2 --dirs 2000 --gnuplot --out fig1
//
// Exit codes: 0 success, 1 invalid input, 2 certification failure,
// 3 exact-solver budget exceeded.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "varbound/bound_numeric.hpp"
#include "varbound/exact/bound_exact.hpp"
#include "varbound/jnr_geom.hpp"
#include "varbound/matrix_io.hpp"
#include "varbound/report.hpp"
#include "varbound/sector_bound.hpp"

namespace {

using namespace varbound;
using report::Json;

constexpr int kExitInput = 1;
constexpr int kExitCertification = 2;
constexpr int kExitBudget = 3;

struct RunConfig {
  double tolerance = 1e-9;
  int multistarts = 81;
  int directions = 720;
  int precision_bits = 256;
  std::uint64_t seed = 42;
  std::string format = "json";
};

struct Inputs {
  std::vector<std::string> files;
  std::string angmom;
  std::string weights;
  std::string out;
  bool gnuplot = false;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "3/2" or "1.5" -> 3.
int parse_two_j(const std::string& text) {
  exact::Rational j;
  try {
    j = exact::parse_rational(text);
  } catch (const std::exception&) {
    throw InputError("invalid angular momentum '" + text + "'");
  }
  const exact::Rational two_j = 2 * j;
  if (two_j.get_den() != 1 || two_j <= 0 || two_j > 200)
    throw InputError("angular momentum must be a positive half-integer, got '" + text + "'");
  return static_cast<int>(two_j.get_num().get_si());
}

std::string j_label(int two_j) { return two_j % 2 == 0 ? std::to_string(two_j / 2) : std::to_string(two_j) + "/2"; }

std::pair<double, double> parse_weights(const std::string& text) {
  if (text.empty()) return {1.0, 1.0};
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw InputError("--weights expects 'a,b'");
  try {
    const double a = std::stod(text.substr(0, comma));
    const double b = std::stod(text.substr(comma + 1));
    if (!(a > 0) || !(b > 0)) throw InputError("weights must be positive");
    return {a, b};
  } catch (const std::invalid_argument&) {
    throw InputError("--weights expects two numbers 'a,b'");
  }
}

/// (X, Y) from two matrix files or from --angmom; two_j is set for the latter.
std::pair<HermitianOperator, HermitianOperator> load_pair(const Inputs& in, std::optional<int>& two_j) {
  if (!in.angmom.empty()) {
    if (!in.files.empty()) throw InputError("give either matrix files or --angmom, not both");
    two_j = parse_two_j(in.angmom);
    const auto j = angular_momentum(*two_j);
    return {j.jx, j.jy};
  }
  if (in.files.size() != 2) throw InputError("expected two matrix files X.json Y.json (or --angmom j)");
  HermitianOperator x = read_matrix_file(in.files[0]);
  HermitianOperator y = read_matrix_file(in.files[1]);
  if (x.dim() != y.dim()) throw InputError("X and Y have different dimensions");
  return {x, y};
}

NumericConfig numeric_config(const RunConfig& rc) {
  NumericConfig nc;
  nc.grid = std::max(1, static_cast<int>(std::lround(std::sqrt(static_cast<double>(rc.multistarts)))));
  return nc;
}

void emit(const Inputs& in, const std::string& content) {
  if (in.out.empty()) {
    std::cout << content;
  } else {
    report::write_atomic(in.out, content);
  }
}

// Writes <out>.csv + <out>.gp when --gnuplot is set, otherwise the document
// in the requested format.
void emit_figure(const Inputs& in, const RunConfig& rc, const Json& json, const std::string& csv,
                 report::PlotKind kind, const std::string& title) {
  if (in.gnuplot || rc.format == "gnuplot") {
    if (in.out.empty()) throw InputError("--gnuplot needs --out <basename>");
    const std::string data = in.out + ".csv";
    const std::string script = in.out + ".gp";
    report::write_atomic(data, csv);
    report::write_atomic(script, report::gnuplot_script(kind, std::filesystem::path(data).filename().string(), title));
    return;
  }
  emit(in, rc.format == "csv" ? csv : report::dump(json));
}

std::string bound_csv(const Json& j) {
  std::ostringstream os;
  os << "value,error,method,min_x,min_y\n";
  os << report::format_double(j["value"].get<double>()) << ',' << report::format_double(j["error"].get<double>())
     << ',' << j["method"].get<std::string>() << ',' << report::format_double(j["minimizer"][0].get<double>()) << ','
     << report::format_double(j["minimizer"][1].get<double>()) << '\n';
  return os.str();
}

int cmd_bound(const Inputs& in, const RunConfig& rc, const std::string& method) {
  std::optional<int> two_j;
  auto [x, y] = load_pair(in, two_j);
  const auto [a, b] = parse_weights(in.weights);
  Json j;
  if (method == "numeric") {
    j = report::bound_json(bound_numeric(WeightedPair(x, y, a, b), numeric_config(rc)));
  } else if (method == "certified") {
    // a Var(X) + b Var(Y) = Var(√a X) + Var(√b Y).
    j = report::bound_json(certified_bound_auto(std::sqrt(a) * x, std::sqrt(b) * y, rc.tolerance));
  } else if (method == "exact") {
    if (a != 1.0 || b != 1.0) throw InputError("the exact method supports unit weights only");
    exact::ExactConfig ec;
    ec.precision_bits = rc.precision_bits;
    ec.numeric = numeric_config(rc);
    if (two_j) {
      j = report::exact_json(exact::bound_exact_angular(*two_j, ec));
    } else {
      j = report::exact_json(exact::bound_exact(x, y, ec));
    }
  } else {
    throw InputError("unknown method '" + method + "'");
  }
  if (two_j) j["j"] = j_label(*two_j);
  j["seed"] = rc.seed;
  emit(in, rc.format == "csv" ? bound_csv(j) : report::dump(j));
  return 0;
}

std::vector<int> parse_j_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    if (item.empty()) continue;
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_two_j(item));
      continue;
    }
    const int lo = parse_two_j(item.substr(0, dots));
    const int hi = parse_two_j(item.substr(dots + 2));
    for (int t = lo; t <= hi; ++t) out.push_back(t);
  }
  return out;
}

int cmd_table1(const Inputs& in, const RunConfig& rc, const std::string& method, const std::string& js) {
  if (method != "numeric" && method != "exact") throw InputError("table1 supports --method numeric or exact");
  const auto list = parse_j_list(js);
  Json rows = Json::array();
  int worst = 0;
  for (int two_j : list) {
    Json row;
    row["j"] = j_label(two_j);
    try {
      if (method == "numeric") {
        const auto j = angular_momentum(two_j);
        row["bound"] = bound_numeric(WeightedPair(j.jx, j.jy), numeric_config(rc)).value;
      } else {
        exact::ExactConfig ec;
        ec.precision_bits = rc.precision_bits;
        ec.numeric = numeric_config(rc);
        const auto r = exact::bound_exact_angular(two_j, ec);
        row["bound"] = r.bound.value;
        row["order"] = r.factor.degree();
        row["expected_order"] = exact::minimal_poly_degree_check(two_j);
        row["polynomial"] = r.factor.to_string();
      }
      row["status"] = "ok";
    } catch (const exact::BudgetExceeded& e) {
      row["status"] = std::string("budget exceeded: ") + e.what();
      worst = std::max(worst, kExitBudget);
    } catch (const exact::CertificationFailure& e) {
      row["status"] = std::string("certification failed: ") + e.what();
      worst = std::max(worst, kExitCertification);
    } catch (const std::exception& e) {
      row["status"] = std::string("error: ") + e.what();
      worst = std::max(worst, kExitCertification);
    }
    rows.push_back(row);
  }
  if (rc.format == "csv") {
    std::ostringstream os;
    os << "j,bound,order,status\n";
    for (const auto& r : rows)
      os << r["j"].get<std::string>() << ',' << (r.contains("bound") ? report::format_double(r["bound"].get<double>()) : "")
         << ',' << (r.contains("order") ? std::to_string(r["order"].get<int>()) : "") << ",\""
         << r["status"].get<std::string>() << "\"\n";
    emit(in, os.str());
  } else {
    Json doc;
    doc["method"] = method;
    doc["rows"] = rows;
    emit(in, report::dump(doc));
  }
  return worst;
}

int cmd_geometry(const std::string& which, const Inputs& in, const RunConfig& rc, int subdivide) {
  std::optional<int> two_j;
  auto [x, y] = load_pair(in, two_j);
  const std::string title = two_j ? which + " j=" + j_label(*two_j) : which;
  if (which == "jnr2d") {
    const auto p = jnr2d(x, y, rc.directions);
    emit_figure(in, rc, report::polytope_json(p), report::polytope_csv(p), report::PlotKind::Jnr2d, title);
  } else if (which == "jnr3d") {
    const auto p = jnr3d_variance_surface(x, y, rc.directions);
    emit_figure(in, rc, report::polytope_json(p), report::polytope_csv(p), report::PlotKind::Jnr3d, title);
  } else if (which == "dual2d") {
    const auto c = dual2d(x, y, rc.directions);
    emit_figure(in, rc, report::dual_json(c), report::dual_csv(c), report::PlotKind::Dual2d, title);
  } else {
    if (subdivide < 1) throw InputError("--subdivide must be positive");
    auto refine = [subdivide](const HermitianOperator& op) {
      const Grid g = Grid::minimal(op);
      std::vector<double> pts;
      for (std::size_t k = 0; k + 1 < g.size(); ++k)
        for (int s = 0; s < subdivide; ++s)
          pts.push_back(g.points()[k] + (g.points()[k + 1] - g.points()[k]) * s / subdivide);
      pts.push_back(g.points().back());
      return Grid(pts);
    };
    const auto u = uncertainty_range_approx(x, y, refine(x), refine(y), rc.directions);
    emit_figure(in, rc, report::urange_json(u), report::urange_csv(u), report::PlotKind::Urange, title);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variance-sum uncertainty bounds and joint numerical range geometry"};
  app.require_subcommand(1);
  RunConfig rc;
  Inputs in;
  std::string method = "numeric";
  std::string js = "1/2..10";
  int subdivide = 1;

  auto common = [&](CLI::App* sub, bool with_files) {
    if (with_files) sub->add_option("matrices", in.files, "X.json Y.json");
    sub->add_option("--angmom", in.angmom, "spin pair (J_X, J_Y) for j, e.g. 3/2 or 1.5");
    sub->add_option("--tol", rc.tolerance, "target error for certified bounds")->check(CLI::PositiveNumber);
    sub->add_option("--dirs", rc.directions, "number of sweep directions")->check(CLI::PositiveNumber);
    sub->add_option("--precision", rc.precision_bits, "interpolation precision in bits")->check(CLI::Range(128, 1 << 16));
    sub->add_option("--seed", rc.seed, "seed recorded with the run");
    sub->add_option("--format", rc.format, "json, csv or gnuplot")->check(CLI::IsMember({"json", "csv", "gnuplot"}));
    sub->add_option("--out", in.out, "output path (basename with --gnuplot)");
  };

  auto* bound = app.add_subcommand("bound", "state-independent bound on a Var(X) + b Var(Y)");
  common(bound, true);
  bound->add_option("--method", method, "numeric, certified or exact")
      ->check(CLI::IsMember({"numeric", "certified", "exact"}));
  bound->add_option("--weights", in.weights, "a,b");

  auto* table = app.add_subcommand("table1", "bounds for a list of spins");
  common(table, false);
  table->add_option("--method", method, "numeric or exact")->check(CLI::IsMember({"numeric", "exact"}));
  table->add_option("--j", js, "comma list of spins, ranges as lo..hi in steps of 1/2");

  std::vector<std::pair<std::string, CLI::App*>> geometry;
  for (const char* name : {"jnr2d", "jnr3d", "dual2d", "urange"}) {
    auto* sub = app.add_subcommand(name, std::string(name) + " figure data");
    common(sub, true);
    sub->add_flag("--gnuplot", in.gnuplot, "write <out>.csv and a gnuplot script <out>.gp");
    if (std::string(name) == "urange") sub->add_option("--subdivide", subdivide, "split each spectral gap into k bands");
    geometry.emplace_back(name, sub);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (*bound) return cmd_bound(in, rc, method);
    if (*table) return cmd_table1(in, rc, method, js);
    for (const auto& [name, sub] : geometry)
      if (*sub) return cmd_geometry(name, in, rc, subdivide);
  } catch (const exact::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const exact::CertificationFailure& e) {
    std::cerr << "certification failed: " << e.what() << "\n";
    for (const auto& c : e.candidates())
      std::cerr << "  candidate " << c.root.value << " (" << c.factor.to_string() << ") real="
                << (c.real_solution ? "yes" : "no") << " agrees=" << (c.agrees ? "yes" : "no") << "\n";
    return kExitCertification;
  } catch (const GridCapExceeded& e) {
    std::cerr << "certification failed: " << e.what() << " (achieved error " << e.achieved_error() << ")\n";
    return kExitCertification;
  } catch (const exact::PositiveDimensional& e) {
    std::cerr << "certification failed: " << e.what() << "\n";
    return kExitCertification;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
