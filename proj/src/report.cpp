#include "varbound/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <unistd.h>

namespace varbound::report {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void dump_into(const Json& j, std::ostringstream& os, int indent) {
  const std::string pad(indent + 2, ' ');
  const std::string close(indent, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(key).dump() << ": ";
        dump_into(value, os, indent + 2);
      }
      os << "\n" << close << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Short arrays of scalars stay on one line.
      bool flat = j.size() <= 4;
      for (const auto& v : j) flat = flat && !v.is_structured();
      if (flat) {
        os << "[";
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k) os << ", ";
          dump_into(j[k], os, indent);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) os << ",\n";
        os << pad;
        dump_into(j[k], os, indent + 2);
      }
      os << "\n" << close << "]";
      return;
    }
    case Json::value_t::number_float:
      os << format_double(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

Json point_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(v[k]);
  return a;
}

}  // namespace

std::string dump(const Json& j) {
  std::ostringstream os;
  dump_into(j, os, 0);
  os << "\n";
  return os.str();
}

Json bound_json(const BoundResult& r) {
  Json j;
  j["value"] = r.value;
  j["error"] = r.error;
  j["method"] = to_string(r.method);
  j["minimizer"] = Json::array({r.min_x, r.min_y});
  Json w = Json::array();
  for (Eigen::Index k = 0; k < r.witness.size(); ++k) w.push_back(Json::array({r.witness[k].real(), r.witness[k].imag()}));
  j["witness"] = w;
  Json meta = Json::object();
  for (const auto& [k, v] : r.metadata) meta[k] = v;
  j["metadata"] = meta;
  return j;
}

Json exact_json(const exact::ExactResult& r) {
  Json j = bound_json(r.bound);
  j["polynomial"] = r.factor.to_string();
  j["order"] = r.factor.degree();
  if (r.exact_value) j["exact_value"] = exact::to_string(*r.exact_value);
  j["eliminant"] = r.eliminant.to_string();
  j["polynomial_terms"] = Json::parse(r.factor.to_polynomial({"λ"}, 0).to_json());
  return j;
}

Json polytope_json(const JNRPolytope& p) {
  Json j;
  j["dimension"] = p.dimension;
  Json pts = Json::array();
  for (std::size_t k = 0; k < p.points.size(); ++k) {
    Json row;
    row["direction"] = point_json(p.directions[k]);
    row["point"] = point_json(p.points[k]);
    if (k < p.shades.size()) row["shade"] = p.shades[k];
    pts.push_back(row);
  }
  j["points"] = pts;
  if (!p.shades.empty()) {
    double lo = p.shades.front();
    for (double s : p.shades) lo = std::min(lo, s);
    j["min_shade"] = lo;
  }
  return j;
}

std::string polytope_csv(const JNRPolytope& p) {
  std::ostringstream os;
  const bool d3 = p.dimension == 3;
  os << (d3 ? "ux,uy,uz,x,y,z,shade\n" : "theta,x,y\n");
  for (std::size_t k = 0; k < p.points.size(); ++k) {
    const auto& d = p.directions[k];
    if (d3) {
      os << format_double(d[0]) << ',' << format_double(d[1]) << ',' << format_double(d[2]);
    } else {
      os << format_double(std::atan2(d[1], d[0]));
    }
    for (Eigen::Index c = 0; c < p.points[k].size(); ++c) os << ',' << format_double(p.points[k][c]);
    if (d3) os << ',' << format_double(k < p.shades.size() ? p.shades[k] : NAN);
    os << '\n';
  }
  return os.str();
}

Json dual_json(const DualCurve& c) {
  Json j;
  j["shift"] = Json::array({c.shift_x, c.shift_y});
  Json pts = Json::array();
  for (const auto& p : c.points) pts.push_back(Json::array({p[0], p[1]}));
  j["points"] = pts;
  return j;
}

std::string dual_csv(const DualCurve& c) {
  std::ostringstream os;
  os << "theta,u,v\n";
  for (const auto& p : c.points)
    os << format_double(std::atan2(p[1], p[0])) << ',' << format_double(p[0]) << ',' << format_double(p[1]) << '\n';
  return os.str();
}

Json urange_json(const UncertaintyRegionApprox& u) {
  Json j;
  Json cells = Json::array();
  for (const auto& poly : u.cells) {
    Json c = Json::array();
    for (const auto& p : poly) c.push_back(Json::array({p[0], p[1]}));
    cells.push_back(c);
  }
  j["cells"] = cells;
  j["delta"] = Json::array({u.delta_x, u.delta_y});
  return j;
}

std::string urange_csv(const UncertaintyRegionApprox& u) {
  std::ostringstream os;
  bool first = true;
  for (const auto& poly : u.cells) {
    if (poly.empty()) continue;
    if (!first) os << '\n';
    first = false;
    for (const auto& p : poly) os << format_double(p[0]) << ',' << format_double(p[1]) << '\n';
    os << format_double(poly.front()[0]) << ',' << format_double(poly.front()[1]) << '\n';
  }
  return os.str();
}

std::string gnuplot_script(PlotKind kind, const std::string& data_file, const std::string& title) {
  std::ostringstream os;
  os << "set datafile separator ','\n";
  os << "set title \"" << title << "\"\n";
  os << "set size ratio -1\n";
  switch (kind) {
    case PlotKind::Jnr2d:
      os << "set xlabel '<F1>'\nset ylabel '<F2>'\n";
      os << "plot '" << data_file << "' skip 1 using 2:3 with linespoints pt 7 ps 0.3 notitle\n";
      break;
    case PlotKind::Jnr3d:
      os << "set size noratio\nset view equal xyz\nset xlabel '<X>'\nset ylabel '<Y>'\nset zlabel '<X^2+Y^2>'\n";
      os << "set palette rgbformulae 33,13,10\nset cblabel 'variance sum'\n";
      os << "splot '" << data_file << "' skip 1 using 4:5:6:7 with points pt 7 ps 0.4 palette notitle\n";
      break;
    case PlotKind::Dual2d:
      os << "set xlabel 'u'\nset ylabel 'v'\n";
      os << "plot '" << data_file << "' skip 1 using 2:3 with lines notitle\n";
      break;
    case PlotKind::Urange:
      os << "set xlabel 'Var X'\nset ylabel 'Var Y'\n";
      os << "plot '" << data_file << "' using 1:2 with lines notitle\n";
      break;
  }
  return os.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  std::string tmpl = (dir / ("." + path.filename().string() + ".XXXXXX")).string();
  const int fd = ::mkstemp(tmpl.data());
  if (fd < 0) throw std::system_error(errno, std::generic_category(), "cannot create temporary file in " + dir.string());
  const char* data = content.data();
  std::size_t left = content.size();
  while (left > 0) {
    const ssize_t n = ::write(fd, data, left);
    if (n < 0) {
      const int err = errno;
      ::close(fd);
      std::filesystem::remove(tmpl);
      throw std::system_error(err, std::generic_category(), "write failed for " + path.string());
    }
    data += n;
    left -= static_cast<std::size_t>(n);
  }
  if (::close(fd) != 0) {
    const int err = errno;
    std::filesystem::remove(tmpl);
    throw std::system_error(err, std::generic_category(), "close failed for " + path.string());
  }
  std::filesystem::permissions(tmpl, std::filesystem::perms::owner_read | std::filesystem::perms::owner_write |
                                         std::filesystem::perms::group_read | std::filesystem::perms::others_read);
  std::filesystem::rename(tmpl, path);
}

}  // namespace varbound::report
