#include "pentagram/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace pentagram {

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::InvalidArgument, "write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorCode::InvalidArgument, "cannot rename onto " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Parse, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json invariant_to_json(const PolyInvariant& inv) {
  const bool o = inv.family == Family::O;
  json terms = json::array();
  for (const auto& t : inv.terms) {
    json factors = json::array();
    for (const auto& f : t.factors) {
      const bool triple = f.kind == Factor::Kind::Triple;
      factors.push_back(std::string(triple ? (o ? "X_" : "Y_") : (o ? "x_" : "y_")) + std::to_string(f.index));
    }
    std::string mono;
    for (const auto& [slot, p] : t.exponents) {
      if (!mono.empty()) mono += "*";
      mono += (slot < inv.n ? "x_" : "y_") + std::to_string(slot % inv.n);
      if (p > 1) mono += "^" + std::to_string(p);
    }
    terms.push_back({{"sign", t.sign}, {"factors", factors}, {"monomial", mono}});
  }
  return {{"name", inv.name()}, {"n", inv.n}, {"k", inv.k}, {"family", family_prefix(inv.family)},
          {"term_count", inv.terms.size()}, {"terms", terms}};
}

std::string orbit_csv_header(std::size_t n, const std::vector<std::string>& invariant_names) {
  std::string h = "step";
  for (std::size_t i = 0; i < n; ++i) h += ",x_" + std::to_string(i);
  for (std::size_t i = 0; i < n; ++i) h += ",y_" + std::to_string(i);
  for (const auto& name : invariant_names) h += "," + name;
  h += ",drift,dist\n";
  return h;
}

std::string orbit_csv_row(const OrbitRecord& rec) {
  std::string r = std::to_string(rec.step);
  for (double v : rec.z.x()) r += "," + format_scalar(v);
  for (double v : rec.z.y()) r += "," + format_scalar(v);
  for (double v : rec.invariants) r += "," + format_scalar(v);
  r += "," + format_scalar(rec.drift) + "," + format_scalar(rec.distance) + "\n";
  return r;
}

std::string curve_to_csv(const SampledCurve& c) {
  std::string out = "parameter,x,y\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double t = static_cast<double>(i) * c.spacing();
    out += format_scalar(t) + "," + format_scalar(c.samples()[i][0]) + "," + format_scalar(c.samples()[i][1]) + "\n";
  }
  return out;
}

SampledCurve curve_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<double> ts;
  std::vector<Point2> pts;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (lineno == 1 && line.find_first_not_of("0123456789+-.eE, \t\r") != std::string::npos) continue;
    std::array<double, 3> v{};
    std::istringstream ls(line);
    std::string cell;
    int k = 0;
    while (std::getline(ls, cell, ',') && k < 3) {
      char* end = nullptr;
      v[k] = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str()) throw Error(ErrorCode::Parse, "bad number on line " + std::to_string(lineno));
      ++k;
    }
    if (k != 3) throw Error(ErrorCode::Parse, "expected parameter,x,y on line " + std::to_string(lineno));
    ts.push_back(v[0]);
    pts.push_back({v[1], v[2]});
  }
  if (pts.size() < 8) throw Error(ErrorCode::Parse, "curve needs at least 8 samples");
  const double h = (ts.back() - ts.front()) / static_cast<double>(ts.size() - 1);
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (std::abs(ts[i] - ts[i - 1] - h) > 1e-6 * std::abs(h)) {
      throw Error(ErrorCode::Parse, "parameter spacing is not uniform");
    }
  }
  return SampledCurve(std::move(pts), h * static_cast<double>(ts.size()));
}

std::string curves_to_svg(const std::vector<const SampledCurve*>& curves, const std::vector<std::string>& colors) {
  double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
  double hi_x = -lo_x, hi_y = -lo_x;
  for (const auto* c : curves)
    for (const auto& p : c->samples()) {
      lo_x = std::min(lo_x, p[0]);
      hi_x = std::max(hi_x, p[0]);
      lo_y = std::min(lo_y, p[1]);
      hi_y = std::max(hi_y, p[1]);
    }
  const double size = 512.0, margin = 16.0;
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
  const double s = (size - 2 * margin) / span;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const auto* c = curves[k];
    out << "<" << (c->monodromy() ? "polyline" : "polygon") << " fill=\"none\" stroke=\""
        << (k < colors.size() ? colors[k] : "black") << "\" stroke-width=\"1\" points=\"";
    for (const auto& p : c->samples()) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3f,%.3f ", margin + (p[0] - lo_x) * s, size - margin - (p[1] - lo_y) * s);
      out << buf;
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace pentagram
