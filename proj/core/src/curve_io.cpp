#include "hypflow/curve_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "hypflow/error.hpp"

namespace hypflow::io {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  while (first < last && (*first == ' ' || *first == '\t')) ++first;
  while (last > first && (last[-1] == ' ' || last[-1] == '\t' || last[-1] == '\r')) --last;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) fail(ErrorKind::io, "cannot parse number '" + s + "'");
  return v;
}

void write_curve_csv(std::ostream& os, const DiscreteCurve& curve) {
  os << "param,x,y\n";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    os << format_double(curve.params[i]) << ',' << format_double(curve.nodes[i].x) << ','
       << format_double(curve.nodes[i].y) << '\n';
  }
}

std::string curve_csv(const DiscreteCurve& curve) {
  std::ostringstream os;
  write_curve_csv(os, curve);
  return os.str();
}

DiscreteCurve read_curve_csv(std::istream& is, bool closed) {
  std::string line;
  if (!std::getline(is, line)) fail(ErrorKind::io, "empty curve csv");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "param,x,y") fail(ErrorKind::io, "curve csv must start with header param,x,y");
  std::vector<double> params;
  std::vector<cplx> pts;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    std::istringstream row(line);
    std::string a, b, c;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c)) {
      fail(ErrorKind::io, "malformed csv row: " + line);
    }
    params.push_back(parse_double(a));
    pts.emplace_back(parse_double(b), parse_double(c));
  }
  return hyp2::make_curve(std::move(params), pts, closed);
}

DiscreteCurve load_curve_csv(const std::string& path, bool closed) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io, "cannot open " + path);
  return read_curve_csv(in, closed);
}

void save_curve_csv(const std::string& path, const DiscreteCurve& curve) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::io, "cannot write " + path);
  write_curve_csv(out, curve);
}

namespace {

nlohmann::ordered_json vec_json(const HVector& v) {
  return {{"base", {v.base.x, v.base.y}}, {"v", {v.vx, v.vy}}};
}

HVector vec_from(const nlohmann::json& j) {
  return {{j.at("base").at(0).get<double>(), j.at("base").at(1).get<double>()}, j.at("v").at(0).get<double>(),
          j.at("v").at(1).get<double>()};
}

}  // namespace

std::string curve_json(const DiscreteCurve& curve, const Metadata& meta) {
  nlohmann::ordered_json j;
  j["closed"] = curve.closed;
  j["params"] = curve.params;
  auto nodes = nlohmann::ordered_json::array();
  for (const HPoint& p : curve.nodes) nodes.push_back({p.x, p.y});
  j["nodes"] = std::move(nodes);
  if (!curve.closed) {
    j["boundary_tangents"] = {vec_json(curve.boundary_tangents[0]), vec_json(curve.boundary_tangents[1])};
  }
  if (!curve.corners.empty()) j["corners"] = curve.corners;
  auto m = nlohmann::ordered_json::object();
  for (const auto& [k, v] : meta) m[k] = v;
  j["metadata"] = std::move(m);
  return j.dump(2);
}

DiscreteCurve parse_curve_json(const std::string& text, Metadata* meta) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::io, std::string("invalid curve json: ") + e.what());
  }
  try {
    DiscreteCurve c;
    c.closed = j.value("closed", false);
    c.params = j.at("params").get<std::vector<double>>();
    for (const auto& n : j.at("nodes")) c.nodes.push_back({n.at(0).get<double>(), n.at(1).get<double>()});
    if (j.contains("corners")) c.corners = j.at("corners").get<std::vector<std::size_t>>();
    c.validate();
    if (!c.closed) {
      if (j.contains("boundary_tangents")) {
        c.boundary_tangents = {vec_from(j["boundary_tangents"][0]), vec_from(j["boundary_tangents"][1])};
      } else {
        hyp2::estimate_boundary_tangents(c);
      }
    }
    if (meta && j.contains("metadata")) {
      for (const auto& [k, v] : j["metadata"].items()) (*meta)[k] = v.get<double>();
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::io, std::string("curve json missing fields: ") + e.what());
  }
}

}  // namespace hypflow::io
