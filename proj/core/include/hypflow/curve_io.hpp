#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "hypflow/hyp2.hpp"

namespace hypflow::io {

// Shortest decimal that round-trips the double.
std::string format_double(double v);
double parse_double(const std::string& s);

// CSV with header `param,x,y`, one node per row.
void write_curve_csv(std::ostream& os, const DiscreteCurve& curve);
std::string curve_csv(const DiscreteCurve& curve);
// Boundary tangents are re-estimated from the nodes.
DiscreteCurve read_curve_csv(std::istream& is, bool closed = false);
DiscreteCurve load_curve_csv(const std::string& path, bool closed = false);
void save_curve_csv(const std::string& path, const DiscreteCurve& curve);

using Metadata = std::map<std::string, double>;

// JSON record with nodes, boundary tangents, closed flag and numeric metadata.
std::string curve_json(const DiscreteCurve& curve, const Metadata& meta = {});
DiscreteCurve parse_curve_json(const std::string& text, Metadata* meta = nullptr);

}  // namespace hypflow::io
