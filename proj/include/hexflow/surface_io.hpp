#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hexflow/flows.hpp"
#include "hexflow/schemes.hpp"
#include "hexflow/topology.hpp"

namespace hexflow::io {

// A parsed surface file: the triangulation plus the scheme built over it.
struct SurfaceDocument {
  IdealTriangulation tri;
  SchemeConfig config;
  Scheme scheme;
};

SurfaceDocument parse_surface_text(const std::string& text);
SurfaceDocument load_surface(const std::string& path);

// Boundary factor file. Values are per boundary, in either coordinate.
struct FactorAssignment {
  bool is_u = true;
  std::vector<double> values;

  std::vector<double> to_u(const Scheme& scheme) const;
};

FactorAssignment parse_factors_text(const std::string& text, int n_boundaries);
FactorAssignment load_factors(const std::string& path, int n_boundaries);

std::vector<double> parse_target_text(const std::string& text, int n_boundaries);
std::vector<double> load_target(const std::string& path, int n_boundaries);

// Run report as a JSON string (single trailing newline).
std::string render_report(const IdealTriangulation& tri, const Scheme& scheme,
                          const FlowResult& res, FlowMethod method);

void write_trace_csv(std::ostream& out, const FlowResult& res, int n_boundaries);
std::vector<TraceRow> read_trace_csv(std::istream& in);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace hexflow::io
