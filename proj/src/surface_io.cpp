#include "hexflow/surface_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "hexflow/curvature.hpp"
#include "hexflow/errors.hpp"
#include "hexflow/numerics.hpp"
#include "json.hpp"

namespace hexflow::io {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::BadInput, where + ": " + what);
}

const json& need(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) fail(where + "." + key, "missing");
  return *it;
}

double need_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) fail(where, "not finite");
  return v;
}

int need_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

std::array<int, 3> need_int3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) fail(where, "expected an array of 3 integers");
  std::array<int, 3> out{};
  for (int s = 0; s < 3; ++s) out[s] = need_int(j[s], where + "[" + std::to_string(s) + "]");
  return out;
}

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorKind::BadInput, "document is not valid JSON");
  return j;
}

}  // namespace

SurfaceDocument parse_surface_text(const std::string& text) {
  json j = parse_json(text);
  if (!j.is_object()) fail("document", "expected a JSON object");

  const json& jscheme = need(j, "scheme", "document");
  if (!jscheme.is_string()) fail("scheme", "expected a string");
  auto kind = scheme_kind_from_string(jscheme.get<std::string>());
  if (!kind) fail("scheme", "unknown name '" + jscheme.get<std::string>() + "'");

  const json& jbnd = need(j, "boundaries", "document");
  if (!jbnd.is_array() || jbnd.empty()) fail("boundaries", "expected a nonempty array");
  const int n = static_cast<int>(jbnd.size());
  std::vector<int> alpha(n, 0);
  for (int i = 0; i < n; ++i) {
    std::string where = "boundaries[" + std::to_string(i) + "]";
    if (!jbnd[i].is_object()) fail(where, "expected an object");
    if (need_int(need(jbnd[i], "id", where), where + ".id") != i)
      fail(where + ".id", "expected " + std::to_string(i));
    if (auto it = jbnd[i].find("alpha"); it != jbnd[i].end())
      alpha[i] = need_int(*it, where + ".alpha");
  }

  const json& jfaces = need(j, "faces", "document");
  if (!jfaces.is_array() || jfaces.empty()) fail("faces", "expected a nonempty array");
  const bool explicit_edges = jfaces[0].is_object();

  const json& jedges = need(j, "edges", "document");
  if (!jedges.is_array() || jedges.empty()) fail("edges", "expected a nonempty array");

  SurfaceDocument doc;
  std::vector<double> eta(jedges.size());
  std::vector<EdgeVariant> variant(jedges.size(), EdgeVariant::Plus);
  // row indexes the JSON array; e is the canonical edge id the payload lands on.
  auto read_edge_payload = [&](size_t row, int e, const std::string& where) {
    eta[e] = need_number(need(jedges[row], "eta", where), where + ".eta");
    if (auto it = jedges[row].find("variant"); it != jedges[row].end()) {
      if (!it->is_string()) fail(where + ".variant", "expected a string");
      auto v = edge_variant_from_string(it->get<std::string>());
      if (!v) fail(where + ".variant", "unknown value '" + it->get<std::string>() + "'");
      variant[e] = *v;
    }
  };

  if (!explicit_edges) {
    // Faces are corner triples; edges are derived and matched back by their ends.
    std::vector<std::array<int, 3>> faces(jfaces.size());
    for (size_t t = 0; t < jfaces.size(); ++t)
      faces[t] = need_int3(jfaces[t], "faces[" + std::to_string(t) + "]");
    doc.tri = build_triangulation(faces, n);

    std::map<std::pair<int, int>, int> by_ends;
    for (size_t e = 0; e < doc.tri.edges.size(); ++e)
      by_ends[{doc.tri.edges[e].ends[0], doc.tri.edges[e].ends[1]}] = static_cast<int>(e);
    if (jedges.size() != doc.tri.edges.size())
      fail("edges", "expected " + std::to_string(doc.tri.edges.size()) + " entries");
    std::vector<bool> seen(doc.tri.edges.size(), false);
    for (size_t r = 0; r < jedges.size(); ++r) {
      std::string where = "edges[" + std::to_string(r) + "]";
      if (!jedges[r].is_object()) fail(where, "expected an object");
      std::array<int, 3> dummy{};
      const json& jends = need(jedges[r], "ends", where);
      if (!jends.is_array() || jends.size() != 2) fail(where + ".ends", "expected 2 integers");
      dummy[0] = need_int(jends[0], where + ".ends[0]");
      dummy[1] = need_int(jends[1], where + ".ends[1]");
      auto key = std::minmax(dummy[0], dummy[1]);
      auto it = by_ends.find({key.first, key.second});
      if (it == by_ends.end()) fail(where + ".ends", "no such edge in the triangulation");
      if (seen[it->second]) fail(where + ".ends", "edge listed twice");
      seen[it->second] = true;
      read_edge_payload(r, it->second, where);
    }
  } else {
    // Faces name their edges explicitly; the edges array order fixes the ids.
    std::vector<std::array<int, 2>> ends(jedges.size());
    for (size_t e = 0; e < jedges.size(); ++e) {
      std::string where = "edges[" + std::to_string(e) + "]";
      if (!jedges[e].is_object()) fail(where, "expected an object");
      const json& jends = need(jedges[e], "ends", where);
      if (!jends.is_array() || jends.size() != 2) fail(where + ".ends", "expected 2 integers");
      ends[e][0] = need_int(jends[0], where + ".ends[0]");
      ends[e][1] = need_int(jends[1], where + ".ends[1]");
      read_edge_payload(e, static_cast<int>(e), where);
    }
    std::vector<std::array<int, 3>> corners(jfaces.size()), fedges(jfaces.size());
    for (size_t t = 0; t < jfaces.size(); ++t) {
      std::string where = "faces[" + std::to_string(t) + "]";
      if (!jfaces[t].is_object()) fail(where, "expected an object");
      corners[t] = need_int3(need(jfaces[t], "corners", where), where + ".corners");
      fedges[t] = need_int3(need(jfaces[t], "edges", where), where + ".edges");
    }
    doc.tri = build_triangulation(corners, fedges, ends, n);
  }

  doc.config.kind = *kind;
  doc.config.alpha = alpha;
  doc.config.eta = eta;
  doc.config.variant = variant;
  doc.scheme = Scheme::build(doc.tri, doc.config);
  return doc;
}

SurfaceDocument load_surface(const std::string& path) {
  return parse_surface_text(read_file(path));
}

std::vector<double> FactorAssignment::to_u(const Scheme& scheme) const {
  if (is_u) {
    for (size_t i = 0; i < values.size(); ++i)
      if (!scheme.domain_of_u(static_cast<int>(i)).contains(values[i]))
        throw Error(ErrorKind::DomainError,
                    "u value for boundary " + std::to_string(i) + " is outside the chart");
    return values;
  }
  std::vector<double> u(values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    scheme.check_f_domain(static_cast<int>(i), values[i]);
    u[i] = scheme.u_from_f(static_cast<int>(i), values[i]);
  }
  return u;
}

FactorAssignment parse_factors_text(const std::string& text, int n_boundaries) {
  json j = parse_json(text);
  if (!j.is_object()) fail("document", "expected a JSON object");
  const json& jc = need(j, "coords", "document");
  if (!jc.is_string() || (jc != "u" && jc != "f")) fail("coords", "expected \"u\" or \"f\"");
  const json& jv = need(j, "values", "document");
  if (!jv.is_array() || static_cast<int>(jv.size()) != n_boundaries)
    fail("values", "expected " + std::to_string(n_boundaries) + " entries");
  FactorAssignment fa;
  fa.is_u = jc == "u";
  fa.values.resize(jv.size());
  for (size_t i = 0; i < jv.size(); ++i)
    fa.values[i] = need_number(jv[i], "values[" + std::to_string(i) + "]");
  return fa;
}

FactorAssignment load_factors(const std::string& path, int n_boundaries) {
  return parse_factors_text(read_file(path), n_boundaries);
}

std::vector<double> parse_target_text(const std::string& text, int n_boundaries) {
  json j = parse_json(text);
  if (!j.is_object()) fail("document", "expected a JSON object");
  const json& jv = need(j, "kbar", "document");
  if (!jv.is_array() || static_cast<int>(jv.size()) != n_boundaries)
    fail("kbar", "expected " + std::to_string(n_boundaries) + " entries");
  std::vector<double> k(jv.size());
  for (size_t i = 0; i < jv.size(); ++i)
    k[i] = need_number(jv[i], "kbar[" + std::to_string(i) + "]");
  return k;
}

std::vector<double> load_target(const std::string& path, int n_boundaries) {
  return parse_target_text(read_file(path), n_boundaries);
}

std::string render_report(const IdealTriangulation& tri, const Scheme& scheme,
                          const FlowResult& res, FlowMethod method) {
  SurfaceEval eval = evaluate_surface(tri, scheme, res.u_final, true);
  ordered_json r;
  r["outcome"] = to_string(res.outcome);
  r["method"] = to_string(method);
  r["steps"] = res.steps;
  r["wall_seconds"] = res.wall_seconds;
  r["residual"] = res.residual;
  r["u"] = res.u_final;
  std::vector<double> f(res.u_final.size());
  for (size_t i = 0; i < f.size(); ++i)
    f[i] = scheme.f_from_u(static_cast<int>(i), res.u_final[i]);
  r["f"] = f;
  r["K"] = res.k_final;
  r["energy_E"] = res.trace.back().energy_e;
  r["energy_C"] = res.trace.back().energy_c;
  ordered_json d;
  d["min_edge_length"] = res.min_edge_length;
  d["laplacian_asymmetry"] = eval.asymmetry;
  d["max_eigenvalue"] = num::max_eigenvalue(eval.laplacian);
  d["min_abs_u"] = res.min_abs_u;
  d["near_zero_wall_warning"] = res.near_zero_warning;
  r["diagnostics"] = d;
  return r.dump(2) + "\n";
}

void write_trace_csv(std::ostream& out, const FlowResult& res, int n_boundaries) {
  out << "step,t,dt,residual,E,C";
  for (int i = 0; i < n_boundaries; ++i) out << ",u_" << i;
  out << "\n";
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << ',' << buf;
  };
  for (const TraceRow& row : res.trace) {
    out << row.step;
    put(row.t);
    put(row.dt);
    put(row.residual);
    put(row.energy_e);
    put(row.energy_c);
    for (double c : row.u) put(c);
    out << "\n";
  }
}

std::vector<TraceRow> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("step,t,dt,residual,E,C", 0) != 0)
    throw Error(ErrorKind::BadInput, "trace header mismatch");
  std::vector<TraceRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> cols;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cols.push_back(std::stod(cell));
    if (cols.size() < 6) throw Error(ErrorKind::BadInput, "trace row too short");
    TraceRow row;
    row.step = static_cast<long>(cols[0]);
    row.t = cols[1];
    row.dt = cols[2];
    row.residual = cols[3];
    row.energy_e = cols[4];
    row.energy_c = cols[5];
    row.u.assign(cols.begin() + 6, cols.end());
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::BadInput, path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::BadInput, path + ": cannot open for writing");
  out << text;
}

}  // namespace hexflow::io
