#include "courantkit/json_io.hpp"

#include <fstream>
#include <sstream>

namespace ck {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& pointer, const std::string& msg) {
  throw InputError(pointer + ": " + msg);
}

const json& get(const json& j, const std::string& pointer, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(pointer + "/" + key, "missing required field");
  return *it;
}

Rational rat_of(const json& j, const std::string& pointer) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return rat_from_string(j.get<std::string>());
    } catch (const InputError& e) {
      fail(pointer, e.what());
    }
  }
  fail(pointer, "expected an integer or a rational string");
}

Scalar poly_of(const json& j, const std::string& pointer, const Chart& chart) {
  if (j.is_number_integer())
    return Scalar::constant(chart.dim(), Rational(j.get<long>()));
  if (j.is_string()) {
    try {
      return parse_poly(j.get<std::string>(), chart);
    } catch (const InputError& e) {
      fail(pointer, e.what());
    }
  }
  fail(pointer, "expected an integer or a polynomial string");
}

RatMat rat_matrix_of(const json& j, const std::string& pointer, int rows, int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    fail(pointer, "expected " + std::to_string(rows) + " rows");
  RatMat m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = j[static_cast<size_t>(r)];
    std::string rp = pointer + "/" + std::to_string(r);
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      fail(rp, "expected " + std::to_string(cols) + " entries");
    for (int c = 0; c < cols; ++c)
      m(r, c) = rat_of(row[static_cast<size_t>(c)], rp + "/" + std::to_string(c));
  }
  return m;
}

PolyMat poly_matrix_of(const json& j, const std::string& pointer, const Chart& chart, int rows,
                       int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    fail(pointer, "expected " + std::to_string(rows) + " rows");
  PolyMat m = poly_zero_mat(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = j[static_cast<size_t>(r)];
    std::string rp = pointer + "/" + std::to_string(r);
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      fail(rp, "expected " + std::to_string(cols) + " entries");
    for (int c = 0; c < cols; ++c)
      m(r, c) = poly_of(row[static_cast<size_t>(c)], rp + "/" + std::to_string(c), chart);
  }
  return m;
}

PolyVec poly_vector_of(const json& j, const std::string& pointer, const Chart& chart, int size) {
  if (!j.is_array() || static_cast<int>(j.size()) != size)
    fail(pointer, "expected " + std::to_string(size) + " entries");
  PolyVec v = poly_zero_vec(size);
  for (int i = 0; i < size; ++i)
    v(i) = poly_of(j[static_cast<size_t>(i)], pointer + "/" + std::to_string(i), chart);
  return v;
}

std::vector<int> index_tuple_of(const json& j, const std::string& pointer, int arity, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != arity)
    fail(pointer, "expected an index tuple of length " + std::to_string(arity));
  std::vector<int> idx;
  for (int t = 0; t < arity; ++t) {
    const json& e = j[static_cast<size_t>(t)];
    if (!e.is_number_integer()) fail(pointer, "indices must be integers");
    int v = e.get<int>();
    if (v < 1 || v > dim) fail(pointer, "index out of range (1-based)");
    idx.push_back(v - 1);
  }
  return idx;
}

LieAlgebra lie_of(const json& j, const std::string& pointer) {
  if (j.contains("differentials")) {
    const json& d = j["differentials"];
    if (!d.is_array() || d.empty()) fail(pointer + "/differentials", "expected a nonempty array");
    std::vector<std::string> diffs;
    for (size_t k = 0; k < d.size(); ++k) {
      if (!d[k].is_string())
        fail(pointer + "/differentials/" + std::to_string(k), "expected a string");
      diffs.push_back(d[k].get<std::string>());
    }
    try {
      return from_differentials(diffs);
    } catch (const InputError& e) {
      fail(pointer + "/differentials", e.what());
    }
  }
  if (!j.contains("dim")) fail(pointer + "/dim", "missing required field");
  int dim = j["dim"].get<int>();
  LieAlgebra l(dim);
  if (j.contains("constants")) {
    const json& cons = j["constants"];
    if (!cons.is_array()) fail(pointer + "/constants", "expected an array");
    for (size_t t = 0; t < cons.size(); ++t) {
      std::string tp = pointer + "/constants/" + std::to_string(t);
      const json& e = cons[t];
      if (!e.is_array() || e.size() != 4) fail(tp, "expected [i, j, k, c]");
      int i = e[0].get<int>(), jj = e[1].get<int>(), k = e[2].get<int>();
      if (i < 1 || jj < 1 || k < 1 || i > dim || jj > dim || k > dim)
        fail(tp, "index out of range (1-based)");
      if (i == jj) fail(tp, "bracket indices must differ");
      l.set_bracket(i - 1, jj - 1, k - 1, rat_of(e[3], tp + "/3"));
    }
  }
  return l;
}

}  // namespace

std::vector<Rational> parse_point(const std::string& comma_separated, int dim) {
  std::vector<Rational> pt;
  std::stringstream ss(comma_separated);
  std::string tok;
  while (std::getline(ss, tok, ',')) pt.push_back(rat_from_string(tok));
  if (static_cast<int>(pt.size()) != dim)
    throw InputError("point: expected " + std::to_string(dim) + " coordinates");
  return pt;
}

InputDoc parse_input(const nlohmann::json& doc) {
  InputDoc in;
  if (!doc.is_object()) fail("", "the input document must be a JSON object");

  if (doc.contains("chart")) {
    const json& c = doc["chart"];
    const json& coords = get(c, "/chart", "coords");
    if (!coords.is_array()) fail("/chart/coords", "expected an array of identifiers");
    for (auto& name : coords) {
      if (!name.is_string()) fail("/chart/coords", "coordinate names must be strings");
      in.chart.coords.push_back(name.get<std::string>());
    }
    try {
      in.chart.validate();
    } catch (const InputError& e) {
      fail("/chart", e.what());
    }
    in.has_chart = true;
  }

  if (doc.contains("lie")) in.lie = lie_of(doc["lie"], "/lie");

  if (doc.contains("fiber")) {
    const json& f = doc["fiber"];
    in.fiber.algebra = lie_of(f, "/fiber");
    in.lie = in.fiber.algebra;
    in.has_fiber = true;
    if (f.contains("metric")) {
      in.fiber.metric =
          rat_matrix_of(f["metric"], "/fiber/metric", in.fiber.dim(), in.fiber.dim());
      in.has_metric = true;
    }
  } else if (doc.contains("lie")) {
    in.has_fiber = false;
    if (doc["lie"].contains("metric")) {
      in.fiber.algebra = in.lie;
      in.fiber.metric =
          rat_matrix_of(doc["lie"]["metric"], "/lie/metric", in.lie.dim(), in.lie.dim());
      in.has_metric = true;
    }
  }

  if (doc.contains("form")) {
    const json& f = doc["form"];
    if (!f.is_array() || f.empty()) fail("/form", "expected a square matrix");
    int n = static_cast<int>(f.size());
    in.form = rat_matrix_of(f, "/form", n, n);
  }

  if (doc.contains("courant")) {
    if (!in.has_chart) fail("/courant", "a chart is required");
    if (!in.has_fiber || !in.has_metric)
      fail("/courant", "a fiber with a metric is required");
    try {
      in.fiber.validate();
    } catch (const InputError& e) {
      fail("/fiber", e.what());
    }
    const json& co = doc["courant"];
    const int n = in.chart.dim(), m = in.fiber.dim();
    CourantData d = CourantData::untwisted(in.chart, in.fiber);
    if (co.contains("connection")) {
      const json& conn = co["connection"];
      if (!conn.is_array()) fail("/courant/connection", "expected an array of [i, matrix] pairs");
      for (size_t t = 0; t < conn.size(); ++t) {
        std::string tp = "/courant/connection/" + std::to_string(t);
        const json& e = conn[t];
        if (!e.is_array() || e.size() != 2) fail(tp, "expected [i, matrix]");
        int i = e[0].get<int>();
        if (i < 1 || i > n) fail(tp + "/0", "coordinate index out of range (1-based)");
        d.bundle.omega[static_cast<size_t>(i - 1)] =
            poly_matrix_of(e[1], tp + "/1", in.chart, m, m);
      }
    }
    if (co.contains("R")) {
      const json& rr = co["R"];
      if (!rr.is_array()) fail("/courant/R", "expected an array of [[i,j], column] pairs");
      for (size_t t = 0; t < rr.size(); ++t) {
        std::string tp = "/courant/R/" + std::to_string(t);
        const json& e = rr[t];
        if (!e.is_array() || e.size() != 2) fail(tp, "expected [[i,j], column]");
        auto idx = index_tuple_of(e[0], tp + "/0", 2, n);
        d.curv.set(idx, poly_vector_of(e[1], tp + "/1", in.chart, m));
      }
    }
    if (co.contains("H")) {
      const json& hh = co["H"];
      if (!hh.is_array()) fail("/courant/H", "expected an array of [[i,j,k], poly] pairs");
      for (size_t t = 0; t < hh.size(); ++t) {
        std::string tp = "/courant/H/" + std::to_string(t);
        const json& e = hh[t];
        if (!e.is_array() || e.size() != 2) fail(tp, "expected [[i,j,k], poly]");
        auto idx = index_tuple_of(e[0], tp + "/0", 3, n);
        d.torsion3.set(idx, poly_of(e[1], tp + "/1", in.chart));
      }
    }
    in.courant = d;
  }

  if (doc.contains("gacs")) {
    if (!in.courant) fail("/gacs", "a courant block (with chart and fiber) is required");
    const json& gj = doc["gacs"];
    const int n = in.chart.dim(), m = in.fiber.dim();
    GacsComponents c = GacsComponents::zero(in.chart, m);
    if (gj.contains("J")) c.J = poly_matrix_of(gj["J"], "/gacs/J", in.chart, n, n);
    if (gj.contains("A")) c.A = poly_matrix_of(gj["A"], "/gacs/A", in.chart, m, m);
    if (gj.contains("B")) c.B = poly_matrix_of(gj["B"], "/gacs/B", in.chart, n, n);
    if (gj.contains("C")) c.C = poly_matrix_of(gj["C"], "/gacs/C", in.chart, n, n);
    if (gj.contains("mu")) c.mu = poly_matrix_of(gj["mu"], "/gacs/mu", in.chart, m, n);
    if (gj.contains("nu")) c.nu = poly_matrix_of(gj["nu"], "/gacs/nu", in.chart, m, n);
    in.gacs = c;
  }

  if (doc.contains("seed")) {
    if (!in.courant) fail("/seed", "a courant block (with chart and fiber) is required");
    const json& sj = doc["seed"];
    const int n = in.chart.dim(), m = in.fiber.dim();
    NondegSeed s;
    s.chart = in.chart;
    s.fiber_dim = m;
    s.J = sj.contains("J") ? poly_matrix_of(sj["J"], "/seed/J", in.chart, n, n)
                           : poly_zero_mat(n, n);
    s.Atilde = poly_matrix_of(get(sj, "/seed", "Atilde"), "/seed/Atilde", in.chart, m, m);
    s.B = poly_matrix_of(get(sj, "/seed", "B"), "/seed/B", in.chart, n, n);
    s.nu = sj.contains("nu") ? poly_matrix_of(sj["nu"], "/seed/nu", in.chart, m, n)
                             : poly_zero_mat(m, n);
    in.seed = s;
  }

  if (doc.contains("iso")) {
    if (!in.courant) fail("/iso", "a courant block (with chart and fiber) is required");
    const json& ij = doc["iso"];
    const int n = in.chart.dim(), m = in.fiber.dim();
    IsoData iso = IsoData::identity(in.chart, m);
    if (ij.contains("K")) iso.K = poly_matrix_of(ij["K"], "/iso/K", in.chart, m, m);
    if (ij.contains("Phi")) {
      const json& pj = ij["Phi"];
      if (!pj.is_array()) fail("/iso/Phi", "expected an array of [i, column] pairs");
      for (size_t t = 0; t < pj.size(); ++t) {
        std::string tp = "/iso/Phi/" + std::to_string(t);
        const json& e = pj[t];
        if (!e.is_array() || e.size() != 2) fail(tp, "expected [i, column]");
        int i = e[0].get<int>();
        if (i < 1 || i > n) fail(tp + "/0", "coordinate index out of range (1-based)");
        iso.Phi.col(i - 1) = poly_vector_of(e[1], tp + "/1", in.chart, m);
      }
    }
    if (ij.contains("beta")) {
      const json& bj = ij["beta"];
      if (!bj.is_array()) fail("/iso/beta", "expected an array of [[i,j], poly] pairs");
      for (size_t t = 0; t < bj.size(); ++t) {
        std::string tp = "/iso/beta/" + std::to_string(t);
        const json& e = bj[t];
        if (!e.is_array() || e.size() != 2) fail(tp, "expected [[i,j], poly]");
        auto idx = index_tuple_of(e[0], tp + "/0", 2, n);
        iso.beta.set(idx, poly_of(e[1], tp + "/1", in.chart));
      }
    }
    in.iso = iso;
  }

  if (doc.contains("points")) {
    const json& pts = doc["points"];
    if (!pts.is_array()) fail("/points", "expected an array of points");
    int n = in.has_chart ? in.chart.dim() : -1;
    for (size_t t = 0; t < pts.size(); ++t) {
      std::string tp = "/points/" + std::to_string(t);
      const json& p = pts[t];
      if (!p.is_array()) fail(tp, "expected an array of coordinates");
      if (n >= 0 && static_cast<int>(p.size()) != n)
        fail(tp, "expected " + std::to_string(n) + " coordinates");
      std::vector<Rational> pt;
      for (size_t i = 0; i < p.size(); ++i)
        pt.push_back(rat_of(p[i], tp + "/" + std::to_string(i)));
      in.points.push_back(pt);
    }
  }

  return in;
}

InputDoc load_input(const std::string& path, std::string* raw_bytes) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open input file: " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  std::string bytes = buf.str();
  if (raw_bytes) *raw_bytes = bytes;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("JSON parse error: ") + e.what());
  }
  return parse_input(doc);
}

}  // namespace ck
