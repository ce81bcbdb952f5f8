#include "mhx/io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace mhx {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) { throw ParseError(path + ": " + msg); }

void only_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) fail(path, "unknown field '" + k + "'");
}

mpq_class rational_at(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a rational string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    fail(path, e.what());
  }
}

GaussianRational complex_at(const json& j, const std::string& path) {
  if (j.is_string()) return GaussianRational(rational_at(j, path));
  only_keys(j, path, {"re", "im"});
  if (!j.contains("re") || !j.contains("im")) fail(path, "complex numbers need both 're' and 'im'");
  return {rational_at(j["re"], path + ".re"), rational_at(j["im"], path + ".im")};
}

ExactVec vector_at(const json& j, const std::string& path, std::size_t n, bool complex) {
  if (!j.is_array()) fail(path, "expected an array");
  if (n && j.size() != n) fail(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
  ExactVec v;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    v.push_back(complex ? complex_at(j[i], p) : GaussianRational(rational_at(j[i], p)));
  }
  return v;
}

std::vector<ExactVec> vectors_at(const json& j, const std::string& path, std::size_t n, bool complex) {
  if (!j.is_array()) fail(path, "expected an array of vectors");
  std::vector<ExactVec> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(vector_at(j[i], path + "[" + std::to_string(i) + "]", n, complex));
  return out;
}

int index_key(const std::string& key, const std::string& path) {
  int v = 0;
  const char* end = key.data() + key.size();
  auto [p, ec] = std::from_chars(key.data(), end, v);
  if (ec != std::errc() || p != end) fail(path, "key '" + key + "' is not an integer");
  return v;
}

std::map<int, std::vector<ExactVec>> filtration_at(const json& j, const std::string& path, std::size_t n,
                                                   bool complex) {
  if (!j.is_object()) fail(path, "expected an object mapping indices to vector lists");
  std::map<int, std::vector<ExactVec>> out;
  for (const auto& [k, v] : j.items()) {
    const int idx = index_key(k, path);
    if (out.count(idx)) fail(path, "duplicate index " + k);
    out[idx] = vectors_at(v, path + "." + k, n, complex);
  }
  if (out.empty()) fail(path, "filtration has no steps");
  return out;
}

json rational_json(const mpq_class& q) { return rational_to_string(q); }

json complex_json(const GaussianRational& z) {
  json o = json::object();
  o["re"] = rational_to_string(z.re());
  o["im"] = rational_to_string(z.im());
  return o;
}

json vector_json(const ExactVec& v, bool complex) {
  json a = json::array();
  for (const auto& x : v) a.push_back(complex ? complex_json(x) : rational_json(x.re()));
  return a;
}

json filtration_json(const std::map<int, std::vector<ExactVec>>& f, bool complex) {
  json o = json::object();
  for (const auto& [k, vs] : f) {
    json a = json::array();
    for (const auto& v : vs) a.push_back(vector_json(v, complex));
    o[std::to_string(k)] = a;
  }
  return o;
}

std::string line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

template <class S>
Vec<S> lift(const ExactVec& v) {
  Vec<S> out;
  for (const auto& x : v) out.push_back(ScalarTraits<S>::from_exact(x));
  return out;
}

template <class S>
std::map<int, Subspace<S>> steps_of(const std::map<int, std::vector<ExactVec>>& f, std::size_t n) {
  std::map<int, Subspace<S>> out;
  for (const auto& [k, vs] : f) {
    std::vector<Vec<S>> gens;
    for (const auto& v : vs) gens.push_back(lift<S>(v));
    out[k] = Subspace<S>::span(n, gens);
  }
  return out;
}

void require_structure(const Document& d) {
  if (!d.has_structure()) throw ParseError("document has no filtrations");
}

}  // namespace

Document parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("JSON syntax error at " + line_of(text, e.byte) + ": " + e.what());
  }
  only_keys(j, "document",
            {"backend", "dimension", "weight_filtration", "hodge_filtration", "N", "generators", "model"});
  Document d;
  if (!j.contains("backend") || !j["backend"].is_string()) fail("backend", "expected \"exact\" or \"float\"");
  d.backend = j["backend"].get<std::string>();
  if (d.backend != "exact" && d.backend != "float") fail("backend", "expected \"exact\" or \"float\"");

  const bool has_model = j.contains("model");
  const bool has_structure = j.contains("dimension") || j.contains("weight_filtration") || j.contains("hodge_filtration");
  if (has_structure || !has_model) {
    for (const char* k : {"dimension", "weight_filtration", "hodge_filtration"})
      if (!j.contains(k)) fail(k, "missing required field");
    if (!j["dimension"].is_number_unsigned() || j["dimension"].get<std::size_t>() == 0)
      fail("dimension", "expected a positive integer");
    d.dimension = j["dimension"].get<std::size_t>();
    d.weight_filtration = filtration_at(j["weight_filtration"], "weight_filtration", d.dimension, false);
    d.hodge_filtration = filtration_at(j["hodge_filtration"], "hodge_filtration", d.dimension, true);
  }
  if (j.contains("N")) {
    if (!d.dimension) fail("N", "requires \"dimension\"");
    auto rows = vectors_at(j["N"], "N", d.dimension, false);
    if (rows.size() != d.dimension) fail("N", "expected " + std::to_string(d.dimension) + " rows");
    d.N = rows;
  }
  if (j.contains("generators")) {
    const auto& g = j["generators"];
    only_keys(g, "generators", {"one", "one_dual"});
    if (!g.contains("one") || !g.contains("one_dual")) fail("generators", "needs 'one' and 'one_dual'");
    if (!d.dimension) fail("generators", "requires \"dimension\"");
    d.generators = std::make_pair(vector_at(g["one"], "generators.one", d.dimension, false),
                                  vector_at(g["one_dual"], "generators.one_dual", d.dimension, false));
  }
  if (has_model) {
    const auto& m = j["model"];
    only_keys(m, "model", {"kind", "tau", "aj_z", "aj_w", "b"});
    for (const char* k : {"kind", "tau", "aj_z", "aj_w", "b"})
      if (!m.contains(k)) fail(std::string("model.") + k, "missing required field");
    ModelSpec s;
    if (!m["kind"].is_string()) fail("model.kind", "expected \"nodal\" or \"reducible\"");
    s.kind = m["kind"].get<std::string>();
    if (s.kind != "nodal" && s.kind != "reducible") fail("model.kind", "expected \"nodal\" or \"reducible\"");
    s.tau = vectors_at(m["tau"], "model.tau", 0, true);
    s.aj_z = vector_at(m["aj_z"], "model.aj_z", 0, true);
    s.aj_w = vector_at(m["aj_w"], "model.aj_w", 0, true);
    s.b = complex_at(m["b"], "model.b");
    d.model = s;
  }
  return d;
}

Document read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

std::string serialize(const Document& d) {
  json j = json::object();
  j["backend"] = d.backend;
  if (d.has_structure()) {
    j["dimension"] = d.dimension;
    j["weight_filtration"] = filtration_json(d.weight_filtration, false);
    j["hodge_filtration"] = filtration_json(d.hodge_filtration, true);
  }
  if (d.N) {
    json rows = json::array();
    for (const auto& r : *d.N) rows.push_back(vector_json(r, false));
    j["N"] = rows;
  }
  if (d.generators) {
    json g = json::object();
    g["one"] = vector_json(d.generators->first, false);
    g["one_dual"] = vector_json(d.generators->second, false);
    j["generators"] = g;
  }
  if (d.model) {
    json m = json::object();
    m["kind"] = d.model->kind;
    json tau = json::array();
    for (const auto& r : d.model->tau) tau.push_back(vector_json(r, true));
    m["tau"] = tau;
    m["aj_z"] = vector_json(d.model->aj_z, true);
    m["aj_w"] = vector_json(d.model->aj_w, true);
    m["b"] = complex_json(d.model->b);
    j["model"] = m;
  }
  return j.dump(2) + "\n";
}

template <class S>
Filtration<S> document_W(const Document& d) {
  require_structure(d);
  for (const auto& [k, vs] : d.weight_filtration)
    for (const auto& v : vs)
      for (const auto& x : v)
        if (!x.is_real()) throw ParseError("weight_filtration." + std::to_string(k) + ": vectors must be rational");
  return Filtration<S>::from_map(d.dimension, Direction::increasing, steps_of<S>(d.weight_filtration, d.dimension));
}

template <class S>
Filtration<S> document_F(const Document& d) {
  require_structure(d);
  return Filtration<S>::from_map(d.dimension, Direction::decreasing, steps_of<S>(d.hodge_filtration, d.dimension));
}

template <class S>
MixedHodgeStructure<S> document_mhs(const Document& d) {
  return validate(document_W<S>(d), document_F<S>(d));
}

template <class S>
Matrix<S> document_N(const Document& d) {
  if (!d.N) throw ParseError("N: missing required field");
  std::vector<Vec<S>> rows;
  for (const auto& r : *d.N) rows.push_back(lift<S>(r));
  return Matrix<S>::from_rows(d.dimension, rows);
}

template <class S>
std::pair<Vec<S>, Vec<S>> document_generators(const Document& d) {
  if (!d.generators) throw ParseError("generators: missing required field");
  return {lift<S>(d.generators->first), lift<S>(d.generators->second)};
}

Genus3Model document_model(const Document& d) {
  if (!d.model) throw ParseError("model: missing required field");
  const auto& s = *d.model;
  auto square = [&](std::size_t n) {
    if (s.tau.size() != n) fail("model.tau", "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    for (const auto& r : s.tau)
      if (r.size() != n) fail("model.tau", "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
  };
  Genus3Model m;
  if (s.kind == "nodal") {
    square(2);
    NodalModel n;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t k = 0; k < 2; ++k) n.tau[i][k] = s.tau[i][k];
    n.aj_z = s.aj_z;
    n.aj_w = s.aj_w;
    n.b = s.b;
    m = n;
  } else {
    square(3);
    for (std::size_t k = 1; k < 3; ++k)
      if (!s.tau[0][k].is_zero() || !s.tau[k][0].is_zero())
        fail("model.tau", "reducible period matrix must be block diagonal diag(tau1, tau2)");
    ReducibleModel r;
    r.tau1 = s.tau[0][0];
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t k = 0; k < 2; ++k) r.tau2[i][k] = s.tau[1 + i][1 + k];
    r.aj_z = s.aj_z;
    r.aj_w = s.aj_w;
    r.b = s.b;
    m = r;
  }
  check_model(m);
  return m;
}

Document to_document(const MixedHodgeStructure<GaussianRational>& m) {
  Document d;
  d.backend = "exact";
  d.dimension = m.dim();
  auto put = [&](const Filtration<GaussianRational>& f, std::map<int, std::vector<ExactVec>>& out) {
    auto sup = f.support();
    const int lo = sup ? sup->first : 0, hi = sup ? sup->second : 0;
    for (int k = lo; k <= hi; ++k) out[k] = f.at(k).basis();
  };
  put(m.W(), d.weight_filtration);
  put(m.F(), d.hodge_filtration);
  return d;
}

#define MHX_INSTANTIATE(S)                                                  \
  template Filtration<S> document_W(const Document&);                       \
  template Filtration<S> document_F(const Document&);                       \
  template MixedHodgeStructure<S> document_mhs(const Document&);            \
  template Matrix<S> document_N(const Document&);                           \
  template std::pair<Vec<S>, Vec<S>> document_generators(const Document&);

MHX_INSTANTIATE(GaussianRational)
MHX_INSTANTIATE(Complex)

}  // namespace mhx
