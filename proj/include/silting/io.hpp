#pragma once

#include "silting/gorenstein.hpp"
#include "silting/quiver.hpp"
#include "silting/recollement.hpp"

#include <json.hpp>

#include <fstream>

namespace silting::io {

using json = nlohmann::json;  // std::map objects: keys come out sorted

/// Malformed input file; the CLI maps it to exit code 3.
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what) : Error("malformed input: " + what) {}
};

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

inline const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T get_as(const json& j, const char* key) {
  try {
    return member(j, key).get<T>();
  } catch (const json::type_error&) {
    throw FormatError(std::string("field '") + key + "' has the wrong type");
  }
}

// ---------------------------------------------------------------------------------------------------------------
// scalars and matrices

inline FieldSpec field_from_json(const json& j) {
  const auto kind = get_as<std::string>(j, "kind");
  if (kind == "prime") return FieldSpec::prime(get_as<std::uint32_t>(j, "p"));
  if (kind == "rational") return FieldSpec::rational();
  throw FormatError("unknown field kind '" + kind + "'");
}

inline json to_json(const FieldSpec& f) {
  if (f.kind == FieldSpec::Kind::rational) return {{"kind", "rational"}};
  return {{"kind", "prime"}, {"p", f.p}};
}

/// Row-major array of rows of scalar strings.
template <Field F>
json to_json(const Matrix<F>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.field().to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <Field F>
Matrix<F> matrix_from_json(const F& f, const json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) throw FormatError("matrix must have " + std::to_string(rows) + " rows");
  Matrix<F> m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw FormatError("matrix row must have " + std::to_string(cols) + " entries");
    for (std::size_t k = 0; k < cols; ++k) {
      const auto& e = j[i][k];
      if (e.is_string()) m(i, k) = f.parse(e.get<std::string>());
      else if (e.is_number_integer()) m(i, k) = f.parse(std::to_string(e.get<long long>()));
      else throw FormatError("matrix entries must be scalar strings");
    }
  }
  return m;
}

template <Field F>
json column_to_json(const Matrix<F>& v) {
  json out = json::array();
  for (std::size_t i = 0; i < v.rows(); ++i) out.push_back(v.field().to_string(v(i, 0)));
  return out;
}

template <Field F>
Matrix<F> column_from_json(const F& f, const json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) throw FormatError("vector must have " + std::to_string(n) + " entries");
  json rows = json::array();
  for (const auto& e : j) rows.push_back(json::array({e}));
  return matrix_from_json(f, rows, n, 1);
}

// ---------------------------------------------------------------------------------------------------------------
// algebras

inline QuiverPresentation quiver_from_json(const json& j) {
  QuiverPresentation q;
  q.field = field_from_json(member(j, "field"));
  const json& quiver = member(j, "quiver");
  q.vertices = get_as<std::vector<std::string>>(quiver, "vertices");
  if (quiver.contains("arrows"))
    for (const auto& a : member(quiver, "arrows"))
      q.arrows.push_back({get_as<std::string>(a, "name"), get_as<std::string>(a, "source"), get_as<std::string>(a, "target")});
  if (j.contains("relations"))
    for (const auto& r : member(j, "relations")) {
      if (!r.is_array()) throw FormatError("a relation is a list of terms");
      std::vector<RelationTerm> terms;
      for (const auto& t : r) terms.push_back({get_as<std::string>(t, "coeff"), get_as<std::vector<std::string>>(t, "path")});
      q.relations.push_back(std::move(terms));
    }
  if (j.contains("length_bound")) q.length_bound = get_as<std::size_t>(j, "length_bound");
  return q;
}

inline json to_json(const QuiverPresentation& q) {
  json arrows = json::array();
  for (const auto& a : q.arrows) arrows.push_back({{"name", a.name}, {"source", a.source}, {"target", a.target}});
  json rels = json::array();
  for (const auto& r : q.relations) {
    json terms = json::array();
    for (const auto& t : r) terms.push_back({{"coeff", t.coeff}, {"path", t.path}});
    rels.push_back(std::move(terms));
  }
  json out{{"field", to_json(q.field)}, {"quiver", {{"vertices", q.vertices}, {"arrows", arrows}}}, {"relations", rels}};
  if (q.length_bound) out["length_bound"] = *q.length_bound;
  return out;
}

inline FieldSpec algebra_field(const json& j) { return field_from_json(member(j, "field")); }

/// Structure-constant form: labels, left multiplication by each basis element, idempotents.
template <Field F>
json to_json(const Algebra<F>& a) {
  json mult = json::object(), idem = json::object();
  for (std::size_t i = 0; i < a.dim(); ++i) mult[a.label(i)] = to_json(a.left_mult(i));
  for (std::size_t v = 0; v < a.num_vertices(); ++v) idem[a.vertex_name(v)] = column_to_json(a.idempotent(v));
  return {{"id", a.id()},
          {"field", to_json(spec_of(a.field()))},
          {"dim", a.dim()},
          {"labels", a.labels()},
          {"vertices", a.vertex_names()},
          {"left_multiplication", mult},
          {"idempotents", idem}};
}

/// Either a quiver file or the structure-constant form written by to_json.
template <Field F>
AlgebraPtr<F> algebra_from_json(const F& f, const json& j) {
  if (!(algebra_field(j) == spec_of(f))) throw FormatError("field of the algebra file does not match");
  if (j.contains("quiver")) return compile_quiver_algebra(quiver_from_json(j), f);
  const auto labels = get_as<std::vector<std::string>>(j, "labels");
  const auto vertices = get_as<std::vector<std::string>>(j, "vertices");
  const std::size_t n = labels.size();
  std::vector<Matrix<F>> left, idems;
  const json& mult = member(j, "left_multiplication");
  for (const auto& l : labels) left.push_back(matrix_from_json(f, member(mult, l.c_str()), n, n));
  const json& idem = member(j, "idempotents");
  for (const auto& v : vertices) idems.push_back(column_from_json(f, member(idem, v.c_str()), n));
  auto alg = std::make_shared<const Algebra<F>>(f, labels, std::move(left), std::move(idems), vertices, "file");
  if (j.contains("id") && get_as<std::string>(j, "id") != alg->id())
    throw FormatError("algebra id " + get_as<std::string>(j, "id") + " does not match its content " + alg->id());
  return alg;
}

// ---------------------------------------------------------------------------------------------------------------
// modules, maps, presentations

template <Field F>
json to_json(const Module<F>& m) {
  json act = json::object();
  for (std::size_t i = 0; i < m.algebra().dim(); ++i) act[m.algebra().label(i)] = to_json(m.action(i));
  return {{"algebra", m.algebra().id()}, {"dim", m.dim()}, {"action", act}};
}

inline void require_algebra_id(const json& j, const std::string& id) {
  const auto got = get_as<std::string>(j, "algebra");
  if (got != id) throw FormatError("module refers to algebra " + got + ", expected " + id);
}

/// Actions for every basis label; validated against the algebra axioms.
template <Field F>
Module<F> module_from_json(const AlgebraPtr<F>& alg, const json& j) {
  require_algebra_id(j, alg->id());
  const auto n = get_as<std::size_t>(j, "dim");
  const json& act = member(j, "action");
  std::vector<Matrix<F>> acts;
  for (const auto& l : alg->labels()) acts.push_back(matrix_from_json(alg->field(), member(act, l.c_str()), n, n));
  return Module<F>::validated(alg, std::move(acts));
}

template <Field F>
json to_json(const ModuleMap<F>& g) {
  return {{"source", to_json(g.source)}, {"target", to_json(g.target)}, {"matrix", to_json(g.matrix)}};
}

template <Field F>
ModuleMap<F> map_from_json(const AlgebraPtr<F>& alg, const json& j) {
  const Module<F> s = module_from_json(alg, member(j, "source")), t = module_from_json(alg, member(j, "target"));
  ModuleMap<F> g{s, t, matrix_from_json(alg->field(), member(j, "matrix"), t.dim(), s.dim())};
  if (!g.is_homomorphism()) throw FormatError("map is not a module homomorphism");
  return g;
}

template <Field F>
std::vector<std::string> vertex_list(const ProjectiveModule<F>& p, const Algebra<F>& alg) {
  std::vector<std::string> out;
  for (auto v : p.vertices) out.push_back(alg.vertex_name(v));
  return out;
}

template <Field F>
json to_json(const ProjectivePresentation<F>& s) {
  const auto& alg = s.map.source.algebra();
  return {{"p1", vertex_list(s.p1, alg)}, {"p0", vertex_list(s.p0, alg)}, {"matrix", to_json(s.map.matrix)}};
}

/// {"p1": [vertex names], "p0": [vertex names], "matrix": P1 -> P0 in the projective-sum bases}
template <Field F>
ProjectivePresentation<F> presentation_from_json(const AlgebraPtr<F>& alg, const json& j) {
  auto verts = [&](const char* key) {
    std::vector<std::size_t> out;
    for (const auto& name : get_as<std::vector<std::string>>(j, key)) {
      std::size_t v = 0;
      while (v < alg->num_vertices() && alg->vertex_name(v) != name) ++v;
      if (v == alg->num_vertices()) throw FormatError("unknown vertex '" + name + "'");
      out.push_back(v);
    }
    return out;
  };
  const auto p1 = projective_sum(alg, verts("p1")), p0 = projective_sum(alg, verts("p0"));
  return make_presentation(p1, p0, matrix_from_json(alg->field(), member(j, "matrix"), p0.module.dim(), p1.module.dim()));
}

template <Field F>
json to_json(const GpPresentation<F>& s) {
  return {{"map", to_json(s.map)}, {"g1_summands", s.g1_summands}, {"g0_summands", s.g0_summands}};
}

// ---------------------------------------------------------------------------------------------------------------
// bimodules and triangular contexts

template <Field F>
json to_json(const Bimodule<F>& n) {
  json l = json::object(), r = json::object();
  for (std::size_t i = 0; i < n.left->dim(); ++i) l[n.left->label(i)] = to_json(n.left_action[i]);
  for (std::size_t i = 0; i < n.right->dim(); ++i) r[n.right->label(i)] = to_json(n.right_action[i]);
  return {{"left", n.left->id()}, {"right", n.right->id()}, {"dim", n.dim}, {"left_action", l}, {"right_action", r}};
}

template <Field F>
Bimodule<F> bimodule_from_json(const AlgebraPtr<F>& left, const AlgebraPtr<F>& right, const json& j) {
  if (get_as<std::string>(j, "left") != left->id() || get_as<std::string>(j, "right") != right->id())
    throw FormatError("bimodule refers to other algebras");
  const auto n = get_as<std::size_t>(j, "dim");
  Bimodule<F> b{left, right, n, {}, {}};
  const json& l = member(j, "left_action");
  const json& r = member(j, "right_action");
  for (const auto& lab : left->labels()) b.left_action.push_back(matrix_from_json(left->field(), member(l, lab.c_str()), n, n));
  for (const auto& lab : right->labels())
    b.right_action.push_back(matrix_from_json(right->field(), member(r, lab.c_str()), n, n));
  try {
    b.validate();
  } catch (const Error& e) {
    throw FormatError(std::string("bimodule: ") + e.what());
  }
  return b;
}

/// {"kind": "triangular", "a": algebra, "b": algebra, "bimodule": bimodule}
template <Field F>
TriangularContext<F> context_from_json(const F& f, const json& j) {
  if (get_as<std::string>(j, "kind") != "triangular") throw FormatError("only triangular contexts are supported");
  const auto a = algebra_from_json(f, member(j, "a"));
  const auto b = algebra_from_json(f, member(j, "b"));
  return build_triangular(a, b, bimodule_from_json(a, b, member(j, "bimodule")));
}

template <Field F>
json to_json(const TriangularContext<F>& c) {
  return {{"kind", "triangular"},
          {"a", to_json(*c.a)},
          {"b", to_json(*c.b)},
          {"bimodule", to_json(c.n)},
          {"gamma", to_json(*c.gamma())},
          {"hypotheses",
           {{"gldim_a_finite", c.gldim_a_finite},
            {"n_left_projective", c.n_left_projective},
            {"n_right_projective", c.n_right_projective},
            {"gamma_gorenstein", c.gamma_gorenstein}}}};
}

/// Context files embed the algebras; the field comes from the first one.
inline FieldSpec context_field(const json& j) { return algebra_field(member(j, "a")); }

// ---------------------------------------------------------------------------------------------------------------
// reports

inline json optional_json(const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); }

template <Field F>
json to_json(const SiltingCertificate<F>& c) {
  json probes = json::array();
  for (const auto& p : c.probes)
    probes.push_back({{"index", p.index}, {"dimension_vector", p.dimension_vector}, {"in_d_sigma", p.in_d_sigma},
                      {"in_gen", p.in_gen}});
  return {{"module", fingerprint(c.module)},
          {"dimension_vector", c.module.dimension_vector()},
          {"presentation", to_json(c.presentation)},
          {"presentation_name", c.presentation_name},
          {"verdict", to_string(c.verdict)},
          {"in_d_sigma", c.in_d_sigma},
          {"tau_route",
           {{"tau_rigid", c.tau_rigid},
            {"complement_multiplicities", c.complement_multiplicities},
            {"complement_hom_zero", c.complement_hom_zero},
            {"module_summands", c.module_summands},
            {"complement_summands", c.complement_summands},
            {"vertex_count", c.vertex_count},
            {"count_identity", c.count_identity},
            {"silting", c.tau_route_silting}}},
          {"probes_available", c.probes_available},
          {"probe_bound", c.probe_bound},
          {"probes", probes},
          {"mismatch", optional_json(c.mismatch)},
          {"notes", c.notes}};
}

template <Field F>
json to_json(const TensorSiltingReport<F>& r) {
  return {{"module", fingerprint(r.module)},
          {"dimension_vector", r.module.dimension_vector()},
          {"two_term_cokernel_matches", r.two_term_cokernel_matches},
          {"totalized_cokernel_matches", r.totalized_cokernel_matches},
          {"totalized", to_json(r.certificate)},
          {"existence", to_json(r.existence)}};
}

inline json to_json(const GorensteinReport& r) {
  return {{"bound", r.bound},
          {"left_injective_dimension", optional_json(r.left_injective_dimension)},
          {"right_injective_dimension", optional_json(r.right_injective_dimension)},
          {"global_dimension", optional_json(r.global_dimension)},
          {"gorenstein", r.gorenstein},
          {"verdict", r.verdict()}};
}

template <Field F>
json to_json(const GpClassification<F>& g) {
  json mods = json::array();
  for (const auto& m : g.modules)
    mods.push_back({{"fingerprint", fingerprint(m)}, {"dimension_vector", m.dimension_vector()}, {"module", to_json(m)}});
  return {{"algebra", g.algebra->id()}, {"bound", g.bound}, {"complete", g.complete}, {"modules", mods},
          {"report", to_json(g.report)}};
}

template <Field F>
json to_json(const GorensteinSiltingCertificate<F>& c) {
  json probes = json::array();
  for (const auto& p : c.probes)
    probes.push_back({{"index", p.index}, {"dimension_vector", p.dimension_vector}, {"in_d_theta", p.in_d_sigma},
                      {"in_gen_g", p.in_gen}});
  json seqs = json::array();
  for (const auto& s : c.sequences)
    seqs.push_back({{"found", s.found},
                    {"multiplicities", s.multiplicities},
                    {"cokernel_in_add", s.cokernel_in_add},
                    {"exact_g", s.exact_g},
                    {"approximation_on_probes", s.approximation_on_probes},
                    {"failing_probe", optional_json(s.failing_probe)},
                    {"probe_bound", s.probe_bound}});
  return {{"module", fingerprint(c.module)},
          {"dimension_vector", c.module.dimension_vector()},
          {"presentation", to_json(c.presentation)},
          {"presentation_name", c.presentation_name},
          {"verdict", to_string(c.verdict)},
          {"in_d_theta", c.in_d_theta},
          {"probe_bound", c.probe_bound},
          {"probes", probes},
          {"mismatch", optional_json(c.mismatch)},
          {"sequences", seqs},
          {"all_sequences_found", c.all_sequences_found},
          {"notes", c.notes}};
}

inline json to_json(const VerificationReport& r) {
  json inputs = json::object();
  for (const auto& [k, v] : r.inputs) inputs[k] = v;
  return {{"statement", r.statement}, {"inputs", inputs},       {"atoms", r.atoms}, {"verdict", r.verdict},
          {"witnesses", r.witnesses}, {"probe_bound", r.probe_bound}, {"notes", r.notes}};
}

inline json to_json(const BatteryReport& r) {
  return {{"probes", r.probes}, {"checks", r.checks}, {"failures", r.failures}, {"ok", r.ok()}};
}

/// Deterministic text form: sorted keys, two-space indent, trailing newline.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace silting::io
