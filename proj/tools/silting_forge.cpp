// silting-forge: command-line front end for the silting library.
//
// Exit codes: 0 success or positive verdict, 1 negative verdict, 2 undecided or computation error,
// 3 usage error or malformed input.

#include "silting/corpus.hpp"
#include "silting/suites.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>

using namespace silting;
using io::json;
namespace fs = std::filesystem;

namespace {

struct Args {
  std::string group, command;
  std::string field = "2";
  std::size_t dim_bound = 3;
  std::optional<std::size_t> length_bound;
  std::uint64_t seed = 1;
  std::size_t budget = std::size_t(1) << 24;
  std::size_t jobs = 1;
  std::string out = "json";

  std::string algebra, algebra2, module, module2, to, presentation = "auto", quiver, bimodule, a, b, context, file;
  std::string op, vertices, functor, suite = "all", kind, corpus_dir, presentations = "proper";
  std::size_t count = 100;
};

/// Usage problems and malformed input.
struct UsageError : Error {
  using Error::Error;
};

int emit(const json& j, int code) {
  std::cout << io::dump(j);
  return code;
}

SiltingOptions options(const Args& a) {
  SiltingOptions o;
  o.enumeration.dim_bound = a.dim_bound;
  o.enumeration.budget = a.budget;
  o.enumeration.jobs = a.jobs;
  return o;
}

FieldSpec field_flag(const std::string& s) {
  if (s == "Q" || s == "q") return FieldSpec::rational();
  try {
    return FieldSpec::prime(static_cast<std::uint32_t>(std::stoul(s)));
  } catch (const std::logic_error&) {
    throw UsageError("--field expects a prime or Q, got '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

void need(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string("missing required option ") + flag);
}

/// Everything read from disk, parsed before any computation starts.
template <Field F>
struct Inputs {
  F field;
  AlgebraPtr<F> algebra, algebra2;
  std::optional<Module<F>> module, module2, to;
  std::optional<TriangularContext<F>> context;
  std::optional<ProjectivePresentation<F>> presentation;
};

template <Field F>
AlgebraPtr<F> load_algebra(const F& f, const std::string& path, const Args& a) {
  json j = io::read_file(path);
  if (a.length_bound && j.contains("quiver")) j["length_bound"] = *a.length_bound;
  return io::algebra_from_json(f, j);
}

template <Field F>
std::vector<std::size_t> vertex_indices(const AlgebraPtr<F>& alg, const std::string& list) {
  std::vector<std::size_t> out;
  for (const auto& name : split(list)) {
    std::size_t v = 0;
    while (v < alg->num_vertices() && alg->vertex_name(v) != name) ++v;
    if (v == alg->num_vertices()) throw UsageError("unknown vertex '" + name + "'");
    out.push_back(v);
  }
  return out;
}

int exit_for(SiltingVerdict v) {
  if (v == SiltingVerdict::silting) return 0;
  return v == SiltingVerdict::undecided ? 2 : 1;
}

int exit_for(GorensteinVerdict v) {
  if (v == GorensteinVerdict::gorenstein_silting) return 0;
  return v == GorensteinVerdict::undecided ? 2 : 1;
}

int exit_for(const std::string& verdict) {
  if (verdict == "PASS") return 0;
  return verdict == "FAIL" ? 1 : 2;
}

template <Field F>
json module_summary(const Module<F>& m) {
  return {{"fingerprint", fingerprint(m)}, {"dimension_vector", m.dimension_vector()}, {"module", io::to_json(m)}};
}

template <Field F>
TriangularContext<F> bundled_gamma(const F& f) {
  auto k = compile_quiver_algebra(corpus::point(spec_of(f)), f);
  auto d = compile_quiver_algebra(corpus::dual_numbers(spec_of(f)), f);
  return build_triangular(k, d, scalar_left_bimodule(k, d));
}

// ---------------------------------------------------------------------------------------------------------------

template <Field F>
int algebra_cmd(const Args& a, const Inputs<F>& in) {
  if (a.command == "build") return emit(io::to_json(*in.algebra), 0);
  if (a.command == "derive") {
    const auto& alg = in.algebra;
    if (a.op == "corner") return emit(io::to_json(*corner(*alg, vertex_indices(alg, a.vertices)).algebra), 0);
    if (a.op == "quotient")
      return emit(io::to_json(*quotient_by_idempotents(*alg, vertex_indices(alg, a.vertices)).algebra), 0);
    if (a.op == "opposite") return emit(io::to_json(*opposite(*alg)), 0);
    if (a.op == "tensor") {
      if (!in.algebra2) throw UsageError("--op tensor needs --with");
      return emit(io::to_json(*tensor(*alg, *in.algebra2)), 0);
    }
    throw UsageError("--op must be corner, quotient, opposite or tensor");
  }
  // triangular
  return emit(io::to_json(*in.context), 0);
}

template <Field F>
int module_cmd(const Args& a, const Inputs<F>& in, const SiltingOptions& opt) {
  const auto& alg = in.algebra;
  if (a.command == "enumerate") {
    json mods = json::array();
    for (const auto& m : enumerate_indecomposables(alg, opt.enumeration)) mods.push_back(module_summary(m));
    return emit({{"algebra", alg->id()}, {"dim_bound", a.dim_bound}, {"indecomposables", mods}}, 0);
  }
  const Module<F>& m = *in.module;
  if (a.command == "validate") {
    // module_from_json already enforced the axioms
    return emit({{"valid", true}, {"fingerprint", fingerprint(m)}, {"dimension_vector", m.dimension_vector()}}, 0);
  }
  if (a.command == "hom") {
    const auto h = hom_space(m, *in.to);
    json basis = json::array();
    for (const auto& b : h.basis) basis.push_back(io::to_json(b));
    return emit({{"dim", h.dim()}, {"basis", basis}}, 0);
  }
  if (a.command == "tau") return emit(module_summary(ar_translate(m)), 0);
  // decompose
  json parts = json::array();
  for (const auto& p : decompose(m, opt.search)) {
    json s = module_summary(p.module);
    s["multiplicity"] = p.multiplicity;
    parts.push_back(std::move(s));
  }
  return emit({{"fingerprint", fingerprint(m)}, {"summands", parts}}, 0);
}

template <Field F>
int silting_cmd(const Args& a, const Inputs<F>& in, const SiltingOptions& opt) {
  const auto& alg = in.algebra;
  if (a.command == "enumerate") {
    json certs = json::array();
    std::size_t silting = 0;
    for (const auto& c : enumerate_silting(alg, opt)) {
      if (c.verdict == SiltingVerdict::silting) ++silting;
      certs.push_back(io::to_json(c));
    }
    return emit({{"algebra", alg->id()}, {"count", silting}, {"certificates", certs}}, 0);
  }
  if (a.command == "check") {
    const Module<F>& t = *in.module;
    const auto c = in.presentation ? silting_check(t, *in.presentation, a.presentation, opt) : silting_check(t, opt);
    return emit(io::to_json(c), exit_for(c.verdict));
  }
  // tensor
  const auto ab = tensor(*alg, *in.algebra2);
  const auto r = tensor_silting(*in.module, auto_presentation(*in.module), *in.module2, auto_presentation(*in.module2), ab, opt);
  json j = io::to_json(r);
  j["algebra"] = ab->id();
  return emit(j, exit_for(r.certificate.verdict));
}

template <Field F>
int gorenstein_cmd(const Args& a, const Inputs<F>& in, const SiltingOptions& opt) {
  const auto& alg = in.algebra;
  if (a.command == "report") {
    const auto r = gorenstein_report(alg);
    return emit(io::to_json(r), r.gorenstein ? 0 : 1);
  }
  const auto gp = gp_classification(alg, opt.enumeration);
  if (a.command == "gp") return emit(io::to_json(gp), gp.complete ? 0 : 2);
  if (a.presentation != "auto") throw UsageError("gorenstein check supports --presentation auto only");
  const auto c = gorenstein_silting_check(*in.module, gp, opt);
  return emit(io::to_json(c), exit_for(c.verdict));
}

template <Field F>
int recollement_cmd(const Args& a, const Inputs<F>& in) {
  const auto subset = vertex_indices(in.algebra, a.vertices);
  if (a.command == "verify") {
    const auto c = idempotent_recollement(in.algebra, subset, false);
    const auto rep = recollement_battery(c, a.count, a.seed, a.dim_bound);
    json j = io::to_json(rep);
    j["seed"] = a.seed;
    return emit(j, rep.ok() ? 0 : 1);
  }
  const auto c = idempotent_recollement(in.algebra, subset);
  if (a.command == "build") {
    return emit({{"middle", in.algebra->id()},
                 {"vertices", split(a.vertices)},
                 {"quotient", io::to_json(*c.quotient_algebra())},
                 {"corner", io::to_json(*c.corner_algebra())},
                 {"left_induced", io::to_json(c.left_induced)},
                 {"right_induced", io::to_json(c.right_induced)}},
                0);
  }
  // apply: the module lives over whichever algebra the functor starts from
  const json mj = io::read_file(a.module);
  auto over = [&](const AlgebraPtr<F>& alg) {
    try {
      return io::module_from_json(alg, mj);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  };
  const std::string& f = a.functor;
  Module<F> out = Module<F>::zero(in.algebra);
  if (f == "i") out = c.i(over(c.quotient_algebra()));
  else if (f == "q") out = c.q(over(in.algebra));
  else if (f == "p") out = c.p(over(in.algebra));
  else if (f == "e") out = c.e(over(in.algebra));
  else if (f == "l") out = c.l(over(c.corner_algebra()));
  else if (f == "r") out = c.r(over(c.corner_algebra()));
  else throw UsageError("--functor must be one of i, q, p, e, l, r");
  return emit(module_summary(out), 0);
}

template <Field F>
int theorems_cmd(const Args& a, const Inputs<F>& in, const SiltingOptions& opt) {
  const F& f = in.field;
  const auto mode = a.presentations == "complemented" ? GluingPresentations::complemented : GluingPresentations::proper;
  std::vector<SuiteReport> suites;
  const bool all = a.suite == "all";
  if (all || a.suite == "idempotent") {
    if (in.algebra) {
      suites.push_back(idempotent_suite(in.algebra, vertex_indices(in.algebra, a.vertices), opt));
    } else {
      for (const auto& q : {corpus::a2(spec_of(f)), corpus::a3_zero_relation(spec_of(f))})
        suites.push_back(idempotent_suite(compile_quiver_algebra(q, f), {1}, opt));
    }
  }
  if (all || a.suite == "tensor") {
    auto left = in.algebra ? in.algebra : compile_quiver_algebra(corpus::a2(spec_of(f)), f);
    auto right = in.algebra2 ? in.algebra2 : left;
    suites.push_back(tensor_suite(left, right, opt));
  }
  if (all || a.suite == "gluing") suites.push_back(gluing_suite(in.context ? *in.context : bundled_gamma(f), opt, a.seed, mode));
  if (suites.empty()) throw UsageError("--suite must be idempotent, tensor, gluing or all");
  json reps = json::array();
  std::string verdict = "PASS";
  for (const auto& s : suites) {
    reps.push_back(io::to_json(s));
    const auto v = s.verdict();
    if (v == "FAIL") verdict = "FAIL";
    else if (v == "UNDECIDED" && verdict == "PASS") verdict = "UNDECIDED";
  }
  return emit({{"suite", a.suite}, {"seed", a.seed}, {"dim_bound", a.dim_bound}, {"verdict", verdict}, {"suites", reps}},
              exit_for(verdict));
}

/// FNV-1a of the canonical dump; parsing and re-dumping with sorted keys is a fixed point.
std::string content_hash(const json& j) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

/// Kind and content hash of a corpus file; the hash is taken from the parsed object, so re-serialization keeps it.
std::pair<std::string, std::string> classify(const json& j) {
  auto with_field = [&](const FieldSpec& fs, auto&& fn) -> std::string {
    if (fs.kind == FieldSpec::Kind::rational) return fn(RationalField{});
    return fn(PrimeField(fs.p));
  };
  if (j.contains("kind") && j["kind"] == "triangular")
    return {"context", with_field(io::context_field(j), [&](const auto& f) { return io::context_from_json(f, j).gamma()->id(); })};
  if (j.contains("quiver") || j.contains("left_multiplication"))
    return {"algebra", with_field(io::algebra_field(j), [&](const auto& f) { return io::algebra_from_json(f, j)->id(); })};
  if (j.contains("left_action")) return {"bimodule", content_hash(j)};
  if (j.contains("action")) return {"module", content_hash(j)};
  throw io::FormatError("unrecognized corpus file");
}

json corpus_entry(const fs::path& p) {
  std::pair<std::string, std::string> kh;
  try {
    kh = classify(io::read_file(p.string()));
  } catch (const Error& e) {
    throw UsageError(p.filename().string() + ": " + e.what());
  }
  const auto& [kind, hash] = kh;
  return {{"id", p.stem().string()}, {"kind", kind}, {"file", p.filename().string()}, {"hash", hash}};
}

int corpus_cmd(const Args& a) {
  const fs::path dir = a.corpus_dir.empty() ? fs::path(SILTING_CORPUS_DIR) : fs::path(a.corpus_dir);
  if (a.command == "list") {
    std::vector<fs::path> files;
    if (fs::exists(dir))
      for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    json entries = json::array();
    for (const auto& p : files) entries.push_back(corpus_entry(p));
    return emit({{"entries", entries}}, 0);
  }
  need(a.file, "--file");
  const fs::path src(a.file);
  json entry = corpus_entry(src);
  if (!a.kind.empty() && entry["kind"] != a.kind)
    throw UsageError("file is a " + entry["kind"].get<std::string>() + ", not a " + a.kind);
  fs::create_directories(dir);
  fs::copy_file(src, dir / src.filename(), fs::copy_options::overwrite_existing);
  return emit(entry, 0);
}

template <Field F>
int execute(const F& f, const Args& a) {
  Inputs<F> in{f, nullptr, nullptr, {}, {}, {}, {}, {}};
  const SiltingOptions opt = options(a);
  const std::string& g = a.group;
  // parsing phase: every failure is malformed input
  try {
    if (g == "algebra" && a.command == "build") {
      need(a.quiver, "--quiver");
      in.algebra = load_algebra(f, a.quiver, a);
    } else if (g == "algebra" && a.command == "triangular") {
      need(a.a, "--a");
      need(a.b, "--b");
      need(a.bimodule, "--bimodule");
      const auto aa = load_algebra(f, a.a, a), bb = load_algebra(f, a.b, a);
      in.context = build_triangular(aa, bb, io::bimodule_from_json(aa, bb, io::read_file(a.bimodule)));
    } else if (g == "theorems") {
      if (!a.algebra.empty()) in.algebra = load_algebra(f, a.algebra, a);
      if (!a.algebra2.empty()) in.algebra2 = load_algebra(f, a.algebra2, a);
      if (!a.context.empty()) in.context = io::context_from_json(f, io::read_file(a.context));
      if (a.suite == "idempotent" && in.algebra) need(a.vertices, "--vertices");
    } else if (g != "corpus") {
      need(a.algebra, "--algebra");
      in.algebra = load_algebra(f, a.algebra, a);
      if (!a.algebra2.empty()) in.algebra2 = load_algebra(f, a.algebra2, a);
      const bool wants_module = (g == "module" && a.command != "enumerate") || (g == "silting" && a.command != "enumerate") ||
                                (g == "gorenstein" && a.command == "check");
      if (wants_module) {
        need(a.module, "--module");
        in.module = io::module_from_json(in.algebra, io::read_file(a.module));
      }
      if (g == "silting" && a.command == "check" && a.presentation != "auto") {
        in.presentation = io::presentation_from_json(in.algebra, io::read_file(a.presentation));
        if (!is_isomorphic(in.presentation->cokernel.target, *in.module))
          throw UsageError("presentation does not present the module");
      }
      if (g == "module" && a.command == "hom") {
        need(a.to, "--to");
        in.to = io::module_from_json(in.algebra, io::read_file(a.to));
      }
      if (g == "silting" && a.command == "tensor") {
        if (!in.algebra2) in.algebra2 = in.algebra;
        need(a.module2, "--module2");
        in.module2 = io::module_from_json(in.algebra2, io::read_file(a.module2));
      }
      if (g == "recollement") need(a.vertices, "--vertices");
      if (g == "recollement" && a.command == "apply") {
        need(a.module, "--module");
        need(a.functor, "--functor");
      }
    }
  } catch (const UsageError&) {
    throw;
  } catch (const io::FormatError&) {
    throw;
  } catch (const Error& e) {
    throw io::FormatError(e.what());
  }
  if (g == "algebra") return algebra_cmd(a, in);
  if (g == "module") return module_cmd(a, in, opt);
  if (g == "silting") return silting_cmd(a, in, opt);
  if (g == "gorenstein") return gorenstein_cmd(a, in, opt);
  if (g == "recollement") return recollement_cmd(a, in);
  if (g == "theorems") return theorems_cmd(a, in, opt);
  return corpus_cmd(a);
}

/// Field of the main input file; --field applies to bundled algebras and must agree with files when given.
FieldSpec input_field(const Args& a, bool field_given) {
  const FieldSpec flag = field_flag(a.field);
  const std::string path = a.algebra.empty() ? (a.quiver.empty() ? a.a : a.quiver) : a.algebra;
  json j;
  if (!path.empty()) j = io::read_file(path);
  else if (!a.context.empty()) j = io::member(io::read_file(a.context), "a");
  else return flag;
  const FieldSpec fs = io::algebra_field(j);
  if (field_given && !(fs == flag)) throw UsageError("--field disagrees with the field of the input file");
  return fs;
}

}  // namespace

int main(int argc, char** argv) {
  Args a;
  CLI::App app{"exact silting and Gorenstein silting computations"};
  app.require_subcommand(1);
  app.fallthrough();
  auto* field_opt = app.add_option("--field", a.field, "prime characteristic or Q, for bundled algebras")->capture_default_str();
  app.add_option("--dim-bound", a.dim_bound, "probe and enumeration dimension bound")->capture_default_str();
  app.add_option("--length-bound", a.length_bound, "path length bound for quiver files");
  app.add_option("--seed", a.seed, "seed for random probes")->capture_default_str();
  app.add_option("--budget", a.budget, "enumeration candidate budget")->capture_default_str();
  app.add_option("--jobs", a.jobs, "enumeration worker threads")->capture_default_str();
  app.add_option("--out", a.out, "output format")->check(CLI::IsMember({"json"}))->capture_default_str();

  auto group = [&](const char* name, const char* help, std::initializer_list<const char*> commands) {
    auto* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    g->fallthrough();
    std::vector<CLI::App*> subs;
    for (const char* c : commands) {
      auto* s = g->add_subcommand(c);
      s->fallthrough();
      s->callback([&a, name, c] {
        a.group = name;
        a.command = c;
      });
      subs.push_back(s);
    }
    return subs;
  };
  auto add = [](CLI::App* s, const char* flag, auto& var, const char* help) { s->add_option(flag, var, help); };

  for (auto* s : group("algebra", "build and derive algebras", {"build", "derive", "triangular"})) {
    add(s, "--quiver", a.quiver, "quiver file");
    add(s, "--algebra", a.algebra, "algebra file");
    add(s, "--op", a.op, "corner|quotient|opposite|tensor");
    add(s, "--vertices", a.vertices, "comma separated vertex names");
    add(s, "--with", a.algebra2, "second algebra for tensor");
    add(s, "--a", a.a, "algebra A");
    add(s, "--b", a.b, "algebra B");
    add(s, "--bimodule", a.bimodule, "(A,B)-bimodule file");
  }
  for (auto* s : group("module", "module operations", {"validate", "hom", "tau", "decompose", "enumerate"})) {
    add(s, "--algebra", a.algebra, "algebra file");
    add(s, "--module", a.module, "module file");
    add(s, "--to", a.to, "second module for hom");
  }
  for (auto* s : group("silting", "silting certificates", {"check", "enumerate", "tensor"})) {
    add(s, "--algebra", a.algebra, "algebra file");
    add(s, "--module", a.module, "module file");
    add(s, "--presentation", a.presentation, "auto or a presentation file");
    add(s, "--algebra2", a.algebra2, "second algebra for tensor");
    add(s, "--module2", a.module2, "second module for tensor");
  }
  for (auto* s : group("gorenstein", "Gorenstein data", {"report", "gp", "check"})) {
    add(s, "--algebra", a.algebra, "algebra file");
    add(s, "--module", a.module, "module file");
    add(s, "--presentation", a.presentation, "auto");
  }
  for (auto* s : group("recollement", "idempotent recollements", {"build", "apply", "verify"})) {
    add(s, "--algebra", a.algebra, "algebra file");
    add(s, "--vertices", a.vertices, "comma separated vertex names of e");
    add(s, "--functor", a.functor, "i|q|p|e|l|r");
    add(s, "--module", a.module, "module file");
    add(s, "--count", a.count, "number of random probes");
  }
  for (auto* s : group("theorems", "verification suites", {"run"})) {
    add(s, "--suite", a.suite, "idempotent|tensor|gluing|all");
    add(s, "--algebra", a.algebra, "algebra for the idempotent or tensor suite");
    add(s, "--algebra2", a.algebra2, "second tensor factor");
    add(s, "--vertices", a.vertices, "idempotent vertices");
    add(s, "--context", a.context, "triangular context file");
    add(s, "--presentations", a.presentations, "proper|complemented");
  }
  for (auto* s : group("corpus", "bundled inputs", {"list", "add"})) {
    add(s, "--file", a.file, "file to add");
    add(s, "--kind", a.kind, "expected kind");
    add(s, "--corpus-dir", a.corpus_dir, "corpus directory");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return emit({{"error", e.what()}, {"kind", "usage"}}, 3);
  }

  try {
    const FieldSpec fs = a.group == "corpus" ? FieldSpec::prime(2) : input_field(a, field_opt->count() > 0);
    if (fs.kind == FieldSpec::Kind::rational) return execute(RationalField{}, a);
    return execute(PrimeField(fs.p), a);
  } catch (const UsageError& e) {
    return emit({{"error", e.what()}, {"kind", "usage"}}, 3);
  } catch (const io::FormatError& e) {
    return emit({{"error", e.what()}, {"kind", "malformed_input"}}, 3);
  } catch (const Error& e) {
    return emit({{"error", e.what()}, {"kind", "computation"}}, 2);
  } catch (const std::exception& e) {
    return emit({{"error", e.what()}, {"kind", "computation"}}, 2);
  }
}
