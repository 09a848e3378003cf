// quiverkit command-line interface: validation, classification, extension
// construction, witness solving, complex utilities, and the consistency
// experiments, with deterministic JSON reports.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "quiverkit/json_io.hpp"

using namespace quiverkit;

namespace {

constexpr const char* kToolVersion = "0.1.0";
constexpr const char* kFiniteFieldCaveat =
    "finite-field sampling lies outside the infinite-field hypothesis of the finiteness "
    "criterion; sampled class counts are empirical evidence, not verification";

enum class Outcome { ok = 0, error = 1, negative = 2 };

struct ReportSink {
  std::string command;
  std::uint64_t seed = 0;
  std::string json_path;
  ordered_json inputs = ordered_json::array();
  ordered_json caveats = ordered_json::array();

  void add_input(const std::string& path, const std::string& content) {
    ordered_json in;
    in["path"] = path;
    in["fnv1a64"] = fnv1a64_hex(content);
    in["content"] = content;
    inputs.push_back(std::move(in));
  }
  void add_caveat(const std::string& c) { caveats.push_back(c); }

  void emit(Outcome outcome, ordered_json result) const {
    if (json_path.empty()) return;
    ordered_json env;
    env["tool"] = "quiverkit";
    env["version"] = kToolVersion;
    env["command"] = command;
    env["seed"] = seed;
    env["inputs"] = inputs;
    env["caveats"] = caveats;
    env["status"] = outcome == Outcome::ok ? "ok" : outcome == Outcome::negative ? "negative" : "error";
    env["result"] = std::move(result);
    std::ofstream out(json_path);
    if (!out) fail(errc::invalid_argument, "cannot write JSON report to '" + json_path + "'");
    out << env.dump(2) << "\n";
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::invalid_argument, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Presentation load_presentation(const std::string& path, unsigned cap, ReportSink& sink) {
  std::string text = slurp(path);
  sink.add_input(path, text);
  Presentation p = parse_presentation(text);
  if (cap) p.nilpotency_cap = cap;
  if (p.field->kind() == FieldKind::prime)
    sink.add_caveat("the presentation is over a finite field, outside the paper-level "
                    "infinite-field hypotheses; verdicts are about the combinatorial criterion only");
  return p;
}

// Extension selection shared by extend/witness/experiment.
struct ExtensionArgs {
  std::string base_change_file;
  std::string skew_file;
  std::string quotient_file;
  std::string identity_file;
  std::string algebra_json;  // alternative source for skew
  std::string ext_descriptor;
  std::string group_file;
  std::vector<std::string> extra_relations;

  void attach(CLI::App* cmd) {
    cmd->add_option("--base-change", base_change_file, "presentation file; extend scalars by --ext");
    cmd->add_option("--skew", skew_file, "presentation file; act by --group");
    cmd->add_option("--quotient", quotient_file, "presentation file; quotient by --add relations");
    cmd->add_option("--identity", identity_file, "presentation file; identity extension");
    cmd->add_option("--algebra", algebra_json, "manual algebra JSON (skew source alternative)");
    cmd->add_option("--ext", ext_descriptor, "field descriptor, e.g. Q[x]/(x^2-2)");
    cmd->add_option("--group", group_file, "group action JSON file");
    cmd->add_option("--add", extra_relations, "relation expression to add (repeatable)");
  }

  ExtensionMorphism build(unsigned cap, std::uint64_t /*seed*/, ReportSink& sink) const {
    int chosen = !base_change_file.empty() + !skew_file.empty() + !quotient_file.empty() +
                 !identity_file.empty() + (!algebra_json.empty() && skew_file.empty());
    if (chosen != 1)
      fail(errc::invalid_argument,
           "choose exactly one of --base-change, --skew, --quotient, --identity (or --algebra with --group)");
    if (!base_change_file.empty()) {
      if (ext_descriptor.empty()) fail(errc::invalid_argument, "--base-change needs --ext");
      auto a = path_basis_algebra(load_presentation(base_change_file, cap, sink));
      return base_change(a, FieldSpec::parse(ext_descriptor));
    }
    if (!skew_file.empty() || !algebra_json.empty()) {
      if (group_file.empty()) fail(errc::invalid_argument, "skew extensions need --group");
      AlgebraPtr a;
      if (!skew_file.empty()) {
        a = path_basis_algebra(load_presentation(skew_file, cap, sink));
      } else {
        std::string text = slurp(algebra_json);
        sink.add_input(algebra_json, text);
        a = algebra_from_json(json::parse(text));
      }
      std::string gtext = slurp(group_file);
      sink.add_input(group_file, gtext);
      auto phi = skew_group_algebra(a, group_action_from_json(a, json::parse(gtext)));
      if (!phi.group_order_invertible)
        sink.add_caveat("the group order is not invertible in the coefficient field; witnesses may "
                        "fail to exist and no radical is designated on the target");
      return phi;
    }
    if (!quotient_file.empty()) {
      auto p = load_presentation(quotient_file, cap, sink);
      std::vector<Relation> extra;
      for (const auto& expr : extra_relations) extra.push_back(parse_relation_expr(p, expr));
      return quotient_extension(p, extra);
    }
    auto a = path_basis_algebra(load_presentation(identity_file, cap, sink));
    return identity_extension(a);
  }
};

void print_classification(const Classification& c) {
  for (std::size_t i = 0; i < c.components.size(); ++i)
    std::cout << "component " << i + 1 << ": " << c.components[i].describe() << "\n";
  std::cout << "combined: " << status_name(c.combined) << "\n";
}

Outcome classification_outcome(const Classification& c) {
  return c.combined == ComponentVerdict::Status::unknown ? Outcome::negative : Outcome::ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for quiver-presented algebras: derived-discreteness criterion, "
               "split/separable extension witnesses, and bounded complexes of projectives"};
  app.require_subcommand(1);

  std::string json_path;
  std::uint64_t seed = 0;
  unsigned cap = 0;
  app.add_option("--json", json_path, "write a JSON report to this path")->configurable(false);
  app.add_option("--seed", seed, "seed for all randomized searches (default 0)");
  app.add_option("--cap", cap, "override the nilpotency/degree cap");

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "parse a presentation and check admissibility");
  std::string validate_file;
  validate_cmd->add_option("file", validate_file)->required();

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "decide the derived-discreteness criterion");
  std::string classify_file;
  classify_cmd->add_option("file", classify_file)->required();

  // extend
  auto* extend_cmd = app.add_subcommand("extend", "construct an algebra extension");
  ExtensionArgs extend_args;
  std::string extend_kind;
  extend_cmd->add_option("kind", extend_kind, "base-change | skew | quotient")->required();
  std::string extend_file;
  extend_cmd->add_option("file", extend_file, "presentation file");
  extend_args.attach(extend_cmd);

  // witness
  auto* witness_cmd = app.add_subcommand("witness", "solve for split/separable/projectivity witnesses");
  std::string witness_kind;
  witness_cmd->add_option("kind", witness_kind, "split | separable | projective")->required();
  ExtensionArgs witness_args;
  witness_args.attach(witness_cmd);

  // complex
  auto* complex_cmd = app.add_subcommand("complex", "bounded complexes of projectives");
  std::string complex_op, complex_presentation, complex_json_file, simple_vertex, cdim_str;
  int truncate_at = 0, bound_to = 0;
  unsigned resolve_depth = 4;
  bool radical_only = false;
  std::uint64_t budget = 1u << 22;
  complex_cmd->add_option("op", complex_op, "minimize | truncate | resolve | bound | sample")->required();
  complex_cmd->add_option("presentation", complex_presentation)->required();
  complex_cmd->add_option("--complex", complex_json_file, "complex literal JSON");
  complex_cmd->add_option("--at", truncate_at, "truncation degree");
  complex_cmd->add_option("--simple", simple_vertex, "vertex label of the simple module to resolve");
  complex_cmd->add_option("--depth", resolve_depth, "resolution depth (default 4)");
  complex_cmd->add_option("--cdim", cdim_str, "dimension vector, e.g. \"0:1,-1:2\"");
  complex_cmd->add_option("--to", bound_to, "lower degree for the bound");
  complex_cmd->add_flag("--radical-only", radical_only, "restrict sampled differentials to the radical");
  complex_cmd->add_option("--budget", budget, "enumeration budget (default 2^22)");

  // experiment
  auto* experiment_cmd = app.add_subcommand("experiment", "consistency experiments on extensions");
  std::string experiment_mode;
  experiment_cmd->add_option("mode", experiment_mode, "theorem41 | prop51 | prop53")->required();
  ExtensionArgs experiment_args;
  experiment_args.attach(experiment_cmd);

  CLI11_PARSE(app, argc, argv);

  ReportSink sink;
  sink.seed = seed;
  sink.json_path = json_path;
  for (int i = 1; i < argc; ++i) {
    // The report path is not an input: keep reports byte-identical wherever
    // they are written.
    if (std::string(argv[i]) == "--json") {
      ++i;
      continue;
    }
    if (!sink.command.empty()) sink.command += " ";
    sink.command += argv[i];
  }

  try {
    Outcome outcome = Outcome::ok;
    ordered_json result;

    if (*validate_cmd) {
      auto p = load_presentation(validate_file, cap, sink);
      auto info = admissible_check(p);
      auto a = path_basis_algebra(p);
      std::cout << "presentation is admissible\n";
      std::cout << "vertices: " << p.quiver.vertices.size() << ", arrows: " << p.quiver.arrows.size()
                << ", relations: " << p.relations.size() << "\n";
      std::cout << "dimension of kQ/I: " << a->dim() << ", radical length: " << info.radical_length
                << "\n";
      result["admissible"] = true;
      result["presentation"] = presentation_to_json(p);
      result["dimension"] = a->dim();
      result["radicalLength"] = info.radical_length;
      result["survivingPathsPerLength"] = info.survivors;
    } else if (*classify_cmd) {
      auto p = load_presentation(classify_file, cap, sink);
      auto c = classify_derived_discrete(p);
      print_classification(c);
      result = classification_to_json(c);
      outcome = classification_outcome(c);
    } else if (*extend_cmd) {
      // Positional file sugar: `extend base-change f --ext K` etc.
      if (!extend_file.empty()) {
        if (extend_kind == "base-change") extend_args.base_change_file = extend_file;
        else if (extend_kind == "skew") extend_args.skew_file = extend_file;
        else if (extend_kind == "quotient") extend_args.quotient_file = extend_file;
        else fail(errc::invalid_argument, "extend kind must be base-change, skew, or quotient");
      }
      auto phi = extend_args.build(cap, seed, sink);
      std::cout << "extension kind: " << phi.kind << "\n";
      std::cout << "dim A = " << phi.source->dim() << ", dim B = " << phi.target->dim() << "\n";
      if (phi.kind == "baseChange" && phi.etale_flag)
        std::cout << "note: the extension polynomial is squarefree but (heuristically) reducible; "
                     "the target is an etale coefficient extension\n";
      if (phi.kind == "skewGroup")
        std::cout << "group order invertible: " << (phi.group_order_invertible ? "yes" : "no") << "\n";
      auto target = classify_extension_target(phi, seed);
      std::cout << "target blocks: " << target.blocks.size() << "\n";
      for (std::size_t i = 0; i < target.blocks.size(); ++i)
        std::cout << "  block " << i + 1 << " (dim " << target.blocks[i].dimension
                  << "): " << status_name(target.blocks[i].classification.combined) << "\n";
      result["kind"] = phi.kind;
      result["sourceDimension"] = phi.source->dim();
      result["targetDimension"] = phi.target->dim();
      result["etale"] = phi.etale_flag;
      result["groupOrderInvertible"] = phi.group_order_invertible;
      result["map"] = matrix_to_json(phi.map);
      ordered_json blocks = ordered_json::array();
      for (const auto& b : target.blocks) {
        ordered_json jb;
        jb["dimension"] = b.dimension;
        jb["classification"] = classification_to_json(b.classification);
        blocks.push_back(std::move(jb));
      }
      result["targetBlocks"] = std::move(blocks);
      if (target.via_extension_field) result["targetClassifiedOverExtensionField"] = target.note;
    } else if (*witness_cmd) {
      auto phi = witness_args.build(cap, seed, sink);
      if (witness_kind == "split") {
        auto pi = split_witness(phi);
        result["present"] = pi.has_value();
        if (pi) {
          std::cout << "split retraction found and re-verified exactly\n";
          result["retraction"] = matrix_to_json(*pi);
        } else {
          std::cout << "no split retraction exists (exact linear solve)\n";
          outcome = Outcome::negative;
        }
      } else if (witness_kind == "separable") {
        TensorSquare ts{phi.target, RowSpan(phi.target->field(), 0), {}};
        auto e = separability_idempotent(phi, &ts);
        result["present"] = e.has_value();
        result["tensorSquareDim"] = ts.dim();
        if (e) {
          std::cout << "separability idempotent found and re-verified exactly\n";
          ordered_json lift = ordered_json::array();
          const std::size_t nb = phi.target->dim();
          for (std::size_t q = 0; q < ts.rep_coords.size(); ++q) {
            if ((*e)[q].is_zero()) continue;
            ordered_json term;
            term["left"] = ts.rep_coords[q] / nb;
            term["right"] = ts.rep_coords[q] % nb;
            term["coeff"] = (*e)[q].str();
            lift.push_back(std::move(term));
          }
          result["idempotent"] = std::move(lift);
        } else {
          std::cout << "no separability idempotent exists (exact linear solve)\n";
          outcome = Outcome::negative;
        }
      } else if (witness_kind == "projective") {
        auto idem = lift_idempotents(*phi.source, seed);
        auto [right, left] = restriction_modules(phi);
        auto r = is_projective(right, idem);
        auto l = is_projective(left, idem);
        std::cout << "B as right A-module: " << (r.projective ? "projective" : "not projective") << "\n";
        std::cout << "B as left A-module:  " << (l.projective ? "projective" : "not projective") << "\n";
        ordered_json jr;
        jr["projective"] = r.projective;
        jr["topMultiplicities"] = r.top_multiplicities;
        result["rightModule"] = std::move(jr);
        ordered_json jl;
        jl["projective"] = l.projective;
        jl["topMultiplicities"] = l.top_multiplicities;
        result["leftModule"] = std::move(jl);
        if (!r.projective || !l.projective) outcome = Outcome::negative;
      } else {
        fail(errc::invalid_argument, "witness kind must be split, separable, or projective");
      }
    } else if (*complex_cmd) {
      auto p = load_presentation(complex_presentation, cap, sink);
      auto a = path_basis_algebra(p);
      if (complex_op == "minimize" || complex_op == "truncate") {
        if (complex_json_file.empty()) fail(errc::invalid_argument, "--complex is required");
        std::string text = slurp(complex_json_file);
        sink.add_input(complex_json_file, text);
        auto c = complex_from_json(a, json::parse(text));
        ProjComplex out_c =
            complex_op == "minimize" ? minimize(c) : brutal_truncate(c, truncate_at);
        std::cout << (complex_op == "minimize" ? "minimized" : "truncated") << " complex:\n";
        std::cout << complex_to_json(out_c).dump(2) << "\n";
        result["input"] = complex_to_json(c);
        result["output"] = complex_to_json(out_c);
        result["cohomology"] = dim_vector_to_json(cohomology_dim_vector(out_c));
        result["componentDims"] = dim_vector_to_json(component_dim_vector(out_c));
        if (complex_op == "minimize") result["homotopicallyMinimal"] = is_homotopically_minimal(out_c);
      } else if (complex_op == "resolve") {
        if (simple_vertex.empty()) fail(errc::invalid_argument, "--simple <vertex> is required");
        int v = p.quiver.vertex_index(simple_vertex);
        if (v < 0) fail(errc::unknown_vertex, "'" + simple_vertex + "'");
        auto res = minimal_proj_resolution(simple_module(a, v, Side::left), resolve_depth);
        std::cout << "minimal projective resolution (depth " << resolve_depth << "):\n";
        std::cout << complex_to_json(res).dump(2) << "\n";
        result["resolution"] = complex_to_json(res);
        result["cohomology"] = dim_vector_to_json(cohomology_dim_vector(res));
        result["componentDims"] = dim_vector_to_json(component_dim_vector(res));
        result["homotopicallyMinimal"] = is_homotopically_minimal(res);
      } else if (complex_op == "bound") {
        auto n = dim_vector_from_string(cdim_str);
        auto m = lemma_bound(*a, n, bound_to);
        std::cout << "component-dimension bound: " << dim_vector_to_json(m).dump() << "\n";
        result["cohomologyVector"] = dim_vector_to_json(n);
        result["bound"] = dim_vector_to_json(m);
      } else if (complex_op == "sample") {
        sink.add_caveat(kFiniteFieldCaveat);
        auto n = dim_vector_from_string(cdim_str);
        auto res = finiteness_sampler(a, n, radical_only, budget);
        std::cout << "candidates with d^2 = 0: " << res.candidates_with_d2_zero << "\n";
        std::cout << "chain-isomorphism classes: " << res.iso_class_count << "\n";
        std::cout << "caveat: " << kFiniteFieldCaveat << "\n";
        result["componentDimVector"] = dim_vector_to_json(n);
        result["radicalOnly"] = radical_only;
        result["candidates"] = res.candidates_with_d2_zero;
        result["isoClassCount"] = res.iso_class_count;
        ordered_json reps = ordered_json::array();
        for (const auto& r : res.representatives) reps.push_back(complex_to_json(r));
        result["representatives"] = std::move(reps);
      } else {
        fail(errc::invalid_argument, "complex op must be minimize, truncate, resolve, bound, or sample");
      }
    } else if (*experiment_cmd) {
      ExperimentMode mode;
      if (experiment_mode == "theorem41") mode = ExperimentMode::theorem41;
      else if (experiment_mode == "prop51") mode = ExperimentMode::prop51;
      else if (experiment_mode == "prop53") mode = ExperimentMode::prop53;
      else fail(errc::invalid_argument, "experiment mode must be theorem41, prop51, or prop53");
      auto phi = experiment_args.build(cap, seed, sink);
      auto rep = run_consistency_experiment(phi, mode, seed);
      std::cout << "experiment " << experiment_mode << ": " << rep.verdict << "\n";
      std::cout << "  split: " << (rep.split_present ? "present" : "absent")
                << ", separable: " << (rep.separable_present ? "present" : "absent")
                << ", B_A right projective: " << (rep.right_projective ? "yes" : "no")
                << ", _AB left projective: " << (rep.left_projective ? "yes" : "no") << "\n";
      std::cout << "  source derived-discrete: " << tri_name(rep.source_derived_discrete)
                << ", target derived-discrete: " << tri_name(rep.target_derived_discrete) << "\n";
      for (const auto& imp : rep.implications)
        std::cout << "  [" << imp.status << "] " << imp.name
                  << (imp.detail.empty() ? "" : " — " + imp.detail) << "\n";
      result = experiment_to_json(rep);
      if (rep.verdict == "INCONCLUSIVE") outcome = Outcome::negative;
      if (rep.verdict == "VIOLATION") {
        sink.emit(Outcome::error, result);
        std::cerr << "VIOLATION: definite verdicts contradict the implication (bug signal)\n";
        return 1;
      }
    }

    sink.emit(outcome, result);
    return static_cast<int>(outcome);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    ordered_json result;
    result["error"] = e.what();
    sink.emit(Outcome::error, result);
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
