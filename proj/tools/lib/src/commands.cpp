#include "abekit/tools/commands.hpp"

#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "abekit/constructions.hpp"
#include "abekit/tools/corpus.hpp"
#include "abekit/tools/document.hpp"
#include "abekit/transforms.hpp"
#include "abekit/validators.hpp"

namespace abekit::tools {

using abekit::to_string;

using nlohmann::json;

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const GuardExceeded& e) {
    err << "resource guard exceeded: " << e.what() << "\n";
    return kExitGuard;
  } catch (const StageFailure& e) {
    err << "pipeline failed at " << e.what() << "\n";
    return kExitFailed;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << "\n";
    return kExitFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailed;
  }
}

ExpansionLimits limits_of(const GlobalOptions& g) {
  ExpansionLimits l;
  l.max_degree = g.max_degree;
  return l;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

int to_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError("bad " + what + " '" + s + "'");
}

void emit(std::ostream& os, const Document& doc, const std::string& path) {
  if (path.empty() || path == "-") {
    os << serialize(doc);
  } else {
    write_document(doc, path);
  }
}

template <class T>
const T& expect(const Document& doc, const std::string& pass) {
  if (const T* m = std::get_if<T>(&doc.model)) return *m;
  throw UsageError("pass " + pass + " does not take a " + to_string(doc.kind()) + " document");
}

Metrics metrics_of(const Model& m) {
  return std::visit(
      [](const auto& x) -> Metrics {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Formula> || std::is_same_v<T, Circuit> || std::is_same_v<T, Abp>) {
          return metrics(x);
        } else if constexpr (std::is_same_v<T, FormulaFamily>) {
          Metrics total;
          for (const auto& [i, f] : x.components) {
            const Metrics c = metrics(f);
            total.nodes += c.nodes;
            total.edges += c.edges;
            total.leaf_count += c.leaf_count;
            total.depth = std::max(total.depth, c.depth);
          }
          return total;
        } else {
          Metrics p;
          p.nodes = x.term_count();
          p.depth = x.degree();
          return p;
        }
      },
      m);
}

json metrics_json(const Metrics& m) {
  return {{"nodes", m.nodes}, {"edges", m.edges}, {"depth", m.depth}, {"leaf_count", m.leaf_count}};
}

NcPolynomial expand_model(const Model& m, const ExpansionLimits& limits) {
  return std::visit(
      [&](const auto& x) -> NcPolynomial {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, NcPolynomial>) {
          enforce_limits(x, limits);
          return x;
        } else {
          return expand(x, limits);
        }
      },
      m);
}

Formula as_formula(const Document& doc, const std::string& pass) {
  if (const auto* f = std::get_if<Formula>(&doc.model)) return *f;
  if (const auto* fam = std::get_if<FormulaFamily>(&doc.model)) return fam->to_formula();
  throw UsageError(pass + " needs a formula or family document, got " + to_string(doc.kind()));
}

BucketingSystem choose_buckets(const Document& doc, const std::optional<std::string>& spec) {
  return spec ? parse_buckets(*spec) : buckets_for(doc);
}

Document generate(const std::string& spec, const GlobalOptions& g) {
  const auto parts = split(spec, ':');
  const std::string& name = parts.front();
  auto arg = [&](std::size_t i, int fallback) {
    return i < parts.size() ? to_int(parts[i], "parameter in '" + spec + "'") : fallback;
  };
  auto need = [&](std::size_t count) {
    if (parts.size() != count) throw UsageError("spec '" + spec + "' expects " + std::to_string(count - 1) + " parameters");
  };
  Document doc;
  doc.meta = {{"generator", spec}};
  try {
    if (name == "lchsym-abp") {
      need(3);
      doc.model = lchsym_abp(arg(1, 0), arg(2, 0));
      doc.buckets = BucketingSystem::linked_rows(arg(1, 0));
    } else if (name == "lchsym-formula") {
      need(3);
      doc.model = lchsym_formula(arg(1, 0), arg(2, 0));
      doc.buckets = BucketingSystem::linked_rows(arg(1, 0));
    } else if (name == "chsym-formula") {
      need(3);
      doc.model = chsym_formula_interpolated(arg(1, 0), arg(2, 0));
      doc.buckets = BucketingSystem::singletons(arg(1, 0));
    } else if (name == "oracle") {
      need(4);
      const auto kind = parse_poly_kind(parts[1]);
      if (!kind) throw UsageError("unknown polynomial kind '" + parts[1] + "'");
      doc.model = oracle_polynomial({*kind, arg(2, 0), arg(3, 0)});
    } else if (name == "comb") {
      need(2);
      if (arg(1, 0) < 1) throw UsageError("comb needs at least one leaf");
      doc.model = left_comb(arg(1, 0));
    } else if (name.rfind("random-", 0) == 0) {
      if (parts.size() > 3) throw UsageError("spec '" + spec + "' takes at most nodes and vars");
      CorpusOptions opts;
      opts.max_nodes = arg(1, opts.max_nodes);
      opts.vars = arg(2, opts.vars);
      if (opts.max_nodes < 1 || opts.vars < 1) throw UsageError("nodes and vars must be positive");
      Rng rng(g.seed);
      doc.meta["seed"] = g.seed;
      const std::string what = name.substr(7);
      if (what == "formula") {
        doc.model = random_formula(rng, opts);
      } else if (what == "abc-formula") {
        doc.model = random_abecedarian_formula(rng, opts);
      } else if (what == "circuit") {
        doc.model = random_circuit(rng, opts);
      } else if (what == "abc-circuit") {
        doc.model = random_circuit(rng, opts, true);
      } else if (what == "abp") {
        doc.model = random_abp(rng, opts);
      } else if (what == "abc-abp") {
        doc.model = random_abp(rng, opts, true);
        doc.buckets = BucketingSystem::singletons(opts.vars);
      } else {
        throw UsageError("unknown generator '" + name + "'");
      }
    } else {
      throw UsageError("unknown generator '" + name + "'");
    }
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
  return doc;
}

void report_pass(std::ostream& os, const GlobalOptions& g, const std::string& pass, const Metrics& in,
                 const Metrics& out, const PassLog& log) {
  if (g.machine) {
    json j{{"pass", pass}, {"input", metrics_json(in)}, {"output", metrics_json(out)}};
    json figs = json::object();
    for (const auto& [k, v] : log.figures) figs[k] = v;
    j["figures"] = figs;
    j["warnings"] = log.warnings;
    os << j.dump() << "\n";
    return;
  }
  os << "pass " << pass << ": nodes " << in.nodes << " -> " << out.nodes << ", depth " << in.depth << " -> "
     << out.depth << "\n";
  for (const auto& [k, v] : log.figures) os << "  " << k << " = " << v << "\n";
  for (const auto& w : log.warnings) os << "  warning: " << w << "\n";
}

void print_report(std::ostream& os, const GlobalOptions& g, const std::string& check, const ValidationReport& r) {
  if (g.machine) {
    json v = json::array();
    for (const auto& x : r.violations) {
      v.push_back({{"location", x.location}, {"rule", x.rule}, {"message", x.message}, {"semantic", x.semantic}});
    }
    json j{{"check", check}, {"ok", r.ok}, {"class", to_string(r.classify())}, {"violations", v}};
    if (r.degree) j["degree"] = *r.degree;
    os << j.dump() << "\n";
    return;
  }
  os << "check " << check << ": " << (r.ok ? "OK" : "FAIL");
  if (r.degree) os << " (degree " << *r.degree << ")";
  if (!r.ok) os << " [" << to_string(r.classify()) << "]";
  os << "\n";
  for (const auto& x : r.violations) {
    os << "  " << x.rule << " at " << x.location << ": " << x.message << (x.semantic ? " (semantic)" : "") << "\n";
  }
}

}  // namespace

const std::vector<std::string>& pass_ids() {
  static const std::vector<std::string> ids{"depth-reduce", "homogenize", "abc-circuit", "abc-abp",
                                            "abc-formula",  "abp2formula", "link",        "subpoly",
                                            "amplify",      "chsym2esym", "prune"};
  return ids;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"abc-circuit", "abc-abp",  "abc-formula", "abc-annotations",
                                              "homogeneous", "linked",   "multilinear"};
  return names;
}

int cmd_gen(const std::string& spec, const std::string& output, const GlobalOptions& g, std::ostream& out,
            std::ostream& err) {
  return guarded(err, [&] {
    emit(out, generate(spec, g), output);
    return kExitOk;
  });
}

int cmd_xform(const XformOptions& x, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Document in = read_document(x.input);
    const ExpansionLimits limits = limits_of(g);
    PassLog log;
    Document res;
    res.meta = in.meta;
    res.meta["pass"] = x.pass;
    const std::string& p = x.pass;
    if (p == "prune") {
      std::visit(
          [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, NcPolynomial>) {
              throw UsageError("pass prune does not take a polynomial document");
            } else if constexpr (std::is_same_v<T, FormulaFamily>) {
              FormulaFamily fam;
              fam.m = m.m;
              for (const auto& [i, f] : m.components) {
                Formula c = prune_zeros(f);
                if (!c.store.is_zero(c.root)) fam.components.emplace(i, std::move(c));
              }
              res.model = std::move(fam);
            } else {
              res.model = prune_zeros(m);
            }
          },
          in.model);
      res.buckets = in.buckets;
    } else if (p == "depth-reduce") {
      if (x.base < 1) throw UsageError("--base must be positive");
      res.model = depth_reduce(expect<Formula>(in, p), static_cast<std::size_t>(x.base));
      res.buckets = in.buckets;
    } else if (p == "homogenize") {
      if (x.degree < 0) throw UsageError("homogenize needs --degree >= 0");
      const HomogenizeResult h = homogenize_formula_ex(expect<Formula>(in, p), x.degree);
      log.record("reduced_nodes", static_cast<double>(h.reduced_nodes));
      log.record("reduced_depth", h.reduced_depth);
      log.record("bound", homogenize_bound(h.reduced_nodes, h.reduced_depth, x.degree));
      res.model = h.formula;
      res.buckets = in.buckets;
    } else if (p == "abc-circuit") {
      const BucketingSystem B = choose_buckets(in, x.buckets);
      Circuit c;
      if (const auto* f = std::get_if<Formula>(&in.model)) {
        c = to_circuit(*f);
      } else {
        c = expect<Circuit>(in, p);
      }
      res.model = abecedarianize_circuit(c, B, &log);
      res.buckets = B;
    } else if (p == "abc-abp") {
      const BucketingSystem B = choose_buckets(in, x.buckets);
      res.model = abecedarianize_abp(expect<Abp>(in, p), B, &log);
      res.buckets = B;
    } else if (p == "abc-formula") {
      const BucketingSystem B = choose_buckets(in, x.buckets);
      AbecedarianizeOptions opts;
      opts.limits = limits;
      res.model = abecedarianize_formula(expect<Formula>(in, p), B, opts, &log);
      res.buckets = B;
    } else if (p == "abp2formula") {
      res.model = abp_to_formula(expect<Abp>(in, p), x.normalize);
      res.buckets = in.buckets;
    } else if (p == "link") {
      res.model = link_formula(expect<Formula>(in, p));
      res.buckets = in.buckets;
    } else if (p == "subpoly") {
      const auto& fam = expect<FormulaFamily>(in, p);
      std::optional<BucketingSystem> B = in.buckets;
      if (x.buckets) B = parse_buckets(*x.buckets);
      res.model = subpoly_formula(fam, x.a, x.b, B ? &*B : nullptr);
      res.buckets = in.buckets;
    } else if (p == "amplify") {
      if (x.linked.empty()) throw UsageError("amplify needs --linked <formula document>");
      const Document linked = read_document(x.linked);
      AmplifyOptions opts;
      opts.limits = limits;
      opts.verify = true;
      const auto& base = expect<FormulaFamily>(in, p);
      res.model = amplify_degree(base, expect<Formula>(linked, p), opts);
      res.buckets = BucketingSystem::singletons(base.m);
    } else if (p == "chsym2esym") {
      res.model = chsym_to_esym(as_formula(in, p));
    } else {
      throw UsageError("unknown pass '" + p + "'");
    }
    const Metrics before = metrics_of(in.model);
    const Metrics after = metrics_of(res.model);
    const bool to_stdout = x.output.empty() || x.output == "-";
    emit(out, res, x.output);
    report_pass(to_stdout ? err : out, g, p, before, after, log);
    return kExitOk;
  });
}

int cmd_check(const CheckOptionsCli& c, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Document doc = read_document(c.input);
    CheckOptions opts;
    opts.semantic = c.semantic;
    opts.limits = limits_of(g);
    std::vector<std::string> checks = c.checks;
    if (checks.empty()) {
      switch (doc.kind()) {
        case DocKind::Formula: {
          const auto& f = std::get<Formula>(doc.model);
          bool annotated = false;
          for (const Gate& gate : f.store.gates()) annotated = annotated || gate.interval.has_value();
          checks.push_back(annotated ? "abc-annotations" : "homogeneous");
          break;
        }
        case DocKind::Circuit:
          checks.push_back("abc-circuit");
          break;
        case DocKind::Abp:
          checks.push_back("abc-abp");
          break;
        case DocKind::Family:
          checks.push_back("abc-formula");
          break;
        case DocKind::Polynomial:
          throw UsageError("a polynomial document has no structure to check");
      }
    }
    bool ok = true;
    for (const std::string& name : checks) {
      ValidationReport r;
      if (name == "abc-circuit") {
        const BucketingSystem B = choose_buckets(doc, c.buckets);
        if (const auto* f = std::get_if<Formula>(&doc.model)) {
          r = check_circuit_abecedarian(to_circuit(*f), B, opts);
        } else {
          r = check_circuit_abecedarian(expect<Circuit>(doc, name), B, opts);
        }
      } else if (name == "abc-abp") {
        r = check_abp_abecedarian(expect<Abp>(doc, name), choose_buckets(doc, c.buckets), opts);
      } else if (name == "abc-formula") {
        r = check_formula_abecedarian(expect<FormulaFamily>(doc, name), choose_buckets(doc, c.buckets), opts);
      } else if (name == "abc-annotations") {
        r = check_formula_annotations(expect<Formula>(doc, name), choose_buckets(doc, c.buckets), opts);
      } else if (name == "homogeneous") {
        if (const auto* circ = std::get_if<Circuit>(&doc.model)) {
          r = check_homogeneous(*circ);
        } else {
          r = check_homogeneous(as_formula(doc, name));
        }
      } else if (name == "linked") {
        r = check_linked(as_formula(doc, name), opts);
      } else if (name == "multilinear") {
        r = check_multilinear(as_formula(doc, name), opts);
      } else {
        throw UsageError("unknown check '" + name + "'");
      }
      print_report(out, g, name, r);
      ok = ok && r.ok;
    }
    return ok ? kExitOk : kExitFailed;
  });
}

int cmd_diff(const std::string& left, const std::string& right, const GlobalOptions& g, std::ostream& out,
             std::ostream& err) {
  return guarded(err, [&] {
    const Document a = read_document(left);
    const Document b = read_document(right);
    const ExpansionLimits limits = limits_of(g);
    const NcPolynomial pa = expand_model(a.model, limits);
    const NcPolynomial pb = expand_model(b.model, limits);
    if (pa == pb) {
      if (g.machine) {
        out << json{{"diff", "equal"}, {"terms", pa.term_count()}}.dump() << "\n";
      } else {
        out << "EQUAL (" << pa.term_count() << " terms)\n";
      }
      return kExitOk;
    }
    const NcPolynomial delta = pa - pb;
    const Word& w = delta.terms().begin()->first;
    const std::string word = w.empty() ? "1" : to_string(w);
    const std::string ca = to_string(pa.coefficient(w));
    const std::string cb = to_string(pb.coefficient(w));
    if (g.machine) {
      out << json{{"diff", "different"}, {"word", word}, {"left", ca}, {"right", cb}, {"differing_terms", delta.term_count()}}
                 .dump()
          << "\n";
    } else {
      out << "DIFFERENT at " << word << ": left " << ca << ", right " << cb << " (" << delta.term_count()
          << " differing terms)\n";
    }
    return kExitFailed;
  });
}

int cmd_stats(const std::string& input, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Document doc = read_document(input);
    const Metrics m = metrics_of(doc.model);
    json j{{"kind", to_string(doc.kind())}, {"metrics", metrics_json(m)}};
    j["variables"] = variables_of(doc.model).size();
    if (const auto* fam = std::get_if<FormulaFamily>(&doc.model)) {
      json comps = json::object();
      for (const auto& [i, f] : fam->components) comps[std::to_string(i)] = metrics_json(metrics(f));
      j["m"] = fam->m;
      j["components"] = comps;
    }
    if (const auto* a = std::get_if<Abp>(&doc.model)) j["layered"] = abp_layers(*a).has_value();
    if (g.machine) {
      out << j.dump() << "\n";
      return kExitOk;
    }
    out << "kind " << j["kind"].get<std::string>() << "\n";
    if (doc.kind() == DocKind::Polynomial) {
      out << "terms " << m.nodes << "\ndegree " << m.depth << "\n";
    } else {
      out << "nodes " << m.nodes << "\nedges " << m.edges << "\ndepth " << m.depth << "\nleaf_count " << m.leaf_count
          << "\n";
    }
    out << "variables " << j["variables"].get<std::size_t>() << "\n";
    if (j.contains("components")) {
      for (const auto& [i, c] : j["components"].items()) {
        out << "component " << i << ": nodes " << c["nodes"] << ", depth " << c["depth"] << "\n";
      }
    }
    if (j.contains("layered")) out << "layered " << (j["layered"].get<bool>() ? "yes" : "no") << "\n";
    return kExitOk;
  });
}

int cmd_pipeline(const PipelineOptionsCli& p, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    PipelineConfig cfg;
    cfg.amplifications = p.amplifications;
    cfg.target_degree = p.target_degree;
    cfg.semantic_checks = p.semantic;
    cfg.limits = limits_of(g);
    const PipelineResult r = separation_pipeline(p.n, cfg);
    for (const StageReport& s : r.stages) {
      if (g.machine) {
        out << json{{"stage", s.id}, {"description", s.description}, {"metrics", metrics_json(s.metrics)}, {"checks", s.checks}}
                   .dump()
            << "\n";
        continue;
      }
      out << "stage " << s.id << ": " << s.description << "; nodes " << s.metrics.nodes << ", depth "
          << s.metrics.depth << "\n";
      for (const auto& c : s.checks) out << "  ok " << c << "\n";
    }
    if (g.machine) {
      out << json{{"result", "ok"}, {"esym_n", r.esym_n}, {"esym_d", r.esym_d}}.dump() << "\n";
    } else {
      out << "reached esym(" << r.esym_n << "," << r.esym_d << "): homogeneous, multilinear, equal to the oracle\n";
    }
    if (!p.output.empty()) {
      Document doc;
      doc.model = r.final_formula;
      doc.meta = {{"pipeline_n", p.n}, {"esym_n", r.esym_n}, {"esym_d", r.esym_d}};
      write_document(doc, p.output);
    }
    return kExitOk;
  });
}

}  // namespace abekit::tools
