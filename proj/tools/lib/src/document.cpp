#include "abekit/tools/document.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_map>

namespace abekit::tools {

using abekit::to_string;

using nlohmann::json;

namespace {

constexpr const char* kFormat = "abekit-model";

const char* op_name(Op op) {
  switch (op) {
    case Op::Const:
      return "const";
    case Op::Var:
      return "var";
    case Op::Add:
      return "add";
    case Op::Mul:
      return "mul";
  }
  return "?";
}

[[noreturn]] void fail(const std::string& msg) { throw ParseError(msg); }

Rational rational_of(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) fail(where + ": expected a rational string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const PreconditionError&) {
    fail(where + ": bad rational '" + j.get<std::string>() + "'");
  }
}

Var var_of(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where + ": expected a variable name");
  auto v = parse_var(j.get<std::string>());
  if (!v) fail(where + ": bad variable '" + j.get<std::string>() + "'");
  return *v;
}

const json& field(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) fail(where + ": missing \"" + key + "\"");
  return *it;
}

std::optional<Interval> interval_of(const json& node, const std::string& where) {
  auto it = node.find("interval");
  if (it == node.end() || it->is_null()) return std::nullopt;
  if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number_integer() || !(*it)[1].is_number_integer()) {
    fail(where + ": interval must be [a,b]");
  }
  return Interval{(*it)[0].get<int>(), (*it)[1].get<int>()};
}

// Builds the gates reachable from `roots` into `store`, children first.
std::vector<GateId> read_gates(const json& nodes, const std::vector<long>& roots, GateStore& store) {
  if (!nodes.is_array()) fail("\"nodes\" must be an array");
  std::unordered_map<long, const json*> by_id;
  for (const json& n : nodes) {
    const long id = field(n, "id", "node").get<long>();
    if (!by_id.emplace(id, &n).second) fail("duplicate node id " + std::to_string(id));
  }
  std::unordered_map<long, GateId> done;
  std::set<long> active;
  std::function<GateId(long)> visit = [&](long id) -> GateId {
    if (auto it = done.find(id); it != done.end()) return it->second;
    auto it = by_id.find(id);
    if (it == by_id.end()) fail("reference to unknown node " + std::to_string(id));
    if (!active.insert(id).second) fail("cycle through node " + std::to_string(id));
    const json& n = *it->second;
    const std::string where = "node " + std::to_string(id);
    const std::string op = field(n, "op", where).get<std::string>();
    const auto iv = interval_of(n, where);
    GateId g = 0;
    if (op == "const") {
      g = store.constant(rational_of(field(n, "value", where), where), iv);
    } else if (op == "var") {
      g = store.variable(var_of(field(n, "var", where), where), iv);
    } else if (op == "add" || op == "mul") {
      const json& args = field(n, "args", where);
      if (!args.is_array() || args.size() != 2) fail(where + ": \"args\" must list two node ids");
      const GateId l = visit(args[0].get<long>());
      const GateId r = visit(args[1].get<long>());
      g = store.binary(op == "add" ? Op::Add : Op::Mul, l, r, iv);
    } else {
      fail(where + ": unknown op '" + op + "'");
    }
    active.erase(id);
    done.emplace(id, g);
    return g;
  };
  // Ascending id order keeps documents written by serialize() stable.
  std::set<long> live;
  std::vector<long> stack(roots.begin(), roots.end());
  while (!stack.empty()) {
    const long id = stack.back();
    stack.pop_back();
    auto it = by_id.find(id);
    if (it == by_id.end() || !live.insert(id).second) continue;
    if (auto a = it->second->find("args"); a != it->second->end() && a->is_array()) {
      for (const json& c : *a)
        if (c.is_number_integer()) stack.push_back(c.get<long>());
    }
  }
  for (long id : live) visit(id);
  std::vector<GateId> out;
  for (long r : roots) out.push_back(visit(r));
  return out;
}

Formula read_formula(const json& j, const std::string& where) {
  GateStore store;
  const long root = field(j, "root", where).get<long>();
  const GateId g = read_gates(field(j, "nodes", where), {root}, store).front();
  return extract_tree(store, g);
}

AffineForm read_label(const json& j, const std::string& where) {
  AffineForm f;
  if (j.is_string() || j.is_number()) {
    f.constant = rational_of(j, where);
    return f;
  }
  if (!j.is_object()) fail(where + ": label must be an object");
  if (auto it = j.find("constant"); it != j.end()) f.constant = rational_of(*it, where);
  if (auto it = j.find("linear"); it != j.end()) {
    if (!it->is_object()) fail(where + ": \"linear\" must map variables to coefficients");
    for (const auto& [name, c] : it->items()) f.add(var_of(json(name), where), rational_of(c, where));
  }
  return f;
}

json write_interval(const std::optional<Interval>& iv) {
  if (!iv) return nullptr;
  return json::array({iv->a, iv->b});
}

// One line per node.
void write_nodes(std::ostream& os, const GateStore& store, const std::vector<GateId>& roots,
                 std::vector<long>& id_of, const std::string& indent) {
  const auto live = reachable(store, roots);
  id_of.assign(store.size(), -1);
  long next = 0;
  bool first = true;
  os << "[";
  for (GateId i = 0; i < store.size(); ++i) {
    if (!live[i]) continue;
    id_of[i] = next++;
    const Gate& g = store[i];
    json n;
    n["id"] = id_of[i];
    n["op"] = op_name(g.op);
    if (g.op == Op::Const) n["value"] = to_string(store.value(g));
    if (g.op == Op::Var) n["var"] = to_string(store.var(g));
    if (!g.is_leaf()) n["args"] = json::array({id_of[g.lhs], id_of[g.rhs]});
    if (g.interval) n["interval"] = write_interval(g.interval);
    os << (first ? "\n" : ",\n") << indent << "  " << n.dump();
    first = false;
  }
  os << "\n" << indent << "]";
}

void write_formula_body(std::ostream& os, const Formula& f, const std::string& indent) {
  std::vector<long> id_of;
  os << indent << "\"nodes\": ";
  write_nodes(os, f.store, {f.root}, id_of, indent);
  os << ",\n" << indent << "\"root\": " << id_of[f.root];
}

std::vector<Var> collect_vars(const GateStore& s, const std::vector<GateId>& roots) {
  std::set<Var> vs;
  const auto live = reachable(s, roots);
  for (GateId i = 0; i < s.size(); ++i) {
    if (live[i] && s[i].op == Op::Var) vs.insert(s.var(s[i]));
  }
  return {vs.begin(), vs.end()};
}

}  // namespace

std::string to_string(DocKind k) {
  switch (k) {
    case DocKind::Formula:
      return "formula";
    case DocKind::Circuit:
      return "circuit";
    case DocKind::Abp:
      return "abp";
    case DocKind::Family:
      return "family";
    case DocKind::Polynomial:
      return "polynomial";
  }
  return "?";
}

std::optional<DocKind> parse_doc_kind(std::string_view text) {
  for (DocKind k : {DocKind::Formula, DocKind::Circuit, DocKind::Abp, DocKind::Family, DocKind::Polynomial}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

Document parse_document(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("not JSON: ") + e.what());
  }
  try {
    if (!j.is_object()) fail("document must be a JSON object");
    if (auto it = j.find("format"); it != j.end() && *it != kFormat) fail("unknown format " + it->dump());
    const std::string kind_name = field(j, "kind", "document").get<std::string>();
    const auto kind = parse_doc_kind(kind_name);
    if (!kind) fail("unknown kind '" + kind_name + "'");

    Document doc;
    if (auto it = j.find("meta"); it != j.end()) doc.meta = *it;
    if (auto it = j.find("variables"); it != j.end()) {
      std::map<int, std::vector<Var>> groups;
      for (const json& v : *it) {
        const int b = field(v, "bucket", "variable").get<int>();
        if (b < 1) fail("bucket ids start at 1");
        groups[b].push_back(var_of(field(v, "name", "variable"), "variable"));
      }
      std::vector<std::vector<Var>> bs;
      int expect = 1;
      for (auto& [b, vars] : groups) {
        if (b != expect++) fail("bucket ids must be contiguous from 1");
        bs.push_back(std::move(vars));
      }
      try {
        doc.buckets = BucketingSystem(std::move(bs));
      } catch (const PreconditionError& e) {
        fail(std::string("variables: ") + e.what());
      }
    }

    switch (*kind) {
      case DocKind::Formula:
        doc.model = read_formula(j, "formula");
        break;
      case DocKind::Circuit: {
        Circuit c;
        const auto outs = field(j, "outputs", "circuit").get<std::vector<long>>();
        c.outputs = read_gates(field(j, "nodes", "circuit"), outs, c.store);
        doc.model = std::move(c);
        break;
      }
      case DocKind::Family: {
        FormulaFamily fam;
        fam.m = field(j, "m", "family").get<int>();
        for (const json& comp : field(j, "components", "family")) {
          const int index = field(comp, "index", "component").get<int>();
          if (index < 1 || index > fam.m + 1) fail("component index " + std::to_string(index) + " out of range");
          if (!fam.components.emplace(index, read_formula(comp, "component")).second) {
            fail("component " + std::to_string(index) + " listed twice");
          }
        }
        doc.model = std::move(fam);
        break;
      }
      case DocKind::Abp: {
        Abp a;
        std::unordered_map<long, int> vid;
        for (const json& v : field(j, "vertices", "abp")) {
          const long id = field(v, "id", "vertex").get<long>();
          std::optional<int> b;
          if (auto it = v.find("bucket"); it != v.end() && !it->is_null()) b = it->get<int>();
          if (!vid.emplace(id, a.add_vertex(b)).second) fail("duplicate vertex id " + std::to_string(id));
        }
        auto vertex = [&](const json& x) {
          auto it = vid.find(x.get<long>());
          if (it == vid.end()) fail("reference to unknown vertex " + x.dump());
          return it->second;
        };
        for (const json& e : field(j, "edges", "abp")) {
          a.add_edge(vertex(field(e, "from", "edge")), vertex(field(e, "to", "edge")),
                     read_label(field(e, "label", "edge"), "edge"));
        }
        for (const json& s : field(j, "starts", "abp")) a.add_start(vertex(s));
        for (const json& t : field(j, "terminals", "abp")) a.add_terminal(vertex(t));
        try {
          a.topological_order();
        } catch (const CycleError& e) {
          fail(e.what());
        }
        doc.model = std::move(a);
        break;
      }
      case DocKind::Polynomial: {
        NcPolynomial p;
        for (const json& t : field(j, "terms", "polynomial")) {
          Word w;
          for (const json& v : field(t, "word", "term")) w.push_back(var_of(v, "term"));
          p.add_term(w, rational_of(field(t, "coef", "term"), "term"));
        }
        doc.model = std::move(p);
        break;
      }
    }
    return doc;
  } catch (const json::exception& e) {
    fail(std::string("malformed document: ") + e.what());
  }
}

Document read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

std::string serialize(const Document& doc) {
  std::ostringstream os;
  os << "{\n  \"format\": \"" << kFormat << "\",\n  \"version\": 1,\n  \"kind\": \"" << to_string(doc.kind())
     << "\",\n  \"meta\": " << doc.meta.dump() << ",\n";
  if (doc.buckets) {
    os << "  \"variables\": [";
    bool first = true;
    for (int b = 1; b <= doc.buckets->size(); ++b) {
      for (Var v : doc.buckets->bucket(b)) {
        os << (first ? "\n" : ",\n") << "    " << json{{"name", to_string(v)}, {"bucket", b}}.dump();
        first = false;
      }
    }
    os << "\n  ],\n";
  }
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Formula>) {
          write_formula_body(os, m, "  ");
        } else if constexpr (std::is_same_v<T, Circuit>) {
          std::vector<long> id_of;
          os << "  \"nodes\": ";
          write_nodes(os, m.store, m.outputs, id_of, "  ");
          json outs = json::array();
          for (GateId o : m.outputs) outs.push_back(id_of[o]);
          os << ",\n  \"outputs\": " << outs.dump();
        } else if constexpr (std::is_same_v<T, FormulaFamily>) {
          os << "  \"m\": " << m.m << ",\n  \"components\": [";
          bool first = true;
          for (const auto& [i, f] : m.components) {
            os << (first ? "\n" : ",\n") << "    {\n      \"index\": " << i << ",\n";
            write_formula_body(os, f, "      ");
            os << "\n    }";
            first = false;
          }
          os << "\n  ]";
        } else if constexpr (std::is_same_v<T, Abp>) {
          os << "  \"vertices\": [";
          for (int v = 0; v < m.vertex_count(); ++v) {
            json jv{{"id", v}};
            if (m.bucket(v)) jv["bucket"] = *m.bucket(v);
            os << (v ? ",\n" : "\n") << "    " << jv.dump();
          }
          os << "\n  ],\n  \"edges\": [";
          bool first = true;
          for (const AbpEdge& e : m.edges()) {
            json label = json::object();
            if (e.label.constant != 0) label["constant"] = to_string(e.label.constant);
            json lin = json::object();
            for (const auto& [v, c] : e.label.linear) lin[to_string(v)] = to_string(c);
            label["linear"] = lin;
            os << (first ? "\n" : ",\n") << "    " << json{{"from", e.from}, {"to", e.to}, {"label", label}}.dump();
            first = false;
          }
          os << "\n  ],\n  \"starts\": " << json(m.starts()).dump() << ",\n  \"terminals\": "
             << json(m.terminals()).dump();
        } else {
          os << "  \"terms\": [";
          bool first = true;
          for (const auto& [w, c] : m.terms()) {
            json word = json::array();
            for (Var v : w) word.push_back(to_string(v));
            os << (first ? "\n" : ",\n") << "    " << json{{"word", word}, {"coef", to_string(c)}}.dump();
            first = false;
          }
          os << "\n  ]";
        }
      },
      doc.model);
  os << "\n}\n";
  return os.str();
}

void write_document(const Document& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << serialize(doc);
}

std::vector<Var> variables_of(const Model& model) {
  return std::visit(
      [](const auto& m) -> std::vector<Var> {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Formula>) {
          return collect_vars(m.store, {m.root});
        } else if constexpr (std::is_same_v<T, Circuit>) {
          return collect_vars(m.store, m.outputs);
        } else if constexpr (std::is_same_v<T, FormulaFamily>) {
          std::set<Var> vs;
          for (const auto& [i, f] : m.components) {
            for (Var v : collect_vars(f.store, {f.root})) vs.insert(v);
          }
          return {vs.begin(), vs.end()};
        } else if constexpr (std::is_same_v<T, Abp>) {
          std::set<Var> vs;
          for (const AbpEdge& e : m.edges()) {
            for (const auto& [v, c] : e.label.linear) vs.insert(v);
          }
          return {vs.begin(), vs.end()};
        } else {
          std::set<Var> vs;
          for (const auto& [w, c] : m.terms()) vs.insert(w.begin(), w.end());
          return {vs.begin(), vs.end()};
        }
      },
      model);
}

BucketingSystem buckets_for(const Document& doc) {
  if (doc.buckets) return *doc.buckets;
  const auto vars = variables_of(doc.model);
  int n = 0;
  int d = 0;
  std::optional<VarKind> kind;
  for (Var v : vars) {
    if (kind && *kind != v.kind()) throw PreconditionError("variables of mixed naming; declare the buckets explicitly");
    kind = v.kind();
    switch (v.kind()) {
      case VarKind::Plain:
        n = std::max(n, v.first());
        break;
      case VarKind::Linked:
        n = std::max({n, v.first(), v.second()});
        break;
      case VarKind::Positional:
        d = std::max(d, v.first());
        n = std::max(n, v.second());
        break;
    }
  }
  if (const auto* fam = std::get_if<FormulaFamily>(&doc.model); fam && (!kind || *kind != VarKind::Positional)) {
    n = std::max(n, fam->m);
  }
  if (const auto* a = std::get_if<Abp>(&doc.model)) {
    for (int v = 0; v < a->vertex_count(); ++v) n = std::max(n, a->bucket(v).value_or(0));
  }
  if (!kind) return BucketingSystem::singletons(std::max(n, 1));
  switch (*kind) {
    case VarKind::Plain:
      return BucketingSystem::singletons(n);
    case VarKind::Linked:
      return BucketingSystem::linked_rows(n);
    case VarKind::Positional:
      return BucketingSystem::by_position(n, d);
  }
  return BucketingSystem::singletons(n);
}

BucketingSystem parse_buckets(std::string_view spec) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : spec) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  auto num = [&](std::size_t i) {
    if (i >= parts.size()) throw ParseError("bucket spec '" + std::string(spec) + "' is missing a parameter");
    try {
      std::size_t used = 0;
      const int v = std::stoi(parts[i], &used);
      if (used != parts[i].size() || v < 1) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw ParseError("bad number '" + parts[i] + "' in bucket spec");
    }
  };
  const std::string& name = parts[0];
  if (name == "singletons" && parts.size() == 2) return BucketingSystem::singletons(num(1));
  if (name == "rows" && parts.size() == 2) return BucketingSystem::linked_rows(num(1));
  if (name == "position" && parts.size() == 3) return BucketingSystem::by_position(num(1), num(2));
  if (name == "subscript" && parts.size() == 3) return BucketingSystem::by_subscript(num(1), num(2));
  if (name == "single" && parts.size() == 2) {
    std::vector<Var> all;
    for (int i = 1; i <= num(1); ++i) all.push_back(Var::plain(i));
    return BucketingSystem({all});
  }
  throw ParseError("unknown bucket spec '" + std::string(spec) + "'");
}

}  // namespace abekit::tools
