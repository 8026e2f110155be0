#pragma once

// Problem files, reports and cross-check script emission for the fitcalc CLI.
// Needs nlohmann/json on the include path.

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fitcalc/pipeline.hpp"

namespace fitcalc {

inline const std::vector<std::string>& known_tasks() {
  static const std::vector<std::string> t{"image", "fitting1", "tower", "presentation", "double-points", "consistency"};
  return t;
}

struct ProblemSpec {
  std::string name;
  std::shared_ptr<const MapGerm> germ;
  std::shared_ptr<const MapGerm> unfolding;  // may be null
  std::vector<std::string> tasks;
  std::vector<Method> methods;  // for "consistency"; empty means the default set
  std::optional<unsigned long long> budget;
  std::string format = "text";
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

// Raw, still-textual problem: what both input encodings decode to.
struct RawProblem {
  struct Entry {
    std::string value;
    std::size_t line = 0;
  };
  using Section = std::vector<std::pair<std::string, Entry>>;
  std::map<std::string, Section> sections;
  std::map<std::string, std::size_t> section_line;

  const Entry* get(const std::string& sec, const std::string& key) const {
    auto it = sections.find(sec);
    if (it == sections.end()) return nullptr;
    for (const auto& [k, e] : it->second)
      if (k == key) return &e;
    return nullptr;
  }
  bool has(const std::string& sec) const { return sections.count(sec) > 0; }
};

inline RawProblem read_sectioned(std::string_view text) {
  RawProblem raw;
  std::string section;
  std::size_t lineno = 0, offset = 0;
  while (offset <= text.size()) {
    std::size_t nl = text.find('\n', offset);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(offset, nl - offset);
    std::size_t line_start = offset;
    offset = nl + 1;
    ++lineno;
    std::size_t hash = line.find_first_of("#;");
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ParseError("line " + std::to_string(lineno) + ": unterminated section header", line_start, lineno);
      section = trim(std::string_view(t).substr(1, t.size() - 2));
      if (raw.sections.count(section))
        throw ParseError("line " + std::to_string(lineno) + ": duplicate section [" + section + "]", line_start, lineno);
      raw.sections[section];
      raw.section_line[section] = lineno;
      continue;
    }
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) + ": expected key = value", line_start, lineno);
    if (section.empty())
      throw ParseError("line " + std::to_string(lineno) + ": entry outside of any section", line_start, lineno);
    std::string key = trim(std::string_view(t).substr(0, eq));
    std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) throw ParseError("line " + std::to_string(lineno) + ": empty key", line_start, lineno);
    auto& sec = raw.sections[section];
    for (const auto& kv : sec)
      if (kv.first == key)
        throw ParseError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'", line_start, lineno);
    sec.push_back({key, {value, lineno}});
  }
  return raw;
}

inline std::string json_scalar(const nlohmann::json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_array()) {
    std::string out;
    for (const auto& e : v) {
      if (e.is_array() && e.size() == 2 && e[0].is_string() && e[1].is_string()) {
        out += (out.empty() ? "" : ", ") + e[0].get<std::string>() + ":" + e[1].get<std::string>();
      } else {
        out += (out.empty() ? "" : ", ") + json_scalar(e, where);
      }
    }
    return out;
  }
  throw ParseError("unsupported JSON value at " + where, 0);
}

// JSON encoding: {"source": {"vars": [...], "weights": [...]}, "map": {"X": "x", ...}, "tasks": [...], ...}.
// Nested objects become sections; "tasks" may be a top-level array.
inline RawProblem read_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  if (!doc.is_object()) throw ParseError("JSON problem must be an object", 0);
  RawProblem raw;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    auto& sec = raw.sections[it.key()];
    if (it.key() == "tasks" && it.value().is_array()) {
      sec.push_back({"run", {json_scalar(it.value(), "tasks"), 0}});
      continue;
    }
    if (it.key() == "name" && it.value().is_string()) {
      raw.sections.erase(it.key());
      raw.sections["problem"].push_back({"name", {it.value().get<std::string>(), 0}});
      continue;
    }
    if (!it.value().is_object()) throw ParseError("JSON section '" + it.key() + "' must be an object", 0);
    for (auto kv = it.value().begin(); kv != it.value().end(); ++kv) {
      if (kv.value().is_object()) {
        // "unfolding": {"map": {...}} is flattened into the section
        for (auto inner = kv.value().begin(); inner != kv.value().end(); ++inner)
          sec.push_back({inner.key(), {json_scalar(inner.value(), it.key() + "." + inner.key()), 0}});
      } else {
        sec.push_back({kv.key(), {json_scalar(kv.value(), it.key() + "." + kv.key()), 0}});
      }
    }
  }
  return raw;
}

inline ParseError parse_error_at(const RawProblem::Entry* e, const std::string& msg) {
  if (e && e->line) return ParseError("line " + std::to_string(e->line) + ": " + msg, 0, e->line);
  return ParseError(msg, 0);
}

inline std::vector<int> parse_weights(const RawProblem::Entry* e, std::size_t count) {
  if (!e) return std::vector<int>(count, 1);
  std::vector<int> w;
  for (const auto& tok : split_list(e->value)) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || v <= 0 || v > 1000) throw parse_error_at(e, "weights must be positive integers, got '" + tok + "'");
    w.push_back(int(v));
  }
  if (w.size() != count)
    throw parse_error_at(e, "expected " + std::to_string(count) + " weights, got " + std::to_string(w.size()));
  return w;
}

inline RingPtr parse_ring(const RawProblem& raw, const std::string& sec) {
  const auto* vars = raw.get(sec, "vars");
  if (!vars) {
    auto it = raw.section_line.find(sec);
    throw ParseError((it != raw.section_line.end() ? "line " + std::to_string(it->second) + ": " : std::string()) +
                         "section [" + sec + "] needs 'vars'",
                     0, it != raw.section_line.end() ? it->second : 0);
  }
  auto names = split_list(vars->value);
  if (names.empty()) throw parse_error_at(vars, "empty variable list");
  auto weights = parse_weights(raw.get(sec, "weights"), names.size());
  try {
    return PolyRing::make(names, weights);
  } catch (const Error& e) {
    throw parse_error_at(vars, e.what());
  }
}

inline Polynomial parse_component(const RingPtr& R, const RawProblem::Entry& e) {
  try {
    return parse_polynomial(R, e.value);
  } catch (const ParseError& p) {
    throw ParseError((e.line ? "line " + std::to_string(e.line) + ": " : std::string()) + p.what(), p.position(),
                     e.line);
  }
}

}  // namespace detail

// Sectioned key-value text, or JSON when the first non-blank character is '{'.
//
//   [source]  vars = x, y        weights = 4, 1
//   [target]  vars = X, Y, Z     weights = 4, 5, 6
//   [map]     X = x   Y = y5-xy   Z = y6+xy2
//   [unfolding] params = a:A, b:B   weights = 2, 3   Y = y5-xy+ay3+by2
//   [tasks]   run = image, tower
//   [options] budget = 10000000   format = text   methods = minors, grauert_remmert
inline ProblemSpec parse_problem(std::string_view text) {
  std::string head = detail::trim(text.substr(0, std::min<std::size_t>(text.size(), 64)));
  detail::RawProblem raw = !head.empty() && head.front() == '{' ? detail::read_json(text) : detail::read_sectioned(text);

  for (const auto& [sec, entries] : raw.sections) {
    static const std::vector<std::string> known{"problem", "source", "target", "map", "unfolding", "tasks", "options"};
    if (std::find(known.begin(), known.end(), sec) == known.end()) {
      auto it = raw.section_line.find(sec);
      std::size_t line = it == raw.section_line.end() ? 0 : it->second;
      throw ParseError((line ? "line " + std::to_string(line) + ": " : std::string()) + "unknown section [" + sec + "]",
                       0, line);
    }
  }
  for (const char* need : {"source", "target", "map"})
    if (!raw.has(need)) throw ParseError(std::string("missing section [") + need + "]", 0);

  ProblemSpec spec;
  if (const auto* n = raw.get("problem", "name")) spec.name = n->value;
  RingPtr S = detail::parse_ring(raw, "source");
  RingPtr T = detail::parse_ring(raw, "target");
  if (T->nvars() != S->nvars() + 1)
    throw detail::parse_error_at(raw.get("target", "vars"),
                                 "target needs exactly one more variable than the source (" +
                                     std::to_string(S->nvars()) + " source, " + std::to_string(T->nvars()) +
                                     " target)");

  const auto& map_sec = raw.sections.at("map");
  std::vector<Polynomial> comps(T->nvars(), Polynomial(S));
  std::vector<bool> seen(T->nvars(), false);
  for (const auto& [key, e] : map_sec) {
    auto idx = T->find(key);
    if (!idx) throw detail::parse_error_at(&e, "'" + key + "' is not a target variable");
    comps[*idx] = detail::parse_component(S, e);
    seen[*idx] = true;
  }
  for (std::size_t j = 0; j < T->nvars(); ++j)
    if (!seen[j]) throw ParseError("[map] has no component for target variable " + T->var(j), 0);
  try {
    spec.germ = std::make_shared<MapGerm>(S, T, comps);
  } catch (const Error& e) {
    throw ParseError(std::string("invalid map: ") + e.what(), 0);
  }

  if (raw.has("unfolding")) {
    const auto* params = raw.get("unfolding", "params");
    if (!params) throw ParseError("[unfolding] needs 'params'", 0);
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& tok : detail::split_list(params->value)) {
      auto colon = tok.find(':');
      if (colon == std::string::npos) pairs.push_back({tok, tok});
      else pairs.push_back({tok.substr(0, colon), tok.substr(colon + 1)});
      if (pairs.back().first.empty() || pairs.back().second.empty())
        throw detail::parse_error_at(params, "malformed parameter '" + tok + "'");
    }
    if (pairs.empty()) throw detail::parse_error_at(params, "no unfolding parameters");
    auto pw = detail::parse_weights(raw.get("unfolding", "weights"), pairs.size());
    std::vector<std::string> sv = S->vars(), tv = T->vars();
    std::vector<int> sw = S->weights(), tw = T->weights();
    std::vector<UnfoldingParam> ups;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      ups.push_back({sv.size(), tv.size()});
      sv.push_back(pairs[i].first);
      sw.push_back(pw[i]);
      tv.push_back(pairs[i].second);
      tw.push_back(pw[i]);
    }
    RingPtr SF, TF;
    try {
      SF = PolyRing::make(sv, sw);
      TF = PolyRing::make(tv, tw);
    } catch (const Error& e) {
      throw detail::parse_error_at(params, e.what());
    }
    std::vector<Polynomial> fc;
    for (std::size_t j = 0; j < T->nvars(); ++j) fc.push_back(embed_by_name(comps[j], SF));
    for (const auto& up : ups) fc.push_back(Polynomial::variable(SF, up.source_var));
    for (const auto& [key, e] : raw.sections.at("unfolding")) {
      if (key == "params" || key == "weights") continue;
      auto idx = T->find(key);
      if (!idx) throw detail::parse_error_at(&e, "'" + key + "' is not a base target variable");
      fc[*idx] = detail::parse_component(SF, e);
    }
    try {
      spec.unfolding = std::make_shared<MapGerm>(SF, TF, fc, ups);
      check_unfolding_restricts(*spec.germ, *spec.unfolding);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(std::string("invalid unfolding: ") + e.what(), 0);
    }
  }

  if (const auto* run = raw.get("tasks", "run")) {
    spec.tasks = detail::split_list(run->value);
    for (const auto& t : spec.tasks)
      if (std::find(known_tasks().begin(), known_tasks().end(), t) == known_tasks().end())
        throw detail::parse_error_at(run, "unknown task '" + t + "'");
  }
  if (spec.tasks.empty()) throw ParseError("task list is empty", 0);

  if (const auto* b = raw.get("options", "budget")) {
    try {
      std::size_t used = 0;
      unsigned long long v = std::stoull(b->value, &used);
      if (used != b->value.size() || v == 0) throw std::invalid_argument("budget");
      spec.budget = v;
    } catch (const std::exception&) {
      throw detail::parse_error_at(b, "budget must be a positive integer");
    }
  }
  if (const auto* f = raw.get("options", "format")) {
    if (f->value != "text" && f->value != "structured") throw detail::parse_error_at(f, "format must be text or structured");
    spec.format = f->value;
  }
  if (const auto* m = raw.get("options", "methods")) {
    for (const auto& tok : detail::split_list(m->value)) {
      auto meth = parse_method(tok);
      if (!meth) throw detail::parse_error_at(m, "unknown method '" + tok + "'");
      spec.methods.push_back(*meth);
    }
  }
  for (const auto& [key, e] : raw.sections["options"])
    if (key != "budget" && key != "format" && key != "methods") throw detail::parse_error_at(&e, "unknown option '" + key + "'");
  return spec;
}

// ---------------------------------------------------------------------------
// Reports

struct LabeledIdeal {
  std::string label;  // e.g. Fitt_1[grauert_remmert]
  Ideal ideal;
};

struct Report {
  std::string name;
  std::optional<Polynomial> image;
  std::vector<LabeledIdeal> ideals;
  std::optional<Presentation> presentation;
  std::optional<PolyMatrix> divided_differences;
  std::vector<std::string> methods;  // consistency matrix axes
  std::vector<std::vector<std::optional<bool>>> consistency;
  std::vector<std::string> warnings;
};

inline std::string fitt_label(std::size_t k, const std::string& method) {
  return "Fitt_" + std::to_string(k) + "[" + method + "]";
}

// Runs the tasks in file order. Budget and computation errors propagate.
inline Report run_problem(const ProblemSpec& spec) {
  std::optional<ScopedStepBudget> guard;
  if (spec.budget) guard.emplace(*spec.budget);
  const MapGerm& f = *spec.germ;
  Report rep;
  rep.name = spec.name;
  if (!f.is_weighted_homogeneous())
    rep.warnings.push_back("input is not weighted-homogeneous: global results may differ from the germ");

  auto need_image = [&]() -> const Polynomial& {
    if (!rep.image) rep.image = image_ideal(f);
    return *rep.image;
  };
  std::optional<Ideal> fitt1;
  auto need_fitt1 = [&]() -> const Ideal& {
    if (!fitt1) fitt1 = fitting1_grauert_remmert(f, need_image());
    return *fitt1;
  };
  auto push = [&](std::string label, Ideal I) { rep.ideals.push_back({std::move(label), std::move(I)}); };

  for (const auto& task : spec.tasks) {
    if (task == "image") {
      push(fitt_label(0, "elimination"), Ideal(f.target(), {need_image()}));
    } else if (task == "fitting1") {
      push(fitt_label(1, method_label(Method::GrauertRemmert)), need_fitt1());
      if (spec.unfolding) push(fitt_label(1, method_label(Method::Theorem1)), fitting1_from_unfolding(f, *spec.unfolding));
    } else if (task == "tower") {
      Tower t = fitting_tower_theorem2(f, need_image(), need_fitt1());
      for (std::size_t k = 0; k < t.fitt.size(); ++k) push(fitt_label(k, method_label(Method::Theorem2Tower)), t.fitt[k]);
      for (auto& w : t.warnings) rep.warnings.push_back(std::move(w));
    } else if (task == "presentation") {
      rep.presentation = presentation_matrix(f, need_image());
      if (!rep.presentation->validated) {
        rep.warnings.push_back("presentation not validated: " + rep.presentation->diagnostic);
      } else {
        for (std::size_t k = 0; k <= rep.presentation->lambda.rows(); ++k)
          push(fitt_label(k, method_label(Method::Minors)), fitting_from_presentation(*rep.presentation, k));
      }
    } else if (task == "double-points") {
      rep.divided_differences = divided_difference_matrix(f);
      push("D2[divided_differences]", double_point_ideal(f));
    } else if (task == "consistency") {
      std::vector<Method> methods = spec.methods;
      if (methods.empty()) {
        methods = {Method::Minors, Method::GrauertRemmert, Method::Theorem2Tower};
        if (spec.unfolding) methods.push_back(Method::Theorem1);
      }
      FittingReport fr = consistency_report(f, methods, spec.unfolding.get());
      rep.image = fr.image;
      rep.methods.clear();
      for (const auto& r : fr.results) {
        rep.methods.push_back(method_label(r.method));
        if (r.error) {
          rep.warnings.push_back(std::string(method_label(r.method)) + " failed: " + *r.error);
          continue;
        }
        for (std::size_t k = 0; k < r.tower.size(); ++k) push(fitt_label(k, method_label(r.method)), r.tower[k]);
      }
      rep.consistency = fr.consistency;
      if (fr.presentation && !rep.presentation) rep.presentation = fr.presentation;
      for (auto& w : fr.warnings) rep.warnings.push_back(std::move(w));
    }
  }
  std::vector<std::string> uniq;
  for (auto& w : rep.warnings)
    if (std::find(uniq.begin(), uniq.end(), w) == uniq.end()) uniq.push_back(std::move(w));
  rep.warnings = std::move(uniq);
  return rep;
}

inline std::vector<std::string> generator_strings(const Ideal& I) {
  std::vector<std::string> out;
  for (const auto& g : I.normalized_generators()) out.push_back(to_string(normalized(g)));
  if (out.empty()) out.push_back("0");
  return out;
}

inline std::string render_text(const Report& rep) {
  std::ostringstream os;
  if (!rep.name.empty()) os << "# " << rep.name << '\n';
  if (rep.image) os << "image\n  " << to_string(*rep.image) << '\n';
  if (rep.presentation) {
    const auto& P = *rep.presentation;
    os << "basis\n ";
    for (const auto& m : P.basis.monomials) os << ' ' << to_string(Polynomial::monomial(P.basis.ring, m));
    os << "\nlambda" << (P.validated ? "" : " (not validated)") << '\n';
    std::istringstream rows(to_string(P.lambda));
    for (std::string line; std::getline(rows, line);) os << "  " << line << '\n';
  }
  if (rep.divided_differences) {
    os << "alpha\n";
    std::istringstream rows(to_string(*rep.divided_differences));
    for (std::string line; std::getline(rows, line);) os << "  " << line << '\n';
  }
  for (const auto& li : rep.ideals) {
    os << li.label << '\n';
    for (const auto& g : generator_strings(li.ideal)) os << "  " << g << '\n';
  }
  if (!rep.consistency.empty()) {
    os << "consistency";
    for (const auto& m : rep.methods) os << ' ' << m;
    os << '\n';
    for (std::size_t a = 0; a < rep.methods.size(); ++a) {
      os << "  " << rep.methods[a];
      for (std::size_t b = 0; b < rep.methods.size(); ++b) {
        const auto& v = rep.consistency[a][b];
        os << ' ' << (!v ? "n/a" : *v ? "true" : "false");
      }
      os << '\n';
    }
  }
  for (const auto& w : rep.warnings) os << "warning: " << w << '\n';
  return os.str();
}

inline nlohmann::ordered_json render_structured(const Report& rep) {
  nlohmann::ordered_json j;
  if (!rep.name.empty()) j["name"] = rep.name;
  if (rep.image) j["image"] = to_string(*rep.image);
  if (rep.presentation) {
    const auto& P = *rep.presentation;
    nlohmann::ordered_json p;
    for (const auto& m : P.basis.monomials) p["basis"].push_back(to_string(Polynomial::monomial(P.basis.ring, m)));
    for (std::size_t r = 0; r < P.lambda.rows(); ++r) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (std::size_t c = 0; c < P.lambda.cols(); ++c) row.push_back(to_string(P.lambda(r, c)));
      p["lambda"].push_back(row);
    }
    p["validated"] = P.validated;
    if (!P.diagnostic.empty()) p["diagnostic"] = P.diagnostic;
    j["presentation"] = p;
  }
  if (rep.divided_differences) {
    const auto& A = *rep.divided_differences;
    for (std::size_t r = 0; r < A.rows(); ++r) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (std::size_t c = 0; c < A.cols(); ++c) row.push_back(to_string(A(r, c)));
      j["alpha"].push_back(row);
    }
  }
  j["ideals"] = nlohmann::ordered_json::array();
  for (const auto& li : rep.ideals) j["ideals"].push_back({{"label", li.label}, {"generators", generator_strings(li.ideal)}});
  if (!rep.consistency.empty()) {
    j["consistency"]["methods"] = rep.methods;
    for (const auto& row : rep.consistency) {
      nlohmann::ordered_json r = nlohmann::ordered_json::array();
      for (const auto& v : row) r.push_back(v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr));
      j["consistency"]["matrix"].push_back(r);
    }
  }
  j["warnings"] = rep.warnings;
  return j;
}

// ---------------------------------------------------------------------------
// Cross-check scripts. Purely textual; nothing is executed.

namespace detail {

inline bool single_letter_names(const PolyRing& R) {
  for (const auto& v : R.vars())
    if (v.size() != 1) return false;
  return true;
}

inline std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

inline std::string weights_list(const PolyRing& R) {
  std::vector<std::string> w;
  for (int x : R.weights()) w.push_back(std::to_string(x));
  return join(w, ",");
}

// A ring name that is not one of the variables.
inline std::string ring_name(std::string base, const std::vector<const PolyRing*>& rings) {
  auto clash = [&](const std::string& n) {
    for (const auto* R : rings)
      if (R->find(n)) return true;
    return false;
  };
  while (clash(base)) base += "r";
  return base;
}

class SingularScript {
 public:
  SingularScript(const MapGerm& f) : f_(f) {
    style_ = single_letter_names(*f.source()) && single_letter_names(*f.target()) ? PolyStyle::Compact : PolyStyle::Caret;
  }

  std::string poly(const Polynomial& p) const { return to_string(p, style_); }

  std::string ring_decl(const std::string& name, const PolyRing& R) const {
    return "ring " + name + "=0,(" + join(R.vars(), ",") + "),(wp(" + weights_list(R) + "));\n";
  }

  std::string map_decl(const std::string& name, const std::string& target_ring, const MapGerm& g) const {
    std::vector<std::string> comps;
    for (const auto& c : g.components()) comps.push_back(poly(c));
    return "map " + name + "=" + target_ring + "," + join(comps, ",") + ";\n";
  }

 private:
  const MapGerm& f_;
  PolyStyle style_;
};

}  // namespace detail

namespace detail {
inline std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

// x' -> xp1 for CAS syntax
inline std::vector<std::string> cas_names(const PolyRing& D) {
  std::vector<std::string> names;
  for (const auto& v : D.vars()) {
    auto primes = std::count(v.begin(), v.end(), '\'');
    names.push_back(primes ? v.substr(0, v.find('\'')) + "p" + std::to_string(primes) : v);
  }
  return names;
}
}  // namespace detail

inline std::vector<std::string> known_dialects() { return {"singular", "macaulay2"}; }

inline std::string emit_singular(const ProblemSpec& spec) {
  const MapGerm& f = *spec.germ;
  const PolyRing& S = *f.source();
  const PolyRing& T = *f.target();
  std::vector<const PolyRing*> rings{&S, &T};
  if (spec.unfolding) {
    rings.push_back(spec.unfolding->source().get());
    rings.push_back(spec.unfolding->target().get());
  }
  std::string t = detail::ring_name("t", rings), s = detail::ring_name("s", rings), st = detail::ring_name("st", rings),
              q = detail::ring_name("q", rings);
  detail::SingularScript sc(f);
  std::ostringstream os;
  auto has = [&](const char* task) { return std::find(spec.tasks.begin(), spec.tasks.end(), task) != spec.tasks.end(); };
  bool fit1 = has("fitting1") || has("tower") || has("consistency");

  os << "// image by elimination from the graph\n";
  os << sc.ring_decl(t, T) << sc.ring_decl(s, S);
  os << "def " << st << "=" << s << "+" << t << ";\nsetring " << st << ";\n";
  std::vector<std::string> graph;
  for (std::size_t j = 0; j < T.nvars(); ++j) {
    std::string c = sc.poly(f.components()[j]);
    bool bare = f.components()[j].size() == 1 && f.components()[j].leading_coeff() == 1;
    graph.push_back(T.var(j) + "-" + (bare ? c : "(" + c + ")"));
  }
  os << "ideal I1=" << detail::join(graph, ",") << ";\n";
  std::string kill;
  for (const auto& v : S.vars()) kill += detail::single_letter_names(S) ? v : "*" + v;
  if (!detail::single_letter_names(S)) kill = kill.substr(1);
  os << "ideal h=eliminate(I1," << kill << ");\nh;\n";
  os << "setring " << t << ";\nideal h=imap(" << st << ",h);\n";

  if (fit1) {
    os << "// Fitt_1 as the conductor ((a) : (a*jh : jh)) modulo h\n";
    os << "ideal jh=jacob(h);\nideal a=jh[1];\n";
    os << "qring " << q << "=std(h);\nideal jh=imap(" << t << ",jh);\nideal a=imap(" << t << ",a);\n";
    os << "ideal fit1=quotient(a,quotient(a*jh,jh));\nfit1;\n";
    os << "setring " << t << ";\nideal fit1=std(imap(" << q << ",fit1)+h);\n";
  }
  if (has("tower") || has("consistency")) {
    os << "// Fitt_{k+2} = (Fitt_{k+1}^2 : Fitt_k) until the unit ideal\n";
    os << "list fitt=std(h),fit1;\n";
    os << "while (reduce(1,std(fitt[size(fitt)]))!=0)\n{\n";
    os << "  fitt=insert(fitt,std(quotient(fitt[size(fitt)]*fitt[size(fitt)],fitt[size(fitt)-1])),size(fitt));\n}\n";
    os << "fitt;\n";
  }
  if (has("presentation") || has("consistency")) {
    os << "// presentation matrix and its minors\n";
    os << "LIB \"presmatrix.lib\";\n";
    os << "setring " << t << ";\n" << sc.map_decl("f", t, f);
    os << "presmatrix(f,0);\n";
  }
  if (spec.unfolding && (fit1 || has("consistency"))) {
    const MapGerm& F = *spec.unfolding;
    detail::SingularScript su(F);
    std::string tF = detail::ring_name("tF", rings), sF = detail::ring_name("sF", rings),
                t0 = detail::ring_name("t0", rings);
    os << "// Fitt_1 through the stable unfolding: (J_H : F*^-1(R_F)), then parameters to zero\n";
    os << su.ring_decl(tF, *F.target()) << su.ring_decl(sF, *F.source());
    os << "ideal p=0;\n" << su.map_decl("F", tF, F);
    std::vector<std::string> comps;
    for (const auto& c : F.components()) comps.push_back(su.poly(c));
    os << "ideal g=" << detail::join(comps, ",") << ";\n";
    os << "matrix jF=jacob(g);\nideal RF=std(minor(jF," << F.n() << "));\n";
    os << "setring " << tF << ";\nideal H=preimage(" << sF << ",F,p);\nideal jH=jacob(H);\n";
    os << "ideal FRF=preimage(" << sF << ",F,RF);\nideal fit1F=quotient(jH,FRF);\n";
    std::vector<std::string> zero_map;
    for (const auto& v : F.target()->vars()) {
      bool param = false;
      for (const auto& p : F.params()) param = param || F.target()->var(p.target_var) == v;
      zero_map.push_back(param ? "0" : v);
    }
    os << sc.ring_decl(t0, T);
    os << "map z=" << tF << "," << detail::join(zero_map, ",") << ";\n";
    os << "ideal fit1=std(z(fit1F));\nfit1;\n";
  }
  if (has("double-points")) {
    PolyMatrix alpha = divided_difference_matrix(f);
    const PolyRing& D = *alpha.ring();
    std::string d = detail::ring_name("d", rings);
    os << "// double points: (f(x)-f(x')) + maximal minors of the divided differences\n";
    std::vector<std::string> names = detail::cas_names(D);
    os << "ring " << d << "=0,(" << detail::join(names, ",") << "),(wp(" << detail::weights_list(D) << "));\n";
    RingPtr Dn = PolyRing::make(names, D.weights());
    std::vector<std::string> entries, diffs;
    for (std::size_t r = 0; r < alpha.rows(); ++r)
      for (std::size_t c = 0; c < alpha.cols(); ++c) entries.push_back(to_string(embed(alpha(r, c), Dn, detail::iota(Dn->nvars()))));
    os << "matrix alpha[" << alpha.rows() << "][" << alpha.cols() << "]=" << detail::join(entries, ",") << ";\n";
    std::size_t n = f.n();
    std::vector<std::size_t> un(n), pr(n);
    for (std::size_t i = 0; i < n; ++i) {
      un[i] = i;
      pr[i] = n + i;
    }
    for (const auto& c : f.components()) diffs.push_back(to_string(embed(c, Dn, un) - embed(c, Dn, pr)));
    os << "ideal d2=" << detail::join(diffs, ",") << ";\n";
    os << "d2=std(d2+minor(alpha," << n << "));\nd2;\n";
  }
  return os.str();
}

inline std::string emit_macaulay2(const ProblemSpec& spec) {
  const MapGerm& f = *spec.germ;
  const PolyRing& S = *f.source();
  const PolyRing& T = *f.target();
  auto has = [&](const char* task) { return std::find(spec.tasks.begin(), spec.tasks.end(), task) != spec.tasks.end(); };
  auto ring = [](const std::string& name, const PolyRing& R) {
    return name + "=QQ[" + detail::join(R.vars(), ",") + ",Degrees=>{" + detail::weights_list(R) + "}]\n";
  };
  auto comps = [](const MapGerm& g) {
    std::vector<std::string> c;
    for (const auto& p : g.components()) c.push_back(to_string(p));
    return detail::join(c, ",");
  };
  std::ostringstream os;
  os << "-- image as the kernel of the pullback\n";
  os << ring("S", S) << ring("T", T);
  os << "f=map(S,T,{" << comps(f) << "})\n";
  os << "h=ker f\n";
  bool fit1 = has("fitting1") || has("tower") || has("consistency");
  if (fit1) {
    os << "-- Fitt_1 as the conductor ((a) : (a*jh : jh)) modulo h\n";
    os << "jh=ideal jacobian h\n";
    os << "a=ideal(jh_0)\n";
    os << "A=T/h\n";
    os << "fit1A=quotient(sub(a,A),quotient(sub(a*jh,A),sub(jh,A)))\n";
    os << "fit1=trim(ideal(lift(gens fit1A,T))+h)\n";
  }
  if (has("tower") || has("consistency")) {
    os << "-- Fitt_{k+2} = (Fitt_{k+1}^2 : Fitt_k) until the unit ideal\n";
    os << "fitt={h,fit1}\n";
    os << "while fitt#(#fitt-1) != ideal(1_T) do fitt=append(fitt,trim quotient(fitt#(#fitt-1)^2,fitt#(#fitt-2)))\n";
    os << "fitt\n";
  }
  if (has("presentation") || has("consistency")) {
    os << "-- presentation of the pushforward and its Fitting ideals\n";
    os << "pr=relations trim pushForward(f,S^1)\n";
    os << "for k from 0 to numcols pr list trim fittingIdeal(k,coker pr)\n";
  }
  if (spec.unfolding && fit1) {
    const MapGerm& F = *spec.unfolding;
    os << "-- Fitt_1 through the stable unfolding, then parameters to zero\n";
    os << ring("SF", *F.source()) << ring("TF", *F.target());
    os << "F=map(SF,TF,{" << comps(F) << "})\n";
    os << "H=ker F\n";
    os << "RF=minors(" << F.n() << ",jacobian matrix{{" << comps(F) << "}})\n";
    os << "fit1F=quotient(ideal jacobian H,preimage(F,RF))\n";
    std::vector<std::string> zero_map;
    for (const auto& v : F.target()->vars()) {
      bool param = false;
      for (const auto& p : F.params()) param = param || F.target()->var(p.target_var) == v;
      zero_map.push_back(param ? "0_T" : v + "_T");
    }
    os << "trim (map(T,TF,{" << detail::join(zero_map, ",") << "}))(fit1F)\n";
  }
  if (has("double-points")) {
    os << "-- double points: (f(x)-f(x')) + maximal minors of the divided differences\n";
    PolyMatrix alpha = divided_difference_matrix(f);
    const PolyRing& D = *alpha.ring();
    std::vector<std::string> names = detail::cas_names(D);
    RingPtr Dn = PolyRing::make(names, D.weights());
    os << "D=QQ[" << detail::join(names, ",") << ",Degrees=>{" << detail::weights_list(D) << "}]\n";
    std::vector<std::string> rows;
    for (std::size_t r = 0; r < alpha.rows(); ++r) {
      std::vector<std::string> e;
      for (std::size_t c = 0; c < alpha.cols(); ++c) e.push_back(to_string(embed(alpha(r, c), Dn, detail::iota(Dn->nvars()))));
      rows.push_back("{" + detail::join(e, ",") + "}");
    }
    os << "alpha=matrix{" << detail::join(rows, ",") << "}\n";
    std::size_t n = f.n();
    std::vector<std::size_t> un(n), pr(n);
    for (std::size_t i = 0; i < n; ++i) {
      un[i] = i;
      pr[i] = n + i;
    }
    std::vector<std::string> diffs;
    for (const auto& c : f.components()) diffs.push_back(to_string(embed(c, Dn, un) - embed(c, Dn, pr)));
    os << "d2=trim(ideal(" << detail::join(diffs, ",") << ")+minors(" << n << ",alpha))\n";
  }
  return os.str();
}

// "elimination" and "kernel" are accepted as aliases.
inline std::string emit_crosscheck(const ProblemSpec& spec, const std::string& dialect) {
  if (dialect == "singular" || dialect == "elimination") return emit_singular(spec);
  if (dialect == "macaulay2" || dialect == "kernel") return emit_macaulay2(spec);
  throw Error("unsupported dialect '" + dialect + "' (expected singular or macaulay2)");
}

}  // namespace fitcalc
