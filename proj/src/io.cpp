#include "skewspec/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace skewspec {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits on whitespace and commas.
std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

int parse_int(const Config& cfg, const ConfigEntry& e, std::string_view text) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(std::string(text), &used);
    if (used != text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    cfg.fail(e.line, "expected an integer for '" + e.key + "', got '" + std::string(text) + "'");
  }
}

}  // namespace

const ConfigEntry* ConfigSection::find(std::string_view key) const {
  for (const auto& e : entries) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

const ConfigSection* Config::section(std::string_view name) const {
  for (const auto& s : sections) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

void Config::fail(int line, const std::string& message) const {
  throw Error(ErrorKind::ParseError, source + ":" + std::to_string(line) + ": " + message);
}

Config parse_config(std::string_view text, std::string source) {
  Config cfg;
  cfg.source = std::move(source);
  cfg.sections.push_back({"", 0, {}});
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view s = raw;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[' && s.find('=') == std::string_view::npos) {
      if (s.back() != ']') cfg.fail(line, "unterminated section header");
      const std::string name(trim(s.substr(1, s.size() - 2)));
      if (name.empty()) cfg.fail(line, "empty section name");
      cfg.sections.push_back({name, line, {}});
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) cfg.fail(line, "expected 'key = value'");
    const std::string key(trim(s.substr(0, eq)));
    if (key.empty()) cfg.fail(line, "missing key before '='");
    cfg.sections.back().entries.push_back({key, std::string(trim(s.substr(eq + 1))), line});
  }
  return cfg;
}

Config load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

PwlMap parse_map_literal(std::string_view text) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw Error(ErrorKind::ParseError, "map literal must be a bracketed node list");
  }
  std::string_view body = text.substr(1, text.size() - 2);
  std::vector<Node> nodes;
  while (true) {
    body = trim(body);
    if (body.empty()) break;
    if (body.front() == ',') {
      body.remove_prefix(1);
      continue;
    }
    if (body.front() != '(') throw Error(ErrorKind::ParseError, "expected '(' in map literal");
    const auto close = body.find(')');
    if (close == std::string_view::npos) throw Error(ErrorKind::ParseError, "unterminated node in map literal");
    const std::string_view pair = body.substr(1, close - 1);
    const auto comma = pair.find(',');
    if (comma == std::string_view::npos) throw Error(ErrorKind::ParseError, "node must be (x, y)");
    nodes.push_back({Rational::parse(pair.substr(0, comma)), Rational::parse(pair.substr(comma + 1))});
    body.remove_prefix(close + 1);
  }
  return PwlMap(std::move(nodes));
}

std::string format_map_literal(const PwlMap& t) {
  std::string s = "[";
  for (const Node& n : t.nodes()) {
    if (s.size() > 1) s += ",";
    s += "(" + n.x.str() + "," + n.y.str() + ")";
  }
  return s + "]";
}

Sft load_sft(const Config& cfg) {
  const ConfigSection* sys = cfg.section("system");
  if (!sys) cfg.fail(0, "missing [system] section");
  const ConfigEntry* alphabet = sys->find("alphabet");
  if (!alphabet) cfg.fail(sys->line, "[system] needs 'alphabet = n'");
  const int n = parse_int(cfg, *alphabet, alphabet->value);
  if (n < 1 || n > 9) cfg.fail(alphabet->line, "alphabet size must be between 1 and 9");

  try {
    if (const ConfigEntry* m = sys->find("matrix")) {
      const auto rows = tokens(m->value);
      if (static_cast<int>(rows.size()) != n) cfg.fail(m->line, "matrix needs one row per symbol");
      std::vector<std::vector<bool>> allowed(n, std::vector<bool>(n));
      for (int a = 0; a < n; ++a) {
        if (static_cast<int>(rows[a].size()) != n) cfg.fail(m->line, "matrix row " + std::to_string(a + 1) + " has wrong length");
        for (int b = 0; b < n; ++b) {
          const char c = rows[a][b];
          if (c != '0' && c != '1') cfg.fail(m->line, "matrix entries must be 0 or 1");
          allowed[a][b] = c == '1';
        }
      }
      return Sft(std::move(allowed));
    }
    std::vector<std::pair<Symbol, Symbol>> forbidden;
    if (const ConfigEntry* f = sys->find("forbidden")) {
      for (const auto& tok : tokens(f->value)) {
        const Word w = parse_word(tok);
        if (w.size() != 2) cfg.fail(f->line, "forbidden entries are two-symbol words, got '" + tok + "'");
        forbidden.emplace_back(w[0], w[1]);
      }
    }
    return Sft::from_forbidden(n, forbidden);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    cfg.fail(alphabet->line, e.what());
  }
}

std::vector<PwlMap> load_fibres(const Config& cfg, int alphabet_size) {
  const ConfigSection* sec = cfg.section("fibres");
  if (!sec) cfg.fail(0, "missing [fibres] section");
  std::vector<std::optional<PwlMap>> maps(static_cast<std::size_t>(alphabet_size));
  for (const auto& e : sec->entries) {
    const int q = parse_int(cfg, e, e.key);
    if (q < 1 || q > alphabet_size) cfg.fail(e.line, "fibre symbol " + e.key + " outside the alphabet");
    try {
      maps[static_cast<std::size_t>(q - 1)] = parse_map_literal(e.value);
    } catch (const Error& err) {
      cfg.fail(e.line, err.what());
    }
  }
  std::vector<PwlMap> out;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (!maps[i]) cfg.fail(sec->line, "no fibre map for symbol " + std::to_string(i + 1));
    out.push_back(*maps[i]);
  }
  return out;
}

SkewSystem load_system(const Config& cfg) {
  Sft base = load_sft(cfg);
  auto fibres = load_fibres(cfg, base.alphabet_size());
  return {std::move(base), std::move(fibres)};
}

std::vector<OrbitSegmentSpec> load_segments(const Config& cfg) {
  const ConfigSection* sec = cfg.section("segments");
  if (!sec) cfg.fail(0, "missing [segments] section");
  std::vector<OrbitSegmentSpec> out;
  for (const auto& e : sec->entries) {
    if (e.key != "segment") cfg.fail(e.line, "unknown key '" + e.key + "' in [segments]");
    const auto parts = tokens(e.value);
    if (parts.size() != 3) cfg.fail(e.line, "segment needs '<base point> <fibre p/q> <length>'");
    try {
      OrbitSegmentSpec seg{{BasePoint::parse(parts[0]), Rational::parse(parts[1])}, parse_int(cfg, e, parts[2])};
      if (seg.length < 1) cfg.fail(e.line, "segment length must be at least 1");
      if (seg.point.fibre < 0 || seg.point.fibre > 1) cfg.fail(e.line, "fibre point outside [0,1]");
      out.push_back(std::move(seg));
    } catch (const Error& err) {
      if (err.kind() == ErrorKind::ParseError && std::string(err.what()).find(cfg.source) != std::string::npos) throw;
      cfg.fail(e.line, err.what());
    }
  }
  if (out.empty()) cfg.fail(sec->line, "[segments] lists no segment");
  return out;
}

PwlMap load_map(const Config& cfg) {
  const ConfigEntry* e = nullptr;
  if (const ConfigSection* sec = cfg.section("map")) e = sec->find("map");
  if (!e) e = cfg.sections.front().find("map");
  if (!e) cfg.fail(0, "no 'map = [...]' entry");
  try {
    return parse_map_literal(e->value);
  } catch (const Error& err) {
    cfg.fail(e->line, err.what());
  }
}

std::vector<PwlMap> load_family(const Config& cfg) {
  const ConfigSection* sec = cfg.section("family");
  if (!sec) {
    if (cfg.section("fibres")) return load_fibres(cfg, static_cast<int>(cfg.section("fibres")->entries.size()));
    cfg.fail(0, "missing [family] section");
  }
  std::vector<PwlMap> out;
  for (const auto& e : sec->entries) {
    if (e.key != "map") cfg.fail(e.line, "unknown key '" + e.key + "' in [family]");
    try {
      out.push_back(parse_map_literal(e.value));
    } catch (const Error& err) {
      cfg.fail(e.line, err.what());
    }
  }
  if (out.empty()) cfg.fail(sec->line, "[family] lists no map");
  return out;
}

Json to_json(const Rational& r) { return r.str(); }

Json to_json(const UnitInterval& j) { return Json::array({j.lo().str(), j.hi().str()}); }

Json to_json(const PwlMap& t) {
  Json nodes = Json::array();
  for (const Node& n : t.nodes()) nodes.push_back(Json::array({n.x.str(), n.y.str()}));
  return nodes;
}

Json to_json(const GammaCertificate& c) {
  Json tuples = Json::array();
  for (const auto& [word, beta] : c.per_tuple) tuples.push_back({{"tuple", to_string(word)}, {"beta_delta", beta.str()}});
  return {{"eps", c.eps.str()}, {"alpha", c.alpha.str()}, {"m", c.m},
          {"beta", c.beta.str()}, {"gamma", c.gamma.str()}, {"per_tuple", tuples}};
}

Json to_json(const TracingAudit& a) {
  Json defects = Json::array();
  for (const auto& d : a.segment_defects) defects.push_back(d.str());
  return {{"r", a.r}, {"segment_defects", defects}, {"worst_defect", a.worst_defect.str()}};
}

Json to_json(const WitnessReport& report) {
  Json segments = Json::array();
  for (const auto& s : report.segments) {
    segments.push_back({{"base", s.point.base.str()}, {"fibre", s.point.fibre.str()}, {"length", s.length}});
  }
  Json J = Json::array();
  for (const auto& j : report.J) J.push_back(to_json(j));
  Json nested = Json::array();
  for (const auto& j : report.Knested) nested.push_back(to_json(j));
  Json audit = to_json(report.audit);
  audit["passes"] = report.audit.passes(report.eps);
  audit["periodic"] = true;
  return {{"eps", report.eps.str()},
          {"M", report.M},
          {"K", report.K},
          {"gamma", report.gamma.str()},
          {"anchor",
           {{"alpha", report.anchor.alpha.str()},
            {"period", report.anchor.period()},
            {"leo_m", report.anchor.leo_m},
            {"composite", to_json(report.anchor.composite)}}},
          {"segments", segments},
          {"gaps", report.gaps},
          {"eta", report.eta.str()},
          {"z", report.z.str()},
          {"r", report.r},
          {"J", J},
          {"Knested", nested},
          {"audit", audit}};
}

Json to_json(const ShrinkTrace& trace) {
  Json schedule = Json::array();
  for (const auto& [k, psi] : trace.schedule) schedule.push_back({{"k", k}, {"psi", to_string(psi)}});
  const UnitInterval& last = trace.steps.empty() ? trace.initial : trace.steps.back().interval;
  return {{"xi", trace.xi.str()},
          {"steps", trace.steps.size()},
          {"initial", to_json(trace.initial)},
          {"g_events", trace.g_events()},
          {"final_interval", to_json(last)},
          {"final_length", last.length().str()},
          {"schedule", schedule}};
}

Rational rational_from_json(const Json& j) {
  if (!j.is_string()) throw Error(ErrorKind::ParseError, "expected a \"p/q\" string, got " + j.dump());
  return Rational::parse(j.get<std::string>());
}

UnitInterval interval_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::ParseError, "expected [lo, hi], got " + j.dump());
  return {rational_from_json(j[0]), rational_from_json(j[1])};
}

PwlMap map_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, "expected a node list");
  std::vector<Node> nodes;
  for (const auto& n : j) {
    if (!n.is_array() || n.size() != 2) throw Error(ErrorKind::ParseError, "node must be [x, y]");
    nodes.push_back({rational_from_json(n[0]), rational_from_json(n[1])});
  }
  return PwlMap(std::move(nodes));
}

StoredWitness stored_witness_from_json(const Json& j) {
  try {
    StoredWitness w{rational_from_json(j.at("eps")),
                    j.at("M").get<int>(),
                    j.at("gaps").get<std::vector<int>>(),
                    {},
                    {BasePoint::parse(j.at("eta").get<std::string>()), rational_from_json(j.at("z"))}};
    for (const auto& s : j.at("segments")) {
      w.segments.push_back({{BasePoint::parse(s.at("base").get<std::string>()), rational_from_json(s.at("fibre"))},
                            s.at("length").get<int>()});
    }
    return w;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed witness report: ") + e.what());
  }
}

std::string shrink_trace_csv(const ShrinkTrace& trace) {
  std::string out = "step,map,interval_lo,interval_hi,length\n";
  for (std::size_t t = 0; t < trace.steps.size(); ++t) {
    const auto& s = trace.steps[t];
    out += std::to_string(t + 1) + "," + to_string(s.map) + "," + s.interval.lo().str() + "," + s.interval.hi().str() +
           "," + s.interval.length().str() + "\n";
  }
  return out;
}

std::string witness_orbit_csv(const SkewSystem& sys, const WitnessReport& report) {
  std::string out = "segment,i,time,segment_base,segment_fibre,witness_base,witness_fibre,defect\n";
  for (std::size_t j = 0; j < report.segments.size(); ++j) {
    SkewPoint p = report.segments[j].point;
    SkewPoint w = iterate(sys, report.witness_point(), static_cast<std::size_t>(report.r[j]));
    for (int i = 0; i < report.segments[j].length; ++i) {
      out += std::to_string(j + 1) + "," + std::to_string(i) + "," + std::to_string(report.r[j] + i) + "," +
             p.base.str() + "," + p.fibre.str() + "," + w.base.str() + "," + w.fibre.str() + "," +
             product_metric(p, w).str() + "\n";
      p = step(sys, p);
      w = step(sys, w);
    }
  }
  return out;
}

}  // namespace skewspec
