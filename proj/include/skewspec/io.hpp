#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "skewspec/nonshrink.hpp"
#include "skewspec/witness.hpp"

namespace skewspec {

// Line-oriented configuration files:
//
//   # comment
//   [system]
//   alphabet = 2
//   forbidden = 22
//   [fibres]
//   1 = [(0,0),(1/2,1),(1,0)]
//   [segments]
//   segment = |1 1/3 3
//
// Keys may repeat. Every diagnostic names the file and line.

struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

struct ConfigSection {
  std::string name;
  int line = 0;
  std::vector<ConfigEntry> entries;

  const ConfigEntry* find(std::string_view key) const;
};

struct Config {
  std::string source;
  std::vector<ConfigSection> sections;

  const ConfigSection* section(std::string_view name) const;
  [[noreturn]] void fail(int line, const std::string& message) const;
};

Config parse_config(std::string_view text, std::string source = "<config>");
Config load_config_file(const std::string& path);

/// "[(0,0),(1/2,1),(1,0)]"; rationals may be quoted.
PwlMap parse_map_literal(std::string_view text);
std::string format_map_literal(const PwlMap& t);

Sft load_sft(const Config& cfg);
std::vector<PwlMap> load_fibres(const Config& cfg, int alphabet_size);
SkewSystem load_system(const Config& cfg);
std::vector<OrbitSegmentSpec> load_segments(const Config& cfg);
/// [map] map = ..., or a top-level `map` key.
PwlMap load_map(const Config& cfg);
/// [family] map = ... (repeated), falling back to [fibres].
std::vector<PwlMap> load_family(const Config& cfg);

using Json = nlohmann::json;

Json to_json(const Rational& r);
Json to_json(const UnitInterval& j);
Json to_json(const PwlMap& t);
Json to_json(const GammaCertificate& c);
Json to_json(const TracingAudit& a);
Json to_json(const WitnessReport& report);
Json to_json(const ShrinkTrace& trace);

Rational rational_from_json(const Json& j);
UnitInterval interval_from_json(const Json& j);
PwlMap map_from_json(const Json& j);

/// The parts of a stored witness report that the independent audit needs.
struct StoredWitness {
  Rational eps;
  int M = 0;
  std::vector<int> gaps;
  std::vector<OrbitSegmentSpec> segments;
  SkewPoint witness;
};

StoredWitness stored_witness_from_json(const Json& j);

/// CSV with columns step,map,interval_lo,interval_hi,length (exact "p/q").
std::string shrink_trace_csv(const ShrinkTrace& trace);
/// Witness orbit against each segment, one row per traced step.
std::string witness_orbit_csv(const SkewSystem& sys, const WitnessReport& report);

}  // namespace skewspec
