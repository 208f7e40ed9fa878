#include "skewspec/cli.hpp"

#include <fstream>
#include <functional>

#include "CLI11.hpp"
#include "skewspec/io.hpp"

namespace skewspec {

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::ParseError, "cannot write '" + path + "'");
  f << text;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::InvalidArgument:
    case ErrorKind::OutOfDomain:
    case ErrorKind::ZeroDenominator:
      return kExitUsage;
    default:
      return kExitFalsified;
  }
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::string cur;
  for (char c : text + ",") {
    if (c == ',') {
      if (!cur.empty()) {
        try {
          out.push_back(std::stoi(cur));
        } catch (const std::exception&) {
          throw Error(ErrorKind::ParseError, "bad integer list '" + text + "'");
        }
      }
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  return out;
}

}  // namespace

int run_command(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args = raw_args;
  if (!args.empty() && args.front() == "nonshrink") args.erase(args.begin());

  CLI::App app{"Specification-property witnesses for step skew products with piecewise-linear fibres", "skewspec"};
  app.require_subcommand(1);
  std::function<int()> action;

  std::string map_file;
  int cap = 64;
  auto* map_check = app.add_subcommand("map-check", "Expansion, surjectivity and mixing of one map");
  map_check->add_option("map,--map", map_file, "Config file with 'map = [...]'")->required();
  map_check->add_option("--cap", cap, "Iteration cap for the mixing test");
  map_check->callback([&] {
    action = [&] {
      const PwlMap t = load_map(load_config_file(map_file));
      Json cps = Json::array();
      for (const auto& c : t.critical_points()) cps.push_back(c.str());
      const Json j{{"expanding", is_expanding(t)},
                   {"rate", expansion_rate(t).str()},
                   {"surjective", is_surjective(t)},
                   {"mixing", is_mixing(t, cap)},
                   {"laps", t.laps().laps.size()},
                   {"critical_points", cps}};
      out << j.dump(2) << "\n";
      return kExitPass;
    };
  });

  std::string gamma_text;
  auto* leo = app.add_subcommand("leo", "Covering exponent m with T^m(U) = [0,1] for all |U| >= gamma");
  leo->add_option("map,--map", map_file, "Config file with 'map = [...]'")->required();
  leo->add_option("--gamma", gamma_text, "Length threshold p/q")->required();
  leo->add_option("--cap", cap, "Iteration cap");
  leo->callback([&] {
    action = [&] {
      const PwlMap t = load_map(load_config_file(map_file));
      const Rational gamma = Rational::parse(gamma_text);
      out << Json{{"gamma", gamma.str()}, {"m", leo_exponent(t, gamma, cap)}}.dump(2) << "\n";
      return kExitPass;
    };
  });

  std::string sft_file;
  std::string eps_text;
  auto* sft_info = app.add_subcommand("sft-info", "Primitivity exponent and gap length of a subshift of finite type");
  sft_info->add_option("system,--system", sft_file, "Config file with a [system] section")->required();
  sft_info->add_option("--eps", eps_text, "Also report the gap length K for this eps");
  sft_info->callback([&] {
    action = [&] {
      const Sft b = load_sft(load_config_file(sft_file));
      Json j{{"alphabet", b.alphabet_size()}};
      try {
        j["exponent"] = primitivity_exponent(b);
        j["primitive"] = true;
        if (!eps_text.empty()) j["gap_length"] = base_gap_length(b, Rational::parse(eps_text));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotPrimitive) throw;
        j["primitive"] = false;
        j["exponent"] = nullptr;
      }
      out << j.dump(2) << "\n";
      return kExitPass;
    };
  });

  std::string family_file;
  auto* gamma = app.add_subcommand("gamma", "Non-shrinking certificate (alpha, m, beta, gamma) for a family");
  gamma->add_option("--family", family_file, "Config file with a [family] section")->required();
  gamma->add_option("--eps", eps_text, "Start-interval length p/q")->required();
  gamma->callback([&] {
    action = [&] {
      const ExpandingFamily fam(load_family(load_config_file(family_file)));
      out << to_json(gamma_bound(fam, Rational::parse(eps_text))).dump(2) << "\n";
      return kExitPass;
    };
  });

  long trials = 10000;
  std::uint64_t seed = 1;
  int word_length = 200;
  auto* fuzz = app.add_subcommand("fuzz", "Random words and intervals checked against the certificate");
  fuzz->add_option("--family", family_file, "Config file with a [family] section")->required();
  fuzz->add_option("--eps", eps_text, "Start-interval length p/q")->required();
  fuzz->add_option("--trials", trials, "Number of random trials");
  fuzz->add_option("--seed", seed, "Random seed");
  fuzz->add_option("--length", word_length, "Word length");
  fuzz->callback([&] {
    action = [&] {
      const ExpandingFamily fam(load_family(load_config_file(family_file)));
      const FuzzSummary s = fuzz_nonshrink(fam, Rational::parse(eps_text), trials, word_length, seed);
      out << Json{{"certificate", to_json(s.certificate)},
                  {"trials", s.trials},
                  {"seed", seed},
                  {"word_length", word_length},
                  {"failures", s.failures},
                  {"min_length", s.min_length.str()}}
                 .dump(2)
          << "\n";
      return s.failures == 0 ? kExitPass : kExitFalsified;
    };
  });

  std::string xi_text;
  long steps = 10000;
  std::string out_file;
  auto* shrink = app.add_subcommand("shrink-demo", "Adaptive phi/f/g system whose images shrink");
  shrink->add_option("--xi", xi_text, "Rational xi in (0, 1/4)")->required();
  shrink->add_option("--steps", steps, "Total number of map applications");
  shrink->add_option("--out", out_file, "Trace CSV path");
  shrink->callback([&] {
    action = [&] {
      const ShrinkTrace trace = shrinking_system(Rational::parse(xi_text), steps);
      if (!out_file.empty()) write_file(out_file, shrink_trace_csv(trace));
      Json j = to_json(trace);
      j["warning"] = "xi is rational: the schedule may eventually cycle";
      out << j.dump(2) << "\n";
      return kExitPass;
    };
  });

  std::string system_file;
  std::string segments_file;
  std::string anchor_word;
  int anchor_auto = 4;
  std::string report_file;
  std::string csv_file;
  std::string extra_gaps;
  auto* wit = app.add_subcommand("witness", "Build an exactly periodic tracing point for a list of orbit segments");
  wit->add_option("--system", system_file, "Config file with [system] and [fibres]")->required();
  wit->add_option("--segments", segments_file, "Config file with [segments] (defaults to the system file)");
  wit->add_option("--eps", eps_text, "Tracing accuracy p/q in (0,1)")->required();
  auto* anchor_opt = wit->add_option("--anchor", anchor_word, "Periodic word of the mixing anchor");
  wit->add_option("--anchor-auto", anchor_auto, "Search anchors up to this period")->excludes(anchor_opt);
  wit->add_option("--report", report_file, "Write the JSON report here instead of stdout");
  wit->add_option("--csv", csv_file, "Orbit dump of the witness against each segment");
  wit->add_option("--extra-gaps", extra_gaps, "Comma-separated L_j >= 0; gap j becomes M + L_j");
  wit->callback([&] {
    action = [&] {
      const SkewSystem sys = load_system(load_config_file(system_file));
      const auto segments = load_segments(load_config_file(segments_file.empty() ? system_file : segments_file));
      WitnessOptions opts;
      if (!anchor_word.empty()) opts.anchor = parse_word(anchor_word);
      opts.anchor_search_cap = anchor_auto;
      opts.extra_gaps = parse_int_list(extra_gaps);
      const WitnessReport report = witness(sys, segments, Rational::parse(eps_text), opts);
      const std::string text = to_json(report).dump(2) + "\n";
      if (report_file.empty()) {
        out << text;
      } else {
        write_file(report_file, text);
        out << Json{{"report", report_file},
                    {"M", report.M},
                    {"period", report.r.back()},
                    {"worst_defect", report.audit.worst_defect.str()},
                    {"passes", report.audit.passes(report.eps)}}
                   .dump(2)
            << "\n";
      }
      if (!csv_file.empty()) write_file(csv_file, witness_orbit_csv(sys, report));
      return report.audit.passes(report.eps) ? kExitPass : kExitFalsified;
    };
  });

  auto* verify = app.add_subcommand("verify", "Re-audit a stored witness report");
  verify->add_option("--system", system_file, "Config file with [system] and [fibres]")->required();
  verify->add_option("--report", report_file, "Witness report JSON")->required();
  verify->add_option("--segments", segments_file, "Override the segments stored in the report");
  verify->add_option("--eps", eps_text, "Override the report's eps");
  verify->callback([&] {
    action = [&] {
      const SkewSystem sys = load_system(load_config_file(system_file));
      StoredWitness stored = stored_witness_from_json(read_json_file(report_file));
      if (!segments_file.empty()) stored.segments = load_segments(load_config_file(segments_file));
      if (!eps_text.empty()) stored.eps = Rational::parse(eps_text);
      if (stored.gaps.size() != stored.segments.size()) stored.gaps.assign(stored.segments.size(), stored.M);
      if (!lies_in(sys.base(), stored.witness.base)) {
        out << Json{{"passes", false}, {"reason", "witness base point is not in the subshift"}}.dump(2) << "\n";
        return kExitFalsified;
      }
      Json j{{"eps", stored.eps.str()}};
      try {
        const TracingAudit audit = verify_tracing(sys, stored.segments, stored.gaps, stored.witness);
        j["audit"] = to_json(audit);
        j["periodic"] = true;
        j["passes"] = audit.passes(stored.eps);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotPeriodic) throw;
        j["periodic"] = false;
        j["passes"] = false;
        j["reason"] = e.what();
      }
      out << j.dump(2) << "\n";
      return j["passes"].get<bool>() ? kExitPass : kExitFalsified;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    return action ? action() : kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
}

}  // namespace skewspec
