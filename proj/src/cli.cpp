#include "dimgroup/cli.hpp"

#include "dimgroup/errors.hpp"
#include "dimgroup/report.hpp"
#include "dimgroup/verify.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace dimgroup::cli {

namespace {

void emit(const RunConfig& config, const std::string& text) {
  if (config.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(config.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + config.out + "'");
  f << text;
}

std::string incidence_to_string(const Mat& m) {
  std::ostringstream os;
  for (const Vec& row : m) {
    os << "  [";
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j].str();
    os << "]\n";
  }
  return os.str();
}

int cmd_info(const RunConfig& config, const Substitution& s) {
  std::ostringstream os;
  nlohmann::ordered_json j;
  const bool primitive = s.is_primitive();
  os << "alphabet: ";
  for (std::size_t i = 0; i < s.alphabet_size(); ++i)
    os << (i ? " " : "") << s.alphabet().name(static_cast<LetterId>(i));
  os << "\nrules:\n";
  {
    std::istringstream rules(s.rules_to_string());
    std::string line;
    while (std::getline(rules, line)) os << "  " << line << "\n";
  }
  os << "incidence:\n" << incidence_to_string(s.incidence());
  os << "primitive: " << (primitive ? "yes" : "no") << "\n";
  j["alphabet"] = s.alphabet().letters();
  j["primitive"] = primitive;
  int exit_code = 0;
  if (!primitive) {
    os << "not primitive; stopping\n";
    j["verdict"] = "not primitive";
    exit_code = 2;
  } else {
    const auto d = StationaryOrderedDiagram::from_substitution(s);
    const bool proper = is_properly_ordered_bounded(d) == Properness::proper;
    os << "properly ordered diagram: " << (proper ? "yes" : "no") << "\n";
    os << "proper substitution: " << (s.is_proper() ? "yes" : "no") << "\n";
    const AperiodicityVerdict ap = s.aperiodicity();
    j["properly_ordered"] = proper;
    j["proper_substitution"] = s.is_proper();
    switch (ap.kind) {
      case AperiodicityKind::aperiodic:
        os << "aperiodicity: aperiodic\n";
        j["aperiodicity"] = "aperiodic";
        break;
      case AperiodicityKind::periodic:
        os << "aperiodicity: periodic substitution (period " << ap.period << ")\n";
        j["aperiodicity"] = "periodic";
        j["period"] = ap.period;
        exit_code = 2;
        break;
      case AperiodicityKind::unknown:
        os << "aperiodicity: unknown (proceed with caution)\n";
        j["aperiodicity"] = "unknown";
        break;
    }
  }
  emit(config, config.format == Format::json ? j.dump(2) + "\n" : os.str());
  return exit_code;
}

int cmd_triple(const RunConfig& config, const Substitution& s) {
  const Substitution sq = tripled_substitution(s);
  if (config.format == Format::json) {
    nlohmann::ordered_json j;
    j["triples"] = sq.alphabet().letters();
    nlohmann::ordered_json rules = nlohmann::ordered_json::array();
    for (std::size_t a = 0; a < sq.alphabet_size(); ++a) {
      nlohmann::ordered_json img = nlohmann::ordered_json::array();
      for (LetterId l : sq.image(static_cast<LetterId>(a)))
        img.push_back(sq.alphabet().name(l));
      rules.push_back(nlohmann::ordered_json{
          {"letter", sq.alphabet().name(static_cast<LetterId>(a))}, {"image", img}});
    }
    j["rules"] = rules;
    emit(config, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "# A^Q has " << sq.alphabet_size() << " letters\n" << sq.rules_to_string();
    emit(config, os.str());
  }
  return 0;
}

int cmd_kgroup(const RunConfig& config, const Substitution& s) {
  const KgroupReport rep = kgroup_report(s, config.levels, config.max_k);
  if (config.format == Format::text) {
    std::ostringstream os;
    os << "triples: " << rep.json["triples"].size() << "\n"
       << "delta_rank: " << rep.json["delta_rank"] << "\n"
       << "b_rank: " << rep.json["b_rank"] << "\n"
       << "stable_rank: " << rep.json["stable_rank"] << "\n"
       << "torsion: " << rep.json["torsion"].dump() << "\n"
       << "char_poly: " << rep.json["char_poly_pretty"].get<std::string>() << "\n"
       << "checks: " << rep.json["checks"].dump() << "\n";
    emit(config, os.str());
  } else {
    emit(config, rep.json.dump(2) + "\n");
  }
  return rep.cap_exceeded ? 3 : 0;
}

int cmd_classical(const RunConfig& config, const Substitution& s) {
  const LimitGroup g = classical_dimension_group(s);
  nlohmann::ordered_json j = limit_group_json(g);
  if (config.format == Format::text) {
    std::ostringstream os;
    os << "stable_rank: " << g.stable_rank() << "\n"
       << "torsion: " << j["torsion"].dump() << "\n"
       << "char_poly: " << poly_to_string(g.stable_char_poly()) << "\n";
    emit(config, os.str());
  } else {
    emit(config, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_verify(const RunConfig& config, const Substitution& s) {
  const VerifyReport rep = verify_all(s, config.levels, config.max_k);
  emit(config, config.format == Format::json ? rep.to_json().dump(2) + "\n" : rep.to_text());
  if (!rep.all_pass()) {
    for (const CheckLine& c : rep.checks)
      if (!c.pass && (c.name == "primitive" || c.name == "aperiodic")) return 2;
    return 3;
  }
  return 0;
}

int cmd_export_dot(const RunConfig& config, const Substitution& s) {
  StationaryOrderedDiagram d = StationaryOrderedDiagram::from_substitution(
      config.triple_diagram ? tripled_substitution(s) : s);
  emit(config, to_dot(d, std::max(1, std::min(config.levels, 8))));
  return 0;
}

}  // namespace

int run(const RunConfig& config) {
  try {
    if (config.levels < 1 || config.levels > 8)
      throw PreconditionError("--levels must be in [1, 8]");
    if (config.max_k < 0 || config.max_k > 16)
      throw PreconditionError("--max-k must be in [0, 16]");
    const Substitution s = Substitution::parse_file(config.input_path);
    switch (config.command) {
      case Command::info: return cmd_info(config, s);
      case Command::triple: return cmd_triple(config, s);
      case Command::kgroup: return cmd_kgroup(config, s);
      case Command::classical: return cmd_classical(config, s);
      case Command::verify: return cmd_verify(config, s);
      case Command::export_dot: return cmd_export_dot(config, s);
    }
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violation: " << e.what() << "\n";
    return 2;
  } catch (const CapExceededError& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace dimgroup::cli
