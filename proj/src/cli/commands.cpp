#include "deco/cli/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "deco/algebra.hpp"
#include "deco/codec.hpp"
#include "deco/denote.hpp"
#include "deco/domains/bundles.hpp"
#include "deco/domains/linalg.hpp"
#include "deco/domains/trees.hpp"
#include "deco/errors.hpp"
#include "deco/incrementalize.hpp"
#include "deco/json_codec.hpp"
#include "deco/oracle/suites.hpp"

namespace deco {
namespace {

Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConformanceError("malformed JSON in " + what + ": " + e.what());
  }
}

bool keyed_by_params(const LoadedProgram& p, const Json& j) {
  const auto& names = p.program.names;
  if (!j.is_object() || names.size() < 2) return false;
  for (const auto& [k, v] : j.items()) {
    if (std::find(names.begin(), names.end(), k) == names.end()) return false;
  }
  return true;
}

Value input_from_json(const LoadedProgram& p, const Json& j) {
  if (!keyed_by_params(p, j)) return value_from_json(p.program.input, j);
  std::vector<Value> vs;
  for (std::size_t k = 0; k < p.program.names.size(); ++k) {
    const std::string& n = p.program.names[k];
    if (!j.contains(n)) throw ConformanceError("missing input '" + n + "'");
    vs.push_back(value_from_json(p.program.types[k], j.at(n)));
  }
  return context_value(vs);
}

Change context_change(const std::vector<Change>& ds) {
  Change acc = ds.back();
  for (std::size_t k = ds.size() - 1; k-- > 0;) acc = Change::pair(ds[k], acc);
  return acc;
}

Change change_from_input_json(const LoadedProgram& p, const Json& j) {
  if (!keyed_by_params(p, j)) return change_from_json(p.program.input, j);
  std::vector<Change> ds;
  for (std::size_t k = 0; k < p.program.names.size(); ++k) {
    const std::string& n = p.program.names[k];
    const Type& ty = p.program.types[k];
    ds.push_back(j.contains(n) ? change_from_json(ty, j.at(n)) : nil_change(ty));
  }
  return context_change(ds);
}

int report(const std::exception& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  return exit_code_for(e);
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e) ||
      dynamic_cast<const TypeError*>(&e) ||
      dynamic_cast<const ConformanceError*>(&e) ||
      dynamic_cast<const StructureError*>(&e) ||
      dynamic_cast<const FiniteSupportError*>(&e)) {
    return kExitInvalid;
  }
  return kExitUsage;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LoadedProgram load_program(const std::string& program,
                           const std::string& bundle) {
  if (program.empty()) throw UsageError("no program given");
  if (!std::filesystem::exists(program)) {
    if (bundle.empty()) {
      throw UsageError("no file '" + program + "' and no bundle given");
    }
    RegistryPtr reg = load_bundle(bundle);
    if (!reg->has_program(program)) {
      throw UsageError("no file '" + program + "' and bundle '" + bundle +
                       "' has no such program");
    }
    auto def = reg->program(program);
    if (def->samples.empty()) {
      throw UsageError("program '" + program + "' has no default type");
    }
    const Type& arg = def->samples.front();
    return {reg, {{"x"}, {arg}, arg, build_program(*reg, program, arg)}};
  }
  ParsedProgram parsed = parse_program(read_file(program));
  if (!bundle.empty() && bundle != parsed.bundle) {
    throw UsageError("program declares bundle '" + parsed.bundle +
                     "' but '" + bundle + "' was requested");
  }
  RegistryPtr reg = load_bundle(parsed.bundle);
  return {reg, compile_program(*reg, parsed)};
}

Value read_input(const LoadedProgram& p, const std::string& text) {
  return input_from_json(p, parse_json_text(text, "input"));
}

std::vector<Change> read_changes(const LoadedProgram& p,
                                 const std::string& text) {
  std::vector<Change> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(change_from_input_json(
          p, parse_json_text(line, "change line " + std::to_string(lineno))));
    } catch (const ConformanceError& e) {
      throw ConformanceError("change line " + std::to_string(lineno) + ": " +
                             e.what());
    }
  }
  return out;
}

int cmd_check(const std::string& program, const std::string& bundle,
              std::ostream& out, std::ostream& err) {
  try {
    LoadedProgram p = load_program(program, bundle);
    out << "bundle " << p.reg->name() << "\n";
    for (std::size_t k = 0; k < p.program.names.size(); ++k) {
      out << "param " << p.program.names[k] << " : "
          << p.program.types[k].to_string() << "\n";
    }
    out << "input " << p.program.input.to_string() << "\n";
    out << "output " << p.program.term.output().to_string() << "\n";
    out << "term " << p.program.term.to_string() << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    return report(e, err);
  }
}

int cmd_run(const std::string& program, const std::string& bundle,
            const std::string& input_file, std::ostream& out,
            std::ostream& err) {
  try {
    LoadedProgram p = load_program(program, bundle);
    Value x = read_input(p, read_file(input_file));
    require_conforms(p.program.input, x);
    Value y = denote(p.program.term, x);
    out << value_to_text(p.program.term.output(), y) << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    return report(e, err);
  }
}

int cmd_incr(const std::string& program, const std::string& bundle,
             const std::string& input_file, const std::string& changes_file,
             std::ostream& out, std::ostream& err) {
  try {
    LoadedProgram p = load_program(program, bundle);
    Value x = read_input(p, read_file(input_file));
    require_conforms(p.program.input, x);
    std::vector<Change> ds =
        changes_file.empty() ? std::vector<Change>{}
                             : read_changes(p, read_file(changes_file));
    const Type& in = p.program.input;
    const Type& ot = p.program.term.output();
    MachinePtr m = incrementalize(p.program.term);
    auto [y, c] = m->initialize(x);
    out << value_to_text(ot, y) << "\n";
    for (std::size_t k = 0; k < ds.size(); ++k) {
      if (!change_conforms(in, ds[k])) {
        throw ConformanceError("change " + std::to_string(k + 1) +
                               " does not match " + in.to_string());
      }
      x = apply_change(in, x, ds[k]);
      out << change_to_text(ot, m->step(ds[k], c)) << "\n";
    }
    return kExitOk;
  } catch (const std::exception& e) {
    return report(e, err);
  }
}

int cmd_doc2value(const std::string& input_file, std::ostream& out,
                  std::ostream& err) {
  try {
    Json doc = parse_json_text(read_file(input_file), "document");
    Json docs = doc.is_array() ? doc : Json::array({doc});
    RegistryPtr reg = load_bundle("trees");
    Type ty = reg->parse_type("dict<int> tree<> json");
    out << value_to_text(ty, documents_to_map(docs)) << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    return report(e, err);
  }
}

int cmd_laws(const LawsOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    load_bundle(opts.bundle);
    if (opts.samples == 0) throw UsageError("samples must be positive");
    if (!(opts.tolerance >= 0)) throw UsageError("tolerance must be >= 0");
    GenConfig cfg;
    cfg.seed = opts.seed;
    cfg.tolerance["real"] = opts.tolerance;
    FaultGuard guard(opts.fault);
    std::size_t failed = 0;
    std::vector<CheckRecord> records = laws_report(opts.bundle, cfg, opts.samples);
    for (const auto& r : records) {
      out << r.to_json().dump() << "\n";
      if (!r.pass) ++failed;
    }
    Json summary{{"bundle", opts.bundle},
                 {"checks", records.size()},
                 {"failed", failed},
                 {"fault", fault_name(opts.fault)},
                 {"seed", opts.seed}};
    out << Json{{"summary", summary}}.dump() << "\n";
    return failed == 0 ? kExitOk : kExitLawFailure;
  } catch (const std::exception& e) {
    return report(e, err);
  }
}

}  // namespace deco
