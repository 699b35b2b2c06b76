#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "pdl/pdl.h"

namespace {

constexpr int kExitProved = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitError = 3;

[[noreturn]] void die(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  std::exit(kExitError);
}

[[noreturn]] void die_last_error() { die(pdl_last_error()); }

using TaskHandle = std::unique_ptr<pdl_task, decltype(&pdl_task_free)>;
using VerdictHandle = std::unique_ptr<pdl_verdict, decltype(&pdl_verdict_free)>;
using ReportHandle =
    std::unique_ptr<pdl_oracle_report, decltype(&pdl_oracle_report_free)>;

template <typename Handle>
std::string fetch(pdl_status (*getter)(const Handle*, char**),
                  const Handle* handle) {
  char* s = nullptr;
  if (getter(handle, &s) != PDL_OK) die_last_error();
  std::string out(s);
  pdl_string_free(s);
  return out;
}

TaskHandle load_task(const std::string& path) {
  pdl_task* task = nullptr;
  if (pdl_task_parse_file(path.c_str(), &task) != PDL_OK) die_last_error();
  return TaskHandle(task, pdl_task_free);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) die("cannot write '" + path + "'");
  out << content;
  if (!out) die("cannot write '" + path + "'");
}

struct BindArgs {
  std::vector<std::string> names;
  std::vector<std::string> values;
  std::vector<const char*> name_ptrs;
  std::vector<const char*> value_ptrs;

  void parse(const std::vector<std::string>& raw) {
    for (const std::string& entry : raw) {
      std::size_t eq = entry.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == entry.size()) {
        die("malformed --bind '" + entry + "'; expected name=value");
      }
      names.push_back(entry.substr(0, eq));
      values.push_back(entry.substr(eq + 1));
    }
    for (const std::string& n : names) name_ptrs.push_back(n.c_str());
    for (const std::string& v : values) value_ptrs.push_back(v.c_str());
  }

  const char* const* name_array() const {
    return name_ptrs.empty() ? nullptr : name_ptrs.data();
  }
  const char* const* value_array() const {
    return value_ptrs.empty() ? nullptr : value_ptrs.data();
  }
  std::size_t size() const { return names.size(); }
};

int run_verify(const std::string& file, unsigned unroll, bool json,
               const std::string& tree_path, const std::string& tree_json_path,
               const std::string& smt_path, const std::string& queries_path) {
  TaskHandle task = load_task(file);

  pdl_verdict* raw = nullptr;
  if (pdl_verify(task.get(), unroll, &raw) != PDL_OK) die_last_error();
  VerdictHandle verdict(raw, pdl_verdict_free);

  if (!tree_path.empty()) {
    write_file(tree_path, fetch(pdl_verdict_tree_text, raw));
  }
  if (!tree_json_path.empty()) {
    write_file(tree_json_path, fetch(pdl_verdict_tree_json, raw));
  }
  if (!smt_path.empty()) {
    write_file(smt_path, fetch(pdl_verdict_smtlib, raw));
  }
  if (!queries_path.empty()) {
    write_file(queries_path, fetch(pdl_verdict_validity_queries, raw));
  }

  std::cout << fetch(json ? pdl_verdict_json : pdl_verdict_text, raw);

  std::string status = pdl_verdict_status(raw);
  if (status == "PROVED") return kExitProved;
  if (status == "REFUTED_BY_SOLVER") return kExitRefuted;
  return kExitInconclusive;
}

int run_oracle(const std::string& file, unsigned unroll,
               const std::vector<std::string>& raw_binds, bool enumerate,
               bool json) {
  TaskHandle task = load_task(file);
  BindArgs binds;
  binds.parse(raw_binds);

  if (enumerate) {
    char* s = nullptr;
    pdl_status status =
        pdl_enumerate_paths_text(task.get(), binds.name_array(),
                                 binds.value_array(), binds.size(), unroll, &s);
    if (status != PDL_OK) die_last_error();
    std::cout << s;
    pdl_string_free(s);
    return kExitProved;
  }

  pdl_oracle_report* raw = nullptr;
  if (pdl_oracle(task.get(), binds.name_array(), binds.value_array(),
                 binds.size(), unroll, &raw) != PDL_OK) {
    die_last_error();
  }
  ReportHandle report(raw, pdl_oracle_report_free);
  std::cout << fetch(json ? pdl_oracle_json : pdl_oracle_text, raw);
  return kExitProved;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deductive verifier for probabilistic guarded-command programs"};
  app.set_version_flag("--version", std::string(pdl_version()));
  app.require_subcommand(1);

  std::string file;
  unsigned unroll = 8;
  bool json = false;

  CLI::App* verify = app.add_subcommand(
      "verify", "Prove a lower bound on the postcondition probability");
  std::string tree_path, tree_json_path, smt_path, queries_path;
  verify->add_option("file", file, "task file")->required();
  verify->add_option("--unroll", unroll, "loop unroll budget (default 8)");
  verify->add_flag("--json", json, "print the verdict as JSON");
  verify->add_option("--tree", tree_path, "write the proof tree (text) here");
  verify->add_option("--tree-json", tree_json_path,
                     "write the proof tree (JSON) here");
  verify->add_option("--smt", smt_path,
                     "write the constraint system as SMT-LIB here");
  verify->add_option("--queries", queries_path,
                     "write undecided validity checks as SMT-LIB here");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "Compute the exact probability by exhaustive semantics");
  std::vector<std::string> raw_binds;
  bool enumerate = false;
  oracle->add_option("file", file, "task file")->required();
  oracle->add_option("--unroll", unroll, "loop unroll budget (default 8)");
  oracle->add_option("--bind", raw_binds, "bind an input, e.g. --bind sw=true")
      ->take_all();
  oracle->add_flag("--enumerate", enumerate,
                   "print the path table instead (text only)");
  oracle->add_flag("--json", json, "print the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  if (verify->parsed()) {
    return run_verify(file, unroll, json, tree_path, tree_json_path, smt_path,
                      queries_path);
  }
  return run_oracle(file, unroll, raw_binds, enumerate, json);
}
