#include "pdl/pdl.h"

#include <cctype>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "errors.hpp"
#include "pipeline.hpp"

using namespace pdl;

struct pdl_task {
  VerificationTask task;
};

struct pdl_verdict {
  Verdict verdict;
};

struct pdl_oracle_report {
  OracleRun run;
};

namespace {

thread_local std::string g_last_error;

pdl_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return PDL_ERR_SYNTAX;
    case ErrorKind::DuplicateHeader: return PDL_ERR_DUPLICATE_HEADER;
    case ErrorKind::UnknownDirective: return PDL_ERR_UNKNOWN_DIRECTIVE;
    case ErrorKind::ProbOutOfRange: return PDL_ERR_PROB_OUT_OF_RANGE;
    case ErrorKind::UnboundVariable: return PDL_ERR_UNBOUND_VARIABLE;
    case ErrorKind::TypeMismatch: return PDL_ERR_TYPE_MISMATCH;
    case ErrorKind::DivisionByZero: return PDL_ERR_DIVISION_BY_ZERO;
    case ErrorKind::Unsupported: return PDL_ERR_UNSUPPORTED;
    case ErrorKind::InexactBudget: return PDL_ERR_INEXACT_BUDGET;
    case ErrorKind::MissingVariable: return PDL_ERR_MISSING_VARIABLE;
    case ErrorKind::CyclicConstraints: return PDL_ERR_CYCLIC_CONSTRAINTS;
    case ErrorKind::MalformedConstraint: return PDL_ERR_MALFORMED_CONSTRAINT;
    case ErrorKind::BadInput: return PDL_ERR_BAD_INPUT;
    case ErrorKind::Io: return PDL_ERR_IO;
    case ErrorKind::Internal: return PDL_ERR_INTERNAL;
  }
  return PDL_ERR_INTERNAL;
}

template <typename F>
pdl_status guarded(F&& body) {
  try {
    body();
    return PDL_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PDL_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return PDL_ERR_INTERNAL;
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

pdl_status return_string(const std::string& s, char** out) {
  if (!out) {
    g_last_error = "null output parameter";
    return PDL_ERR_BAD_INPUT;
  }
  *out = copy_string(s);
  if (!*out) {
    g_last_error = "allocation failed";
    return PDL_ERR_INTERNAL;
  }
  return PDL_OK;
}

Value parse_bind_value(const std::string& text, const std::string& name) {
  if (text == "true") return Value::boolean(true);
  if (text == "false") return Value::boolean(false);
  std::size_t start = text.size() > 1 && text[0] == '-' ? 1 : 0;
  if (start == text.size() || text.empty()) {
    throw Error(ErrorKind::BadInput,
                "binding for '" + name + "' is not a value: '" + text + "'");
  }
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw Error(ErrorKind::BadInput,
                  "binding for '" + name + "' is not a value: '" + text + "'");
    }
  }
  return Value::integer(Int(text));
}

Bindings collect_bindings(const char* const* names, const char* const* values,
                          size_t count) {
  if (count > 0 && (!names || !values)) {
    throw Error(ErrorKind::BadInput, "null binding arrays");
  }
  Bindings out;
  for (size_t i = 0; i < count; ++i) {
    if (!names[i] || !values[i]) {
      throw Error(ErrorKind::BadInput, "null binding entry");
    }
    std::string name = names[i];
    if (out.count(name)) {
      throw Error(ErrorKind::BadInput, "duplicate binding for '" + name + "'");
    }
    out.emplace(name, parse_bind_value(values[i], name));
  }
  return out;
}

std::vector<ProbConstraint> structural_constraints(const Verdict& v) {
  std::vector<ProbConstraint> out;
  for (const ProbConstraint& c : v.constraints) {
    if (!std::holds_alternative<ProbConstraint::TargetLB>(c.node)) {
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace

extern "C" {

const char* pdl_version(void) { return "0.1.0"; }

const char* pdl_last_error(void) { return g_last_error.c_str(); }

void pdl_string_free(char* s) { std::free(s); }

pdl_status pdl_task_parse_string(const char* text, pdl_task** out) {
  return guarded([&] {
    if (!text || !out) throw Error(ErrorKind::BadInput, "null argument");
    auto task = std::make_unique<pdl_task>();
    task->task = parse_task(text);
    *out = task.release();
  });
}

pdl_status pdl_task_parse_file(const char* path, pdl_task** out) {
  return guarded([&] {
    if (!path || !out) throw Error(ErrorKind::BadInput, "null argument");
    std::ifstream in(path);
    if (!in) {
      throw Error(ErrorKind::Io, std::string("cannot open '") + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    auto task = std::make_unique<pdl_task>();
    task->task = parse_task(text.str());
    *out = task.release();
  });
}

void pdl_task_free(pdl_task* task) { delete task; }

pdl_status pdl_task_pretty(const pdl_task* task, char** out) {
  if (!task) {
    g_last_error = "null task";
    return PDL_ERR_BAD_INPUT;
  }
  std::string rendered;
  pdl_status s = guarded([&] { rendered = pretty_print(task->task); });
  if (s != PDL_OK) return s;
  return return_string(rendered, out);
}

pdl_status pdl_verify(const pdl_task* task, unsigned unroll_budget,
                      pdl_verdict** out) {
  return guarded([&] {
    if (!task || !out) throw Error(ErrorKind::BadInput, "null argument");
    auto verdict = std::make_unique<pdl_verdict>();
    verdict->verdict = verify_task(task->task, unroll_budget);
    *out = verdict.release();
  });
}

void pdl_verdict_free(pdl_verdict* verdict) { delete verdict; }

const char* pdl_verdict_status(const pdl_verdict* verdict) {
  if (!verdict) return "INVALID";
  return to_string(verdict->verdict.status);
}

pdl_status pdl_verdict_claimed(const pdl_verdict* verdict, char** out) {
  if (!verdict) {
    g_last_error = "null verdict";
    return PDL_ERR_BAD_INPUT;
  }
  return return_string(to_string(verdict->verdict.claimed), out);
}

pdl_status pdl_verdict_max_provable(const pdl_verdict* verdict, char** out) {
  if (!verdict) {
    g_last_error = "null verdict";
    return PDL_ERR_BAD_INPUT;
  }
  return return_string(to_string(verdict->verdict.max_provable), out);
}

long long pdl_verdict_elapsed_ms(const pdl_verdict* verdict) {
  return verdict ? verdict->verdict.elapsed_ms : -1;
}

int pdl_verdict_saw_undecided(const pdl_verdict* verdict) {
  return verdict && verdict->verdict.saw_undecided ? 1 : 0;
}

int pdl_verdict_saw_budget_exhausted(const pdl_verdict* verdict) {
  return verdict && verdict->verdict.saw_budget_exhausted ? 1 : 0;
}

pdl_status pdl_verdict_text(const pdl_verdict* verdict, char** out) {
  if (!verdict) {
    g_last_error = "null verdict";
    return PDL_ERR_BAD_INPUT;
  }
  return return_string(verdict_text(verdict->verdict), out);
}

pdl_status pdl_verdict_json(const pdl_verdict* verdict, char** out) {
  if (!verdict) {
    g_last_error = "null verdict";
    return PDL_ERR_BAD_INPUT;
  }
  return return_string(verdict_json(verdict->verdict), out);
}

pdl_status pdl_verdict_tree_text(const pdl_verdict* verdict, char** out) {
  if (!verdict) {
    g_last_error = "null verdict";
    return PDL_ERR_BAD_INPUT;
  }
  return return_string(render_tree_text(verdict->verdict.tree), out);
}

pdl_status pdl_verdict_tree_json(const pdl_verdict* verdict, char** out) {
  if (!verdict) {
    g_last_error = "null verdict";
    return PDL_ERR_BAD_INPUT;
  }
  return return_string(render_tree_json(verdict->verdict.tree), out);
}

pdl_status pdl_verdict_constraints_text(const pdl_verdict* verdict, char** out) {
  if (!verdict) {
    g_last_error = "null verdict";
    return PDL_ERR_BAD_INPUT;
  }
  std::ostringstream text;
  for (const ProbConstraint& c : verdict->verdict.constraints) {
    text << to_string(c) << "\n";
  }
  return return_string(text.str(), out);
}

pdl_status pdl_verdict_smtlib(const pdl_verdict* verdict, char** out) {
  return guarded([&] {
    if (!verdict) throw Error(ErrorKind::BadInput, "null verdict");
    std::string script = emit_smtlib(structural_constraints(verdict->verdict),
                                     verdict->verdict.claimed);
    pdl_status s = return_string(script, out);
    if (s != PDL_OK) throw Error(ErrorKind::Internal, g_last_error);
  });
}

pdl_status pdl_verdict_validity_queries(const pdl_verdict* verdict, char** out) {
  if (!verdict) {
    g_last_error = "null verdict";
    return PDL_ERR_BAD_INPUT;
  }
  std::ostringstream text;
  std::size_t index = 0;
  for (const std::string& query : verdict->verdict.undecided_queries) {
    text << "; undecided check " << index++ << "\n" << query;
    if (!query.empty() && query.back() != '\n') text << "\n";
  }
  return return_string(text.str(), out);
}

pdl_status pdl_oracle(const pdl_task* task, const char* const* bind_names,
                      const char* const* bind_values, size_t nbinds,
                      unsigned unroll_budget, pdl_oracle_report** out) {
  return guarded([&] {
    if (!task || !out) throw Error(ErrorKind::BadInput, "null argument");
    Bindings bindings = collect_bindings(bind_names, bind_values, nbinds);
    auto report = std::make_unique<pdl_oracle_report>();
    report->run = oracle_task(task->task, bindings, unroll_budget);
    *out = report.release();
  });
}

void pdl_oracle_report_free(pdl_oracle_report* report) { delete report; }

pdl_status pdl_oracle_text(const pdl_oracle_report* report, char** out) {
  if (!report) {
    g_last_error = "null report";
    return PDL_ERR_BAD_INPUT;
  }
  return return_string(oracle_text(report->run), out);
}

pdl_status pdl_oracle_json(const pdl_oracle_report* report, char** out) {
  if (!report) {
    g_last_error = "null report";
    return PDL_ERR_BAD_INPUT;
  }
  return return_string(oracle_json(report->run), out);
}

pdl_status pdl_oracle_min_lower_bound(const pdl_oracle_report* report,
                                      char** out) {
  if (!report) {
    g_last_error = "null report";
    return PDL_ERR_BAD_INPUT;
  }
  return return_string(to_string(report->run.min_lower_bound), out);
}

int pdl_oracle_all_exact(const pdl_oracle_report* report) {
  return report && report->run.all_exact ? 1 : 0;
}

pdl_status pdl_enumerate_paths_text(const pdl_task* task,
                                    const char* const* bind_names,
                                    const char* const* bind_values,
                                    size_t nbinds, unsigned unroll_budget,
                                    char** out) {
  return guarded([&] {
    if (!task) throw Error(ErrorKind::BadInput, "null task");
    Bindings bindings = collect_bindings(bind_names, bind_values, nbinds);
    std::string text = paths_text(task->task, bindings, unroll_budget);
    pdl_status s = return_string(text, out);
    if (s != PDL_OK) throw Error(ErrorKind::Internal, g_last_error);
  });
}

}  // extern "C"
