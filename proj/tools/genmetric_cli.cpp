// Command-line surface over the genmetric C API. Every command prints one
// run report document on stdout:
//   {"command": ..., "inputs": {<name>: "fnv1a:<digest>"}, "result": ...,
//    "exit_code": 0|1|2}
// Exit codes: 0 holds/success, 1 valid negative outcome, 2 input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "genmetric.h"

namespace {

using Json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string fnv1a_digest(const std::string& bytes) {
  uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char out[32];
  std::snprintf(out, sizeof(out), "fnv1a:%016llx", static_cast<unsigned long long>(hash));
  return out;
}

struct OwnedString {
  char* value = nullptr;
  ~OwnedString() { gm_string_free(value); }
  std::string str() const { return value != nullptr ? value : ""; }
};

struct OwnedSpace {
  gm_space* value = nullptr;
  ~OwnedSpace() { gm_space_free(value); }
};

int report(const std::string& command, const Json& inputs, gm_status status,
           const OwnedString& result_json, const OwnedString& errmsg, bool pretty) {
  int exit_code;
  Json result;
  switch (status) {
    case GM_OK:
      exit_code = 0;
      result = Json::parse(result_json.str());
      break;
    case GM_NEGATIVE:
      exit_code = 1;
      result = Json::parse(result_json.str());
      break;
    default:
      exit_code = 2;
      result = Json{{"error", errmsg.str()}};
      std::cerr << "error: " << errmsg.str() << "\n";
      break;
  }
  Json doc;
  doc["command"] = command;
  doc["inputs"] = inputs;
  doc["result"] = std::move(result);
  doc["exit_code"] = exit_code;
  std::cout << (pretty ? doc.dump(2) : doc.dump()) << "\n";
  return exit_code;
}

int fail_input(const std::string& command, const Json& inputs, const std::string& message,
               bool pretty) {
  Json doc;
  doc["command"] = command;
  doc["inputs"] = inputs;
  doc["result"] = Json{{"error", message}};
  doc["exit_code"] = 2;
  std::cerr << "error: " << message << "\n";
  std::cout << (pretty ? doc.dump(2) : doc.dump()) << "\n";
  return 2;
}

gm_status load_space(const std::string& text, OwnedSpace& space, OwnedString& err) {
  return gm_space_from_json(text.c_str(), &space.value, &err.value);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"genmetric: axiom checking, fixed-point certification, convergence "
               "testing and counterexample search on generalized metric spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  bool pretty = false;
  app.add_flag("--pretty", pretty, "indent the run report");

  // classify
  std::string classify_space, classify_semantics, classify_class;
  auto* classify = app.add_subcommand("classify", "axiom verdicts for a space document");
  classify->add_option("space-file", classify_space)->required();
  classify->add_option("--semantics", classify_semantics,
                       "rectangular pair semantics: distinct|pairs");
  classify->add_option("--class", classify_class, "single class tag instead of all eight");

  // fixpoint
  std::string fp_space, fp_map, fp_condition, fp_x0, fp_semantics;
  long fp_max_steps = 0;
  auto* fixpoint = app.add_subcommand("fixpoint", "contraction certificate and audited "
                                                  "fixed-point run");
  fixpoint->add_option("space-file", fp_space)->required();
  fixpoint->add_option("map-file", fp_map)->required();
  fixpoint->add_option("--condition", fp_condition, "banach|max-self|max-displacement")
      ->required();
  fixpoint->add_option("--x0", fp_x0, "start point (defaults to the first point)");
  fixpoint->add_option("--max-steps", fp_max_steps, "step budget (default: point count + 1)");
  fixpoint->add_option("--semantics", fp_semantics, "RML hypothesis semantics (default pairs)");

  // converge
  std::string cv_space, cv_seq, cv_mode, cv_candidate, cv_epsilon;
  long cv_window = 0;
  auto* converge = app.add_subcommand("converge", "convergence verdict for a sequence");
  converge->add_option("space-file", cv_space)->required();
  converge->add_option("sequence-file", cv_seq)->required();
  converge->add_option("--mode", cv_mode, "sigma|symmetric|cauchy")->required();
  converge->add_option("--candidate", cv_candidate, "limit candidate (sigma/symmetric)");
  converge->add_option("--epsilon", cv_epsilon, "window tolerance (default 1/1000)");
  converge->add_option("--window", cv_window, "trailing window size (default 8)");

  // search
  std::string search_query;
  auto* search = app.add_subcommand("search", "separating-example search from a query");
  search->add_option("query-file", search_query)->required();

  // paper-suite
  auto* paper = app.add_subcommand("paper-suite", "built-in regression suite "
                                                  "(embedded fixtures)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*classify) {
      Json inputs;
      std::string text = read_file(classify_space);
      inputs["space"] = fnv1a_digest(text);
      OwnedSpace space;
      OwnedString out, err;
      gm_status status = load_space(text, space, err);
      if (status != GM_OK) return report("classify", inputs, status, out, err, pretty);
      status = gm_classify(space.value,
                           classify_semantics.empty() ? nullptr : classify_semantics.c_str(),
                           classify_class.empty() ? nullptr : classify_class.c_str(),
                           &out.value, &err.value);
      return report("classify", inputs, status, out, err, pretty);
    }

    if (*fixpoint) {
      Json inputs;
      std::string space_text = read_file(fp_space);
      std::string map_text = read_file(fp_map);
      inputs["space"] = fnv1a_digest(space_text);
      inputs["map"] = fnv1a_digest(map_text);
      OwnedSpace space;
      OwnedString out, err;
      gm_status status = load_space(space_text, space, err);
      if (status != GM_OK) return report("fixpoint", inputs, status, out, err, pretty);
      status = gm_fixpoint(space.value, map_text.c_str(), fp_condition.c_str(),
                           fp_x0.empty() ? nullptr : fp_x0.c_str(), fp_max_steps,
                           fp_semantics.empty() ? nullptr : fp_semantics.c_str(),
                           &out.value, &err.value);
      return report("fixpoint", inputs, status, out, err, pretty);
    }

    if (*converge) {
      Json inputs;
      std::string space_text = read_file(cv_space);
      std::string seq_text = read_file(cv_seq);
      inputs["space"] = fnv1a_digest(space_text);
      inputs["sequence"] = fnv1a_digest(seq_text);
      OwnedSpace space;
      OwnedString out, err;
      gm_status status = load_space(space_text, space, err);
      if (status != GM_OK) return report("converge", inputs, status, out, err, pretty);
      status = gm_converge(space.value, seq_text.c_str(), cv_mode.c_str(),
                           cv_candidate.empty() ? nullptr : cv_candidate.c_str(),
                           cv_epsilon.empty() ? nullptr : cv_epsilon.c_str(), cv_window,
                           &out.value, &err.value);
      return report("converge", inputs, status, out, err, pretty);
    }

    if (*search) {
      Json inputs;
      std::string query_text = read_file(search_query);
      inputs["query"] = fnv1a_digest(query_text);
      OwnedString out, err;
      gm_status status = gm_search(query_text.c_str(), &out.value, &err.value);
      return report("search", inputs, status, out, err, pretty);
    }

    if (*paper) {
      OwnedString out, err;
      gm_status status = gm_paper_suite(&out.value, &err.value);
      return report("paper-suite", Json::object(), status, out, err, pretty);
    }
  } catch (const std::exception& e) {
    std::string command = app.get_subcommands().empty()
                              ? "?"
                              : app.get_subcommands().front()->get_name();
    return fail_input(command, Json::object(), e.what(), pretty);
  }
  return 2;
}
