// Copyright 2026 The conceptlab Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "conceptlab/conceptlab.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum class Kind { integer, real, text, boolean, list, file, files };

struct Option {
  const char* key;  // config key; "pose.x" nests into an object
  Kind kind;
  const char* help;
};

struct Command {
  const char* name;
  const char* help;
  std::vector<Option> options;
};

const std::vector<Command>& commands() {
  static const std::vector<Command> table = {
      {"enumerate",
       "List programs in enumeration order",
       {{"start", Kind::integer, "first index"},
        {"count", Kind::integer, "number of programs"},
        {"program", Kind::text, "report the index of this program"},
        {"max_size", Kind::integer, "largest size in counts.csv"},
        {"seed", Kind::integer, "unused; accepted for uniformity"}}},
      {"gold-learn",
       "Run the enumeration learner on a target concept",
       {{"target", Kind::text, "target as program text or enumeration index"},
        {"mode", Kind::text, "complete | one-sided"},
        {"steps", Kind::integer, "maximum observations"},
        {"window", Kind::integer, "convergence window"},
        {"check_limit", Kind::integer, "extension prefix checked for correctness"},
        {"enumeration_cap", Kind::integer, "largest index searched"},
        {"random_targets", Kind::integer, "learn this many random targets instead"},
        {"max_index", Kind::integer, "random targets have index <= this"},
        {"seed", Kind::integer, "seed for random targets"}}},
      {"one-sided",
       "Positive-only streams of multiples of k, with a two-sided control",
       {{"k", Kind::list, "comma-separated k values"},
        {"steps", Kind::integer, "one-sided observations"},
        {"check_limit", Kind::integer, "extension prefix"},
        {"control", Kind::boolean, "run the two-sided control (true|false)"},
        {"control_steps", Kind::integer, "maximum control observations"},
        {"window", Kind::integer, "control convergence window"},
        {"enumeration_cap", Kind::integer, "largest index searched"},
        {"seed", Kind::integer, "unused; accepted for uniformity"}}},
      {"parity-train",
       "Train ReLU nets on parity and evaluate them out of domain",
       {{"seeds", Kind::integer, "number of seeds"},
        {"seed", Kind::integer, "root seed"},
        {"width", Kind::integer, "hidden width"},
        {"depth", Kind::integer, "hidden layers"},
        {"epochs", Kind::integer, "epochs"},
        {"learning_rate", Kind::real, "learning rate"},
        {"momentum", Kind::real, "momentum"},
        {"batch_size", Kind::integer, "minibatch size"},
        {"temperature", Kind::real, "ledger temperature"},
        {"resolution", Kind::real, "complexity quantization step"},
        {"prior_scale", Kind::real, "complexity prior scale"},
        {"train_max", Kind::integer, "train on 0..train_max"},
        {"test_lo", Kind::integer, "out-of-domain range start"},
        {"test_hi", Kind::integer, "out-of-domain range end"},
        {"scale", Kind::real, "input scaling divisor"},
        {"labels", Kind::text, "true | random | paired"},
        {"match_accuracy", Kind::real, "paired runs stop at this train accuracy"},
        {"target_accuracy", Kind::real, "train accuracy counted as memorized"},
        {"ood_lo", Kind::real, "lower out-of-domain accuracy bound"},
        {"ood_hi", Kind::real, "upper out-of-domain accuracy bound"},
        {"ledger_every", Kind::integer, "ledger row interval in epochs"}}},
      {"falsify-ffn",
       "Find an integer whose parity a ReLU net gets wrong",
       {{"net", Kind::file, "net JSON file"},
        {"random", Kind::integer, "falsify this many random nets instead"},
        {"widths", Kind::list, "hidden widths of random nets"},
        {"kink_hi", Kind::real, "random nets place kinks in [0, kink_hi]"},
        {"seed", Kind::integer, "seed for random nets"},
        {"scan_limit", Kind::integer, "integers scanned for the smallest counterexample"}}},
      {"rnn-parity",
       "Run the parity recurrence",
       {{"n", Kind::integer, "single input"},
        {"max_n", Kind::integer, "sweep 0..max_n"},
        {"direct_limit", Kind::integer, "direct iteration checks up to this n"},
        {"seed", Kind::integer, "unused; accepted for uniformity"}}},
      {"render",
       "Render a flatland scene",
       {{"scene", Kind::file, "scene JSON file"},
        {"pose.x", Kind::real, "camera x"},
        {"pose.y", Kind::real, "camera y"},
        {"pose.heading", Kind::real, "camera heading (radians)"},
        {"pose.fov", Kind::real, "field of view (radians)"},
        {"pose.pixels", Kind::integer, "pixel count"},
        {"gain", Kind::real, "contrast gain"},
        {"gamma", Kind::real, "contrast exponent"},
        {"noise_sigma", Kind::real, "Gaussian noise"},
        {"levels", Kind::integer, "quantization levels"},
        {"seed", Kind::integer, "noise seed"},
        {"format", Kind::text, "csv | bin | json"}}},
      {"mix",
       "Mix an acoustic scene",
       {{"scene", Kind::file, "audio scene JSON file"},
        {"active", Kind::file, "active source JSON file"},
        {"seed", Kind::integer, "noise seed"},
        {"format", Kind::text, "csv | bin | json"}}},
      {"sense",
       "Active sensing: averaging, stochastic resonance, view planning",
       {{"policy", Kind::list, "averaging | resonance | passive | orbit | planner (comma-separated)"},
        {"scene", Kind::file, "hypothesis file: {hypotheses, truth, candidates}"},
        {"family", Kind::text, "generated hypothesis family (occluder)"},
        {"trials", Kind::integer, "generated families"},
        {"rounds", Kind::integer, "round budget (default: candidate count)"},
        {"seed", Kind::integer, "root seed"},
        {"noise_sigma", Kind::real, "observation noise for identification"},
        {"frames", Kind::integer, "frames averaged per observation"},
        {"pixels", Kind::integer, "pixels per view"},
        {"orbit_steps", Kind::integer, "orbit poses per family"},
        {"averaging_sigma", Kind::real, "noise for the averaging experiment"},
        {"averaging_frames", Kind::list, "frame counts T"},
        {"averaging_pixels", Kind::integer, "pixels in the averaging experiment"},
        {"averaging_seeds", Kind::integer, "seeds per T"},
        {"tolerance", Kind::real, "relative variance tolerance"},
        {"values", Kind::list, "stochastic resonance values"},
        {"samples", Kind::integer, "thresholds per estimate"},
        {"resonance_seeds", Kind::integer, "seeds per value"}}},
      {"game",
       "Verifier versus prover authentication games",
       {{"modality", Kind::text, "visual | acoustic"},
        {"authority", Kind::list, "passive | active (comma-separated)"},
        {"prover", Kind::list, "physical | replay | perfect | acoustic-additive (comma-separated)"},
        {"policy", Kind::text, "fixed | scripted | planner | random-novel"},
        {"rounds", Kind::integer, "maximum rounds"},
        {"trials", Kind::integer, "games per arm"},
        {"seed", Kind::integer, "root seed"},
        {"noise_sigma", Kind::real, "channel noise"},
        {"frames", Kind::integer, "frames averaged per response"},
        {"scene", Kind::file, "scene JSON file (default: random per trial)"},
        {"pixels", Kind::integer, "pixels per view"},
        {"fov", Kind::real, "field of view"},
        {"preseed", Kind::boolean, "replay spoofer has seen the fixed pose (true|false)"}}},
      {"stats",
       "Detection statistics from transcript files",
       {{"transcripts", Kind::files, "JSONL transcript files"}, {"seed", Kind::integer, "unused"}}},
  };
  return table;
}

std::string flag_of(const char* key) {
  std::string f = key;
  for (char& c : f) {
    if (c == '_' || c == '.') c = '-';
  }
  return "--" + f;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomic(const fs::path& path, const void* data, std::size_t size) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

int report_error(const std::string& subcommand, const char* status, const std::string& message,
                 std::size_t offset, int code) {
  json err = {{"error", status}, {"message", message}, {"subcommand", subcommand}};
  if (offset != SIZE_MAX) err["offset"] = offset;
  std::cerr << err.dump() << std::endl;
  return code;
}

void set_key(json& config, const std::string& key, json value) {
  const auto dot = key.find('.');
  if (dot == std::string::npos) {
    config[key] = std::move(value);
  } else {
    config[key.substr(0, dot)][key.substr(dot + 1)] = std::move(value);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conceptlab: learnability and active-sensing experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_dir;
  if (const char* env = std::getenv("CONCEPTLAB_OUT")) out_dir = env;
  if (out_dir.empty()) out_dir = ".";
  std::string config_file;
  bool version = false;
  app.add_option("-o,--out", out_dir,
                 "output directory (default $CONCEPTLAB_OUT or .); a .json/.jsonl/.csv/.bin/.txt path names the primary file");
  app.add_option("-c,--config", config_file, "JSON config file; explicit flags override it");
  app.add_flag("--version", version, "print the library version");

  // Values are collected as strings and typed afterwards.
  std::map<std::string, std::map<std::string, std::vector<std::string>>> values;
  std::map<std::string, CLI::App*> subs;
  for (const Command& cmd : commands()) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    subs[cmd.name] = sub;
    for (const Option& opt : cmd.options) {
      auto& slot = values[cmd.name][opt.key];
      if (opt.kind == Kind::files) {
        sub->add_option(flag_of(opt.key), slot, opt.help)->expected(1, -1);
      } else {
        sub->add_option(flag_of(opt.key), slot, opt.help)->expected(1);
      }
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    if (version) {
      std::cout << clab_version() << "\n";
      return 0;
    }
    return report_error("", "usage", e.what(), SIZE_MAX, 2);
  }

  std::string name;
  for (const auto& [n, sub] : subs) {
    if (sub->parsed()) name = n;
  }

  json config = json::object();
  try {
    if (!config_file.empty()) {
      config = json::parse(read_file(config_file));
      if (!config.is_object()) throw std::runtime_error("config file must hold a JSON object");
    }
    for (const Command& cmd : commands()) {
      if (name != cmd.name) continue;
      for (const Option& opt : cmd.options) {
        const auto& v = values[name][opt.key];
        if (v.empty()) continue;
        const std::string& s = v.front();
        switch (opt.kind) {
          case Kind::integer: {
            std::size_t used = 0;
            const auto n = std::stoull(s, &used);
            if (used != s.size()) throw std::invalid_argument(flag_of(opt.key) + ": not an integer");
            set_key(config, opt.key, n);
            break;
          }
          case Kind::real: {
            std::size_t used = 0;
            const double d = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(flag_of(opt.key) + ": not a number");
            set_key(config, opt.key, d);
            break;
          }
          case Kind::boolean:
            if (s != "true" && s != "false") throw std::invalid_argument(flag_of(opt.key) + ": expected true or false");
            set_key(config, opt.key, s == "true");
            break;
          case Kind::text:
          case Kind::list: set_key(config, opt.key, s); break;
          case Kind::file: set_key(config, opt.key, read_file(s)); break;
          case Kind::files: {
            json parts = json::array();
            for (const std::string& path : v) parts.push_back(read_file(path));
            set_key(config, opt.key, parts);
            break;
          }
        }
      }
    }
  } catch (const std::exception& e) {
    return report_error(name, "config", e.what(), SIZE_MAX, 2);
  }

  clab_result* result = nullptr;
  const std::string config_text = config.dump();
  const clab_status status = clab_run(name.c_str(), config_text.c_str(), &result);
  if (status != CLAB_OK) {
    return report_error(name, clab_status_name(status), clab_last_error(), clab_last_error_offset(),
                        status == CLAB_ERR_CONFIG ? 2 : 1);
  }

  try {
    fs::path out = out_dir;
    fs::path dir = out;
    std::optional<fs::path> primary;
    // Only artifact-like names count as a file; "runs/lr0.5" is a directory.
    static const std::set<std::string> kFileExtensions = {".json", ".jsonl", ".csv", ".bin", ".txt"};
    if (kFileExtensions.count(out.extension().string()) && !fs::is_directory(out)) {
      primary = out;
      dir = out.has_parent_path() ? out.parent_path() : fs::path(".");
    }
    for (std::size_t i = 0; i < clab_result_artifact_count(result); ++i) {
      std::size_t size = 0;
      const void* data = clab_result_artifact_data(result, i, &size);
      const fs::path target = (i == 0 && primary) ? *primary : dir / clab_result_artifact_name(result, i);
      write_atomic(target, data, size);
    }
  } catch (const std::exception& e) {
    clab_result_free(result);
    return report_error(name, "io", e.what(), SIZE_MAX, 1);
  }
  std::cout << clab_result_summary(result) << std::endl;
  clab_result_free(result);
  return 0;
}
