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

#include <algorithm>

#include "experiments/commands.hpp"
#include "neural/pwl.hpp"
#include "neural/rnn.hpp"
#include "neural/train.hpp"
#include "util/rng.hpp"

namespace conceptlab::experiments {

namespace {

using neural::FeedForwardNet;
using neural::LabeledPoint;

std::vector<LabeledPoint> parity_points(std::uint64_t lo, std::uint64_t hi, double scale) {
  std::vector<LabeledPoint> pts;
  for (std::uint64_t n = lo; n <= hi; ++n) pts.push_back({static_cast<double>(n) / scale, n % 2 == 0 ? 1 : 0});
  return pts;
}

std::vector<LabeledPoint> raw_points(std::span<const LabeledPoint> scaled, double scale) {
  std::vector<LabeledPoint> pts(scaled.begin(), scaled.end());
  for (LabeledPoint& p : pts) p.x *= scale;
  return pts;
}

json falsify_json(const neural::ParityCounterexample& c) {
  return {{"n", c.n},
          {"verified", c.verified},
          {"tail_start", c.tail_start},
          {"tail_witness", c.tail_witness},
          {"found_by_scan", c.found_by_scan}};
}

struct NetReport {
  double train_accuracy = 0.0;
  double ood_accuracy = 0.0;
  std::size_t pieces = 0;
  std::size_t decision_intervals = 0;
  double complexity = 0.0;
  std::size_t epochs = 0;
  neural::ParityCounterexample counterexample;
};

}  // namespace

RunResult run_parity_train(std::string_view text) {
  Config cfg("parity-train", text,
             {"seeds", "seed", "width", "depth", "epochs", "learning_rate", "momentum", "batch_size", "temperature",
              "resolution", "prior_scale", "train_max", "test_lo", "test_hi", "scale", "labels", "match_accuracy",
              "target_accuracy", "ood_lo", "ood_hi", "ledger_every"});
  const auto seeds = cfg.get<std::uint64_t>("seeds", 10);
  const auto seed = cfg.get<std::uint64_t>("seed", 0);
  const auto width = cfg.get<std::uint64_t>("width", 1024);
  const auto depth = cfg.get<std::uint64_t>("depth", 1);
  neural::TrainConfig tc;
  tc.epochs = cfg.get<std::uint64_t>("epochs", 2000);
  tc.learning_rate = cfg.get<double>("learning_rate", 0.5);
  tc.momentum = cfg.get<double>("momentum", 0.9);
  tc.batch_size = cfg.get<std::uint64_t>("batch_size", 32);
  tc.temperature = cfg.get<double>("temperature", 1e-3);
  tc.resolution = cfg.get<double>("resolution", 0.01);
  tc.prior_scale = cfg.get<double>("prior_scale", 1.0);
  tc.ledger_every = cfg.get<std::uint64_t>("ledger_every", 10);
  const auto train_max = cfg.get<std::uint64_t>("train_max", 255);
  const auto test_lo = cfg.get<std::uint64_t>("test_lo", 4096);
  const auto test_hi = cfg.get<std::uint64_t>("test_hi", 8191);
  const auto scale = cfg.get<double>("scale", 256.0);
  const auto labels = cfg.get<std::string>("labels", "true");
  const auto match_accuracy = cfg.get<double>("match_accuracy", 0.99);
  const auto target_accuracy = cfg.get<double>("target_accuracy", 0.99);
  const auto ood_lo = cfg.get<double>("ood_lo", 0.40);
  const auto ood_hi = cfg.get<double>("ood_hi", 0.60);
  check(labels == "true" || labels == "random" || labels == "paired",
        "parity-train: labels must be true, random or paired");
  check(seeds >= 1 && width >= 1 && depth >= 1 && test_lo <= test_hi && scale > 0.0, "parity-train: bad sizes");

  const auto train_true = parity_points(0, train_max, scale);
  const auto test = parity_points(test_lo, test_hi, scale);
  const auto test_raw = raw_points(test, scale);
  const std::vector<std::size_t> widths(depth, width);

  RunResult result;
  auto train_one = [&](const std::vector<LabeledPoint>& data, const FeedForwardNet& init, const Rng& rng,
                       double stop_at, const std::string& tag) {
    neural::TrainConfig c = tc;
    c.seed = rng.split("sgd").next_u64();
    c.stop_at_accuracy = stop_at;
    auto trained = neural::train_sgd(init, data, test, c);
    const FeedForwardNet raw = neural::with_input_scale(trained.net, 1.0 / scale);
    const auto raw_data = raw_points(data, scale);
    NetReport rep;
    rep.train_accuracy = neural::accuracy(raw, raw_data);
    rep.ood_accuracy = neural::accuracy(raw, test_raw);
    const auto pwl = neural::exact_pwl(raw);
    rep.pieces = pwl.pieces();
    rep.decision_intervals = pwl.superlevel_set(FeedForwardNet::kDecisionLevel).size();
    rep.complexity = trained.ledger.rows.back().complexity_bits;
    rep.epochs = trained.ledger.rows.back().epoch;
    rep.counterexample = neural::falsify_parity(raw);
    result.artifacts.push_back({"net_" + tag + ".json", raw.to_json() + "\n"});
    result.artifacts.push_back({"ledger_" + tag + ".csv", trained.ledger.to_csv()});
    return rep;
  };

  std::string csv =
      "seed,labels,epochs,train_accuracy,ood_accuracy,pieces,decision_intervals,complexity_bits,counterexample,"
      "verified\n";
  auto row = [&](std::uint64_t s, const std::string& lab, const NetReport& r) {
    csv += std::to_string(s) + "," + lab + "," + std::to_string(r.epochs) + "," + fmt_double(r.train_accuracy) + "," +
           fmt_double(r.ood_accuracy) + "," + std::to_string(r.pieces) + "," + std::to_string(r.decision_intervals) +
           "," + fmt_double(r.complexity) + "," + std::to_string(r.counterexample.n) + "," +
           (r.counterexample.verified ? "1" : "0") + "\n";
  };

  std::size_t memorized = 0, all_verified = 0, ordered = 0, matched = 0;
  json runs = json::array();
  for (std::uint64_t s = 0; s < seeds; ++s) {
    const Rng rng = Rng(seed).split("parity-train").split(s);
    Rng init_rng = rng.split("init");
    neural::InitOptions init_opts;
    init_opts.kink_hi = static_cast<double>(train_max) / scale;
    const FeedForwardNet init = neural::random_net(widths, init_rng, init_opts);

    std::vector<LabeledPoint> random_labels = train_true;
    Rng label_rng = rng.split("labels");
    for (LabeledPoint& p : random_labels) p.y = static_cast<int>(label_rng.below(2));

    json entry = {{"seed", s}};
    if (labels == "paired") {
      const NetReport t = train_one(train_true, init, rng, match_accuracy, "s" + std::to_string(s) + "_true");
      const NetReport r = train_one(random_labels, init, rng, match_accuracy, "s" + std::to_string(s) + "_random");
      row(s, "true", t);
      row(s, "random", r);
      const bool both = t.train_accuracy >= match_accuracy && r.train_accuracy >= match_accuracy;
      matched += both;
      ordered += both && r.complexity > t.complexity;
      all_verified += t.counterexample.verified && r.counterexample.verified;
      entry["true_complexity_bits"] = t.complexity;
      entry["random_complexity_bits"] = r.complexity;
      entry["true_train_accuracy"] = t.train_accuracy;
      entry["random_train_accuracy"] = r.train_accuracy;
      entry["matched"] = both;
      entry["ordered"] = both && r.complexity > t.complexity;
    } else {
      const bool rnd = labels == "random";
      const NetReport t = train_one(rnd ? random_labels : train_true, init, rng, 2.0,
                                    "s" + std::to_string(s) + (rnd ? "_random" : "_true"));
      row(s, labels, t);
      const bool ok = t.train_accuracy >= target_accuracy && t.ood_accuracy >= ood_lo && t.ood_accuracy <= ood_hi;
      memorized += ok;
      all_verified += t.counterexample.verified;
      entry["train_accuracy"] = t.train_accuracy;
      entry["ood_accuracy"] = t.ood_accuracy;
      entry["pieces"] = t.pieces;
      entry["decision_intervals"] = t.decision_intervals;
      entry["complexity_bits"] = t.complexity;
      entry["memorized"] = ok;
      entry["counterexample"] = falsify_json(t.counterexample);
    }
    runs.push_back(std::move(entry));
  }

  result.artifacts.push_back({"runs.csv", csv});
  result.artifacts.push_back({"run.json", json{{"runs", runs}}.dump(2) + "\n"});
  json summary = {{"seeds", seeds}, {"labels", labels}, {"counterexamples_verified", all_verified}};
  if (labels == "paired") {
    summary["matched_pairs"] = matched;
    summary["ordered_pairs"] = ordered;
    result.summary = "parity-train: " + std::to_string(ordered) + "/" + std::to_string(seeds) +
                     " pairs with random-label complexity above true-label complexity (" + std::to_string(matched) +
                     " reached matched accuracy " + fmt_double(match_accuracy) + ")";
  } else {
    summary["memorized"] = memorized;
    result.summary = "parity-train: " + std::to_string(memorized) + "/" + std::to_string(seeds) +
                     " seeds memorized (train >= " + fmt_double(target_accuracy) + ", out-of-domain in [" +
                     fmt_double(ood_lo) + ", " + fmt_double(ood_hi) + "])";
  }
  return finish(cfg, std::move(result), summary);
}

RunResult run_falsify_ffn(std::string_view text) {
  Config cfg("falsify-ffn", text, {"net", "random", "widths", "kink_hi", "seed", "scan_limit"});
  const auto random = cfg.get<std::uint64_t>("random", 0);
  const auto widths = list_param<std::uint64_t>(cfg, "widths", {32});
  const auto kink_hi = cfg.get<double>("kink_hi", 64.0);
  const auto seed = cfg.get<std::uint64_t>("seed", 0);
  neural::FalsifyOptions fo;
  fo.scan_limit = cfg.get<std::uint64_t>("scan_limit", fo.scan_limit);
  check(cfg.has("net") != (random > 0), "falsify-ffn: give exactly one of net or random");

  std::vector<FeedForwardNet> nets;
  if (cfg.has("net")) {
    const json& n = cfg.raw("net");
    nets.push_back(FeedForwardNet::from_json(n.is_string() ? n.get<std::string>() : n.dump()));
  } else {
    const std::vector<std::size_t> w(widths.begin(), widths.end());
    for (std::uint64_t i = 0; i < random; ++i) {
      Rng rng = Rng(seed).split("falsify-ffn").split(i);
      neural::InitOptions io;
      io.kink_hi = kink_hi;
      nets.push_back(neural::random_net(w, rng, io));
    }
  }

  json results = json::array();
  std::string csv = "net,n,verified,tail_start,tail_witness,found_by_scan\n";
  std::size_t verified = 0;
  for (std::size_t i = 0; i < nets.size(); ++i) {
    const auto c = neural::falsify_parity(nets[i], fo);
    verified += c.verified;
    results.push_back(falsify_json(c));
    csv += std::to_string(i) + "," + std::to_string(c.n) + "," + (c.verified ? "1" : "0") + "," +
           fmt_double(c.tail_start) + "," + std::to_string(c.tail_witness) + "," + (c.found_by_scan ? "1" : "0") + "\n";
  }
  RunResult result;
  result.artifacts.push_back({"counterexamples.json", results.dump(2) + "\n"});
  result.artifacts.push_back({"counterexamples.csv", csv});
  json summary = {{"nets", nets.size()}, {"verified", verified}};
  if (nets.size() == 1) {
    summary["n"] = results[0]["n"];
    result.summary = "falsify-ffn: counterexample n=" + results[0]["n"].dump() +
                     ", verified=" + (verified ? "true" : "false");
  } else {
    result.summary = "falsify-ffn: " + std::to_string(verified) + "/" + std::to_string(nets.size()) +
                     " nets falsified with verified counterexamples";
  }
  return finish(cfg, std::move(result), summary);
}

RunResult run_rnn_parity(std::string_view text) {
  Config cfg("rnn-parity", text, {"n", "max_n", "direct_limit", "seed"});
  cfg.get<std::uint64_t>("seed", 0);
  RunResult result;
  if (cfg.has("n")) {
    const auto n = cfg.get<std::uint64_t>("n", 0);
    check(n <= (std::uint64_t{1} << 40), "rnn-parity: n too large for direct iteration");
    const auto r = neural::rnn_parity(n);
    json summary = {{"n", n},
                    {"even", r.even},
                    {"steps", r.steps},
                    {"terminal", {r.terminal.counter, r.terminal.parity, r.terminal.end}}};
    result.summary = "rnn-parity: n=" + std::to_string(n) + " -> " + (r.even ? "1 (even)" : "0 (odd)") + " in " +
                     std::to_string(r.steps) + " steps";
    return finish(cfg, std::move(result), summary);
  }
  const auto max_n = cfg.get<std::uint64_t>("max_n", 1'000'000);
  const auto direct_limit = cfg.get<std::uint64_t>("direct_limit", 2000);
  check(max_n <= 100'000'000, "rnn-parity: max_n too large");

  const auto table = neural::rnn_parity_table(max_n);
  std::uint64_t wrong_parity = 0, wrong_steps = 0;
  for (std::uint64_t n = 0; n <= max_n; ++n) {
    wrong_parity += table.even[n] != (n % 2 == 0 ? 1 : 0);
    wrong_steps += table.steps[n] != n + 1;
  }
  // Independent spot checks by direct iteration.
  std::vector<std::uint64_t> direct;
  for (std::uint64_t n = 0; n <= std::min(direct_limit, max_n); ++n) direct.push_back(n);
  for (std::uint64_t n : {max_n / 2, max_n - 1, max_n}) {
    if (n > direct.back()) direct.push_back(n);
  }
  std::uint64_t direct_mismatch = 0;
  std::string csv = "n,even,steps\n";
  for (std::uint64_t n : direct) {
    const auto r = neural::rnn_parity(n);
    direct_mismatch += r.even != (n % 2 == 0) || r.steps != n + 1 || r.even != (table.even[n] == 1) ||
                       r.steps != table.steps[n];
    csv += std::to_string(n) + "," + (r.even ? "1" : "0") + "," + std::to_string(r.steps) + "\n";
  }
  result.artifacts.push_back({"direct.csv", csv});
  const bool ok = wrong_parity == 0 && wrong_steps == 0 && direct_mismatch == 0;
  json summary = {{"max_n", max_n},
                  {"parity_errors", wrong_parity},
                  {"step_errors", wrong_steps},
                  {"direct_checks", direct.size()},
                  {"direct_mismatches", direct_mismatch},
                  {"all_correct", ok}};
  result.summary = "rnn-parity: n <= " + std::to_string(max_n) + ": " + std::to_string(wrong_parity) +
                   " parity errors, " + std::to_string(wrong_steps) + " step-count errors, " +
                   std::to_string(direct.size()) + " direct checks";
  return finish(cfg, std::move(result), summary);
}

}  // namespace conceptlab::experiments
