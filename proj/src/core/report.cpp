#include "core/report.hpp"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

#include "core/rng.hpp"

namespace tnp {

namespace {

using nlohmann::json;

json normalized_json(const Normalized& n) {
  json j;
  j["defined"] = n.defined;
  if (n.defined) j["value"] = n.value;
  return j;
}

json ttp_json(const TtpResult& t) {
  json j;
  j["value"] = t.ttp;
  j["per_order"] = t.per_order;
  j["best_order"] = t.best_order;
  j["alphabet"] = t.alphabet_n;
  j["regression"] = {{"k", t.regression.slope},
                     {"b", t.regression.intercept},
                     {"r2", t.regression.r2},
                     {"clamped", t.regression.clamped}};
  json split;
  split["sizes"] = t.plan.square_sizes;
  split["units"] = t.plan.unit_count;
  split["area"] = t.plan.total_area;
  split["origin"] = t.plan.origin == SplitPlan::Origin::Left ? "left" : "top";
  json stages = json::array();
  for (const auto& s : t.stages) stages.push_back({{"n", s.n_squares}, {"p", s.p}});
  split["stages"] = stages;
  j["split"] = split;
  j["square_entropy"] = t.square_entropies;
  j["square_pred"] = t.square_preds;
  return j;
}

}  // namespace

std::string profile_report_json(const ProfileResult& res) {
  json j;
  j["input"] = {{"rows", res.input_rows},
                {"cols", res.input_cols},
                {"alphabet", res.input_alphabet}};
  j["filter"] = {{"kept_rows", res.kept_rows},
                 {"alphabet", res.filtered_alphabet},
                 {"mass_frac", res.params.filter.mass_frac},
                 {"act_thresh", res.params.filter.act_thresh},
                 {"m_theta", res.params.filter.m_theta}};
  j["ttp"] = ttp_json(res.ttp);
  j["baseline"] = {{"value", res.baseline.mean},
                   {"runs", res.baseline.per_run.size()},
                   {"per_run", res.baseline.per_run}};
  j["nttp"] = normalized_json(res.nttp);

  json tep;
  tep["value"] = res.tep.tep;
  tep["ntep"] = normalized_json(res.tep.ntep);
  tep["undefined_npil"] = res.tep.undefined_npil;
  json per_link = json::array();
  for (const auto& l : res.tep.per_link) {
    json e;
    e["row"] = l.row;
    e["link"] = l.row < res.link_labels.size() ? res.link_labels[l.row] : "r" + std::to_string(l.row);
    e["pil"] = l.pil;
    e["pil_bl"] = l.pil_bl;
    e["npil"] = normalized_json(l.npil);
    e["n_row"] = l.n_row;
    per_link.push_back(e);
  }
  tep["per_link"] = per_link;
  j["tep"] = tep;

  if (res.has_hamming) {
    json h;
    h["pairs"] = res.hamming.pair_count;
    h["mean_h"] = res.hamming.mean_h;
    h["mean_exp"] = res.hamming.mean_exp;
    // Cap the embedded sample so reports stay a sane size.
    constexpr std::size_t kMaxEmbedded = 10000;
    std::size_t n = std::min(res.hamming.h_values.size(), kMaxEmbedded);
    h["h_sample"] = std::vector<double>(res.hamming.h_values.begin(),
                                        res.hamming.h_values.begin() + n);
    h["ttp_minus_npil"] = res.hamming.ttp_minus_npil;
    j["hamming"] = h;
  }
  j["seed"] = res.params.seed;
  return j.dump(2);
}

std::string markov_report_json(const MarkovResult& markov, const TtpResult& ttp, double gap) {
  json j;
  j["markov"] = {{"order", markov.order},
                 {"train_frac", markov.train_frac},
                 {"accuracy", markov.accuracy},
                 {"per_link", markov.per_link},
                 {"test_counts", markov.test_counts}};
  j["ttp"] = ttp_json(ttp);
  j["gap"] = gap;
  return j.dump(2);
}

std::string content_digest(const std::string& bytes) {
  std::uint64_t h = fnv1a64(bytes);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace tnp
