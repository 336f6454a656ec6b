#include <fstream>
#include <json.hpp>

#include "alds/experiment.hpp"

namespace alds {

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;
constexpr const char* kFormatName = "alds-subtree-dataset";

json heuristic_to_json(const HeuristicConfig& h) {
  return {{"name", h.name()},
          {"combiner", h.combiner == Combiner::Product ? "product" : "sum"},
          {"iterations", h.iterations},
          {"gamma", h.gamma},
          {"failed_literal_detection", h.failed_literal_detection}};
}

HeuristicConfig heuristic_from_json(const json& j) {
  HeuristicConfig h;
  const auto combiner = j.at("combiner").get<std::string>();
  if (combiner != "product" && combiner != "sum")
    throw std::runtime_error("dataset: unknown combiner '" + combiner + "'");
  h.combiner = combiner == "product" ? Combiner::Product : Combiner::Sum;
  h.iterations = j.at("iterations").get<int>();
  h.gamma = j.at("gamma").get<double>();
  h.failed_literal_detection = j.at("failed_literal_detection").get<bool>();
  h.validate();
  return h;
}

}  // namespace

void save_dataset(std::ostream& out, const Dataset& ds) {
  const DatasetMeta& m = ds.meta;
  json records = json::array();
  for (const auto& r : ds.records) {
    records.push_back({{"id", r.instance_id},
                       {"seed", r.seed},
                       {"n", r.n},
                       {"m", r.m},
                       {"d", r.d},
                       {"bits", r.bits.to_hex()},
                       {"live", r.live.to_hex()}});
  }
  json j = {{"format", kFormatName},
            {"version", kFormatVersion},
            {"bit_order", "little-endian nibbles: hex char i holds subtrees 4i..4i+3, lowest in bit 0"},
            {"meta",
             {{"n", m.n},
              {"ratio", m.ratio},
              {"m", m.m},
              {"k", m.k},
              {"d", m.d},
              {"seed0", m.seed0},
              {"requested", m.requested},
              {"heuristic", heuristic_to_json(m.heuristic)},
              {"budget", m.budget},
              {"attempts", m.attempts},
              {"skipped_unsat", m.skipped_unsat},
              {"skipped_budget", m.skipped_budget},
              {"generator", "uniform random k-SAT, xorshift64*"}}},
            {"records", std::move(records)}};
  out << j.dump(1) << '\n';
}

Dataset load_dataset(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("dataset: invalid JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != kFormatName)
      throw std::runtime_error("dataset: unexpected format tag");
    if (j.at("version").get<int>() != kFormatVersion)
      throw std::runtime_error("dataset: unsupported version " +
                               std::to_string(j.at("version").get<int>()));
    Dataset ds;
    const json& m = j.at("meta");
    ds.meta.n = m.at("n").get<Var>();
    ds.meta.ratio = m.at("ratio").get<double>();
    ds.meta.m = m.at("m").get<std::size_t>();
    ds.meta.k = m.at("k").get<std::size_t>();
    ds.meta.d = m.at("d").get<int>();
    ds.meta.seed0 = m.at("seed0").get<std::uint64_t>();
    ds.meta.requested = m.at("requested").get<std::size_t>();
    ds.meta.heuristic = heuristic_from_json(m.at("heuristic"));
    ds.meta.budget = m.at("budget").get<std::uint64_t>();
    ds.meta.attempts = m.at("attempts").get<std::size_t>();
    ds.meta.skipped_unsat = m.at("skipped_unsat").get<std::size_t>();
    ds.meta.skipped_budget = m.at("skipped_budget").get<std::size_t>();
    if (ds.meta.d < 0 || ds.meta.d > kMaxOrderDepth)
      throw std::runtime_error("dataset: depth out of range");
    const std::size_t leaves = std::size_t{1} << ds.meta.d;
    for (const json& r : j.at("records")) {
      InstanceRecord rec;
      rec.instance_id = r.at("id").get<std::uint64_t>();
      rec.seed = r.at("seed").get<std::uint64_t>();
      rec.n = r.at("n").get<Var>();
      rec.m = r.at("m").get<std::size_t>();
      rec.d = r.at("d").get<int>();
      if (rec.d != ds.meta.d) throw std::runtime_error("dataset: record depth differs from meta");
      rec.bits = SubtreeBits::from_hex(r.at("bits").get<std::string>(), leaves);
      rec.live = SubtreeBits::from_hex(r.at("live").get<std::string>(), leaves);
      ds.records.push_back(std::move(rec));
    }
    return ds;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("dataset: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("dataset: ") + e.what());
  }
}

void save_dataset(const std::filesystem::path& path, const Dataset& dataset) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  save_dataset(out, dataset);
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return load_dataset(in);
}

}  // namespace alds
