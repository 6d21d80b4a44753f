#include "frgame/accuracy_table.hpp"

#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "frgame/error.hpp"

namespace frgame {

using nlohmann::json;

double AccuracyTable::accuracy_for_count(int k) const {
  if (mode != Mode::ByCount) throw ModelIncompleteError("accuracy table is not by-count");
  if (k < 0 || k >= static_cast<int>(mean.size())) {
    std::ostringstream oss;
    oss << "accuracy table has no entry for participant count " << k;
    throw ModelIncompleteError(oss.str());
  }
  return mean[static_cast<std::size_t>(k)];
}

double AccuracyTable::accuracy_for_mask(ClientMask participants) const {
  if (mode == Mode::ByCount) return accuracy_for_count(std::popcount(participants));
  const auto it = subset_mean.find(participants);
  if (it == subset_mean.end()) {
    std::ostringstream oss;
    oss << "accuracy table has no entry for participant mask " << participants;
    throw ModelIncompleteError(oss.str());
  }
  return it->second;
}

void AccuracyTable::validate() const {
  if (mode == Mode::ByCount) {
    if (mean.empty()) throw std::invalid_argument("by-count accuracy table needs the k = 0 entry");
    for (double v : mean) {
      if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("accuracy out of [0,1]");
    }
  } else {
    for (const auto& [mask, v] : subset_mean) {
      (void)mask;
      if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("accuracy out of [0,1]");
    }
  }
}

AccuracyTable parametric_curve(const std::vector<double>& by_count) {
  if (by_count.empty()) throw std::invalid_argument("parametric curve needs at least A(0)");
  AccuracyTable t;
  t.mode = AccuracyTable::Mode::ByCount;
  t.n_clients = static_cast<int>(by_count.size()) - 1;
  t.mean = by_count;
  t.stddev.assign(by_count.size(), 0.0);
  t.epochs = 0;
  t.validate();
  return t;
}

std::string accuracy_table_to_json(const AccuracyTable& table) {
  json j;
  j["mode"] = table.mode == AccuracyTable::Mode::ByCount ? "by_count" : "by_subset";
  j["n_clients"] = table.n_clients;
  j["epochs"] = table.epochs;
  j["seeds"] = table.seeds;
  j["config_hash"] = table.config_hash;
  json rows = json::array();
  if (table.mode == AccuracyTable::Mode::ByCount) {
    for (std::size_t k = 0; k < table.mean.size(); ++k) {
      rows.push_back({{"k", k},
                      {"mean", table.mean[k]},
                      {"std", k < table.stddev.size() ? table.stddev[k] : 0.0}});
    }
  } else {
    for (const auto& [mask, mean] : table.subset_mean) {
      const auto sit = table.subset_stddev.find(mask);
      rows.push_back({{"subset", mask},
                      {"mean", mean},
                      {"std", sit == table.subset_stddev.end() ? 0.0 : sit->second}});
    }
  }
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

AccuracyTable accuracy_table_from_json(const std::string& text) {
  AccuracyTable t;
  try {
    const json j = json::parse(text);
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "by_count") {
      t.mode = AccuracyTable::Mode::ByCount;
    } else if (mode == "by_subset") {
      t.mode = AccuracyTable::Mode::BySubset;
    } else {
      throw ParseError("accuracy table mode must be by_count or by_subset");
    }
    t.n_clients = j.at("n_clients").get<int>();
    t.epochs = j.value("epochs", 0);
    if (j.contains("seeds")) t.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    t.config_hash = j.value("config_hash", "");
    if (t.mode == AccuracyTable::Mode::ByCount) {
      t.mean.assign(j.at("rows").size(), 0.0);
      t.stddev.assign(j.at("rows").size(), 0.0);
      for (const auto& row : j.at("rows")) {
        const std::size_t k = row.at("k").get<std::size_t>();
        if (k >= t.mean.size()) throw ParseError("by-count rows must be contiguous from k = 0");
        t.mean[k] = row.at("mean").get<double>();
        t.stddev[k] = row.value("std", 0.0);
      }
    } else {
      for (const auto& row : j.at("rows")) {
        const ClientMask mask = row.at("subset").get<ClientMask>();
        t.subset_mean[mask] = row.at("mean").get<double>();
        t.subset_stddev[mask] = row.value("std", 0.0);
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("accuracy table: ") + e.what());
  }
  t.validate();
  return t;
}

void save_accuracy_table(const AccuracyTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GameError("cannot open " + path + " for writing");
  out << accuracy_table_to_json(table);
}

AccuracyTable load_accuracy_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream oss;
  oss << in.rdbuf();
  return accuracy_table_from_json(oss.str());
}

}  // namespace frgame
