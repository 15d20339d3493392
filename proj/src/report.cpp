#include "dph/report.hpp"

#include <fstream>

#include <json.hpp>

namespace dph {

metrics_totals summarize_metrics(std::span<const node_result> nodes) {
  metrics_totals t;
  for (const node_result& nr : nodes) {
    std::uint64_t edge = 0;
    for (const auto& [dest, count] : nr.metrics.messages_to) t.messages += count;
    for (const auto& [dest, bytes] : nr.metrics.bytes_to) {
      t.bytes += bytes;
      edge = std::max(edge, bytes);
    }
    t.max_edge_bytes = std::max(t.max_edge_bytes, edge);
    t.max_package_bytes = std::max(t.max_package_bytes, nr.metrics.max_package_bytes);
    t.max_peak_resident_columns =
        std::max(t.max_peak_resident_columns, nr.metrics.peak_resident_columns);
  }
  return t;
}

void write_metrics_report(const std::string& path, const std::string& mode, index_t cells,
                          dim_t max_dim, std::span<const node_result> nodes) {
  nlohmann::ordered_json doc;
  doc["format"] = "dph-metrics";
  doc["version"] = 1;
  doc["mode"] = mode;
  doc["nodes"] = nodes.size();
  doc["cells"] = cells;
  doc["max_dim"] = max_dim;

  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const node_result& nr : nodes) {
    nlohmann::ordered_json row;
    row["node"] = nr.id;
    nlohmann::ordered_json sent = nlohmann::ordered_json::array();
    for (const auto& [dest, count] : nr.metrics.messages_to) {
      nlohmann::ordered_json edge;
      edge["to"] = dest;
      edge["messages"] = count;
      edge["bytes"] = nr.metrics.bytes_to.at(dest);
      sent.push_back(edge);
    }
    row["sent"] = sent;
    row["max_package_bytes"] = nr.metrics.max_package_bytes;
    row["peak_resident_columns"] = nr.metrics.peak_resident_columns;
    rows.push_back(row);
  }
  doc["per_node"] = rows;

  metrics_totals t = summarize_metrics(nodes);
  nlohmann::ordered_json totals;
  totals["messages"] = t.messages;
  totals["bytes"] = t.bytes;
  totals["max_edge_bytes"] = t.max_edge_bytes;
  totals["max_package_bytes"] = t.max_package_bytes;
  totals["max_peak_resident_columns"] = t.max_peak_resident_columns;
  doc["totals"] = totals;

  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw std::runtime_error("cannot write " + path);
}

metrics_report read_metrics_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json doc = nlohmann::json::parse(in);
  if (doc.value("format", "") != "dph-metrics")
    throw std::runtime_error(path + ": not a dph metrics report");

  metrics_report rep;
  rep.mode = doc.value("mode", "");
  rep.nodes = doc.value("nodes", 0);
  rep.cells = doc.value("cells", index_t(0));
  rep.totals.messages = doc["totals"].value("messages", std::uint64_t(0));
  rep.totals.bytes = doc["totals"].value("bytes", std::uint64_t(0));
  rep.totals.max_edge_bytes = doc["totals"].value("max_edge_bytes", std::uint64_t(0));
  rep.totals.max_package_bytes = doc["totals"].value("max_package_bytes", std::uint64_t(0));
  rep.totals.max_peak_resident_columns =
      doc["totals"].value("max_peak_resident_columns", std::uint64_t(0));
  for (const auto& row : doc["per_node"]) {
    metrics_ledger ledger;
    for (const auto& edge : row["sent"]) {
      int to = edge.value("to", 0);
      ledger.messages_to[to] = edge.value("messages", std::uint64_t(0));
      ledger.bytes_to[to] = edge.value("bytes", std::uint64_t(0));
    }
    ledger.max_package_bytes = row.value("max_package_bytes", std::uint64_t(0));
    ledger.peak_resident_columns = row.value("peak_resident_columns", std::uint64_t(0));
    rep.per_node.emplace_back(row.value("node", 0), std::move(ledger));
  }
  return rep;
}

}  // namespace dph
