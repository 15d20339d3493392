// dph: persistence pairs of filtered cell complexes, sequentially or by
// blockwise reduction across communicating nodes.

#include <array>
#include <cstring>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dph/cubical.hpp"
#include "dph/matrix_io.hpp"
#include "dph/pairs_io.hpp"
#include "dph/reduce.hpp"
#include "dph/report.hpp"
#include "dph/runtime.hpp"
#include "dph/socket_transport.hpp"

namespace {

using namespace dph;

bool has_dbnd_magic(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  char magic[4] = {0, 0, 0, 0};
  in.read(magic, 4);
  return in && std::memcmp(magic, "DBND", 4) == 0;
}

struct loaded_input {
  boundary_matrix matrix;
  std::vector<double> values;   // empty for DBND inputs
  bool from_image = false;
};

loaded_input load_input(const std::string& path, std::optional<int> max_dim) {
  loaded_input in;
  if (has_dbnd_magic(path)) {
    in.matrix = read_matrix(path);
  } else {
    image3d img = read_image(path);
    cubical_filtration f = build_cubical(img);
    in.matrix = std::move(f.matrix);
    in.values = std::move(f.values);
    in.from_image = true;
  }
  if (max_dim) {
    cubical_filtration f;
    f.matrix = std::move(in.matrix);
    f.values = in.values.empty()
                   ? std::vector<double>(static_cast<std::size_t>(f.matrix.size()), 0.0)
                   : std::move(in.values);
    truncate_to_max_dim(f, static_cast<dim_t>(*max_dim));
    in.matrix = std::move(f.matrix);
    if (in.from_image) in.values = std::move(f.values);
  }
  if (auto violation = validate(in.matrix)) {
    throw std::runtime_error("invalid boundary matrix: " + violation->reason + " at (" +
                             std::to_string(violation->row) + ", " +
                             std::to_string(violation->col) + ")");
  }
  return in;
}

std::string default_metrics_path(const std::string& output, const std::string& metrics_out) {
  return metrics_out.empty() ? output + ".metrics.json" : metrics_out;
}

int cmd_generate(const std::vector<std::int64_t>& extents, std::uint64_t seed, double exponent,
                 const std::string& output) {
  image3d img = generate_image({extents[0], extents[1], extents[2]}, seed, exponent);
  write_image(img, output);
  return 0;
}

int cmd_convert(const std::string& input, const std::string& output,
                const std::string& values_out, std::optional<int> max_dim) {
  image3d img = read_image(input);
  cubical_filtration f = build_cubical(img);
  if (max_dim) truncate_to_max_dim(f, static_cast<dim_t>(*max_dim));
  write_matrix(f.matrix, output);
  if (!values_out.empty()) write_values(f.values, values_out);
  return 0;
}

int cmd_compute(const std::string& mode, const std::string& input, const std::string& output,
                int nodes, int rank, const std::vector<std::string>& peers,
                const std::string& metrics_out, const std::string& values_out,
                pairs_format fmt, std::optional<int> max_dim) {
  if (mode == "dist-sockets") {
    // Ranks share the command line apart from --rank; only rank 1 writes.
    range_partition partition;
    std::unique_ptr<column_provider> provider;
    std::vector<dim_t> dims;
    std::vector<double> values;
    if (has_dbnd_magic(input) && !max_dim) {
      auto file_provider = std::make_unique<dbnd_provider>(input, 0, 0);
      partition = make_partition(file_provider->cell_count(), nodes);
      dims = file_provider->dims();
      provider = std::make_unique<dbnd_provider>(input, partition.lower(rank),
                                                 partition.upper(rank));
    } else {
      auto in = std::make_shared<loaded_input>(load_input(input, max_dim));
      partition = make_partition(in->matrix.size(), nodes);
      dims = in->matrix.dims;
      values = std::move(in->values);
      struct owning_provider final : column_provider {
        std::shared_ptr<loaded_input> hold;
        memory_provider inner;
        owning_provider(std::shared_ptr<loaded_input> h, index_t lo, index_t hi)
            : hold(std::move(h)), inner(hold->matrix, lo, hi) {}
        index_t cell_count() const override { return inner.cell_count(); }
        dim_t max_dimension() const override { return inner.max_dimension(); }
        work_set load_dimension(dim_t d) override { return inner.load_dimension(d); }
      };
      provider = std::make_unique<owning_provider>(in, partition.lower(rank),
                                                   partition.upper(rank));
    }

    socket_run_outcome outcome = run_socket_node(rank, peers, partition, *provider, dims);
    if (!outcome.coordinator) return 0;
    write_pairs({outcome.merged.pairs, outcome.merged.essentials}, output, fmt);
    write_metrics_report(default_metrics_path(output, metrics_out), "dist-sockets",
                         partition.n(), dims.empty() ? dim_t(0) : provider->max_dimension(),
                         outcome.nodes);
    if (!values_out.empty()) {
      if (values.empty())
        throw std::runtime_error("--values-out requires an image input");
      write_values(values, values_out);
    }
    return 0;
  }

  loaded_input in = load_input(input, max_dim);
  if (!values_out.empty()) {
    if (!in.from_image) throw std::runtime_error("--values-out requires an image input");
    write_values(in.values, values_out);
  }

  if (mode == "sequential") {
    reduction_result res = twist_reduce(std::move(in.matrix));
    write_pairs({res.pairs, res.essentials}, output, fmt);
    node_result only;
    only.id = 1;
    only.metrics.peak_resident_columns = static_cast<std::uint64_t>(res.reduced.size());
    std::vector<node_result> rows{only};
    write_metrics_report(default_metrics_path(output, metrics_out), "sequential",
                         res.reduced.size(), res.reduced.max_dim(), rows);
    return 0;
  }
  if (mode == "dist") {
    distributed_result res = run_in_process(in.matrix, nodes);
    write_pairs({res.merged.pairs, res.merged.essentials}, output, fmt);
    write_metrics_report(default_metrics_path(output, metrics_out), "dist", in.matrix.size(),
                         in.matrix.max_dim(), res.nodes);
    return 0;
  }
  throw std::runtime_error("unknown mode '" + mode + "'");
}

struct value_mapper {
  const std::vector<double>* values = nullptr;

  double at(index_t k) const {
    if (values == nullptr || k < 1 || k > static_cast<index_t>(values->size()))
      throw std::runtime_error("pair index " + std::to_string(k) +
                               " has no filtration value (check --values)");
    return (*values)[static_cast<std::size_t>(k - 1)];
  }
};

int cmd_verify(const std::string& path_a, const std::string& path_b, const std::string& mode,
               const std::string& values_both, const std::string& values_a_path,
               const std::string& values_b_path) {
  pairs_file a = read_pairs(path_a);
  pairs_file b = read_pairs(path_b);

  if (mode == "index") {
    if (a.pairs == b.pairs && a.essentials == b.essentials) {
      std::cout << "match\n";
      return 0;
    }
    // Report the first differing record in canonical order.
    auto mismatch_pair = std::mismatch(a.pairs.begin(), a.pairs.end(), b.pairs.begin(),
                                       b.pairs.end());
    if (mismatch_pair.first != a.pairs.end() || mismatch_pair.second != b.pairs.end()) {
      auto describe = [](auto it, auto end, const std::string& name) {
        if (it == end) return name + " has no further pairs";
        return name + " has (" + std::to_string(it->dim) + ", " + std::to_string(it->birth) +
               ", " + std::to_string(it->death) + ")";
      };
      std::cerr << "pairs differ: " << describe(mismatch_pair.first, a.pairs.end(), path_a)
                << "; " << describe(mismatch_pair.second, b.pairs.end(), path_b) << "\n";
    } else {
      std::cerr << "essential classes differ\n";
    }
    return 1;
  }
  if (mode != "value") throw std::runtime_error("unknown verify mode '" + mode + "'");

  std::vector<double> va, vb;
  if (!values_both.empty()) {
    va = read_values(values_both);
    vb = va;
  }
  if (!values_a_path.empty()) va = read_values(values_a_path);
  if (!values_b_path.empty()) vb = read_values(values_b_path);
  if (va.empty() || vb.empty())
    throw std::runtime_error("value mode needs --values or --values-a/--values-b");

  auto to_multiset = [](const pairs_file& pf, const std::vector<double>& vals) {
    value_mapper m{&vals};
    std::vector<std::tuple<dim_t, double, double, bool>> out;   // dim, birth, death, finite
    for (const persistence_pair& p : pf.pairs)
      out.emplace_back(p.dim, m.at(p.birth), m.at(p.death), true);
    for (const essential_class& e : pf.essentials)
      out.emplace_back(e.dim, m.at(e.index), 0.0, false);
    std::sort(out.begin(), out.end());
    return out;
  };
  auto ma = to_multiset(a, va);
  auto mb = to_multiset(b, vb);
  if (ma == mb) {
    std::cout << "match\n";
    return 0;
  }
  auto diff = std::mismatch(ma.begin(), ma.end(), mb.begin(), mb.end());
  auto describe = [](auto it, auto end, const std::string& name) {
    if (it == end) return name + " has no further records";
    auto [dim, birth, death, finite] = *it;
    return name + " has (dim " + std::to_string(dim) + ", birth " + std::to_string(birth) +
           ", death " + (finite ? std::to_string(death) : std::string("inf")) + ")";
  };
  std::cerr << "value multisets differ: " << describe(diff.first, ma.end(), path_a) << "; "
            << describe(diff.second, mb.end(), path_b) << "\n";
  return 1;
}

int cmd_report(const std::vector<std::string>& paths) {
  std::printf("%-28s %-13s %5s %10s %9s %12s %14s %12s %10s\n", "report", "mode", "nodes",
              "cells", "messages", "total-bytes", "max-edge-bytes", "max-package",
              "peak-cols");
  for (const std::string& path : paths) {
    metrics_report rep = read_metrics_report(path);
    std::printf("%-28s %-13s %5d %10lld %9llu %12llu %14llu %12llu %10llu\n", path.c_str(),
                rep.mode.c_str(), rep.nodes, static_cast<long long>(rep.cells),
                static_cast<unsigned long long>(rep.totals.messages),
                static_cast<unsigned long long>(rep.totals.bytes),
                static_cast<unsigned long long>(rep.totals.max_edge_bytes),
                static_cast<unsigned long long>(rep.totals.max_package_bytes),
                static_cast<unsigned long long>(rep.totals.max_peak_resident_columns));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distributed persistent homology by blockwise boundary-matrix reduction"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand("generate", "synthesize a random-field 3D image");
  std::vector<std::int64_t> extents;
  std::uint64_t seed = 1;
  double exponent = 2.0;
  std::string gen_output;
  generate->add_option("--extents", extents, "voxel counts (X Y Z)")
      ->expected(3)
      ->required();
  generate->add_option("--seed", seed, "RNG seed");
  generate->add_option("--exponent", exponent, "spectral power-law exponent p");
  generate->add_option("--output,-o", gen_output, "output image path")->required();

  // convert
  auto* convert = app.add_subcommand("convert", "build the cubical boundary matrix of an image");
  std::string conv_input, conv_output, conv_values;
  std::optional<int> conv_max_dim;
  convert->add_option("--input", conv_input, "raw image input")->required();
  convert->add_option("--output", conv_output, "DBND output path")->required();
  convert->add_option("--values-out", conv_values, "filtration values sidecar (DVAL)");
  convert->add_option("--max-dim", conv_max_dim, "drop cells above this dimension");

  // compute
  auto* compute = app.add_subcommand("compute", "compute persistence pairs");
  std::string comp_mode = "sequential";
  std::string comp_input, comp_output, comp_metrics, comp_values;
  std::string comp_format = "text";
  std::vector<std::string> peers;
  std::optional<int> comp_max_dim;
  int nodes = 1;
  int rank = 1;
  compute->add_option("--mode", comp_mode, "sequential | dist | dist-sockets")
      ->check(CLI::IsMember({"sequential", "dist", "dist-sockets"}));
  compute->add_option("--input", comp_input, "DBND matrix or raw image")->required();
  compute->add_option("--output", comp_output, "pairs output path")->required();
  compute->add_option("--nodes", nodes, "node count p");
  compute->add_option("--rank", rank, "this node's id (dist-sockets)");
  compute->add_option("--peers", peers, "host:port per rank, in rank order")
      ->delimiter(',');
  compute->add_option("--metrics-out", comp_metrics, "metrics report path");
  compute->add_option("--values-out", comp_values, "filtration values sidecar (image inputs)");
  compute->add_option("--pairs-format", comp_format, "text | binary")
      ->check(CLI::IsMember({"text", "binary"}));
  compute->add_option("--max-dim", comp_max_dim, "drop cells above this dimension");

  // verify
  auto* verify = app.add_subcommand("verify", "compare two pairs files");
  std::string verify_a, verify_b, verify_mode = "index";
  std::string verify_values, verify_values_a, verify_values_b;
  verify->add_option("pairs_a", verify_a)->required();
  verify->add_option("pairs_b", verify_b)->required();
  verify->add_option("--verify-mode", verify_mode, "index | value")
      ->check(CLI::IsMember({"index", "value"}));
  verify->add_option("--values", verify_values, "DVAL file for both sides");
  verify->add_option("--values-a", verify_values_a, "DVAL file for pairs_a");
  verify->add_option("--values-b", verify_values_b, "DVAL file for pairs_b");

  // report
  auto* report = app.add_subcommand("report", "print metrics reports as a table");
  std::vector<std::string> report_paths;
  report->add_option("metrics", report_paths)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      for (std::int64_t e : extents)
        if (e < 1) throw CLI::ValidationError("--extents", "extents must be at least 1");
      return cmd_generate(extents, seed, exponent, gen_output);
    }
    if (convert->parsed()) return cmd_convert(conv_input, conv_output, conv_values, conv_max_dim);
    if (compute->parsed()) {
      if (nodes < 1) throw CLI::ValidationError("--nodes", "node count must be at least 1");
      pairs_format fmt = comp_format == "binary" ? pairs_format::binary : pairs_format::text;
      return cmd_compute(comp_mode, comp_input, comp_output, nodes, rank, peers, comp_metrics,
                         comp_values, fmt, comp_max_dim);
    }
    if (verify->parsed())
      return cmd_verify(verify_a, verify_b, verify_mode, verify_values, verify_values_a,
                        verify_values_b);
    if (report->parsed()) return cmd_report(report_paths);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
