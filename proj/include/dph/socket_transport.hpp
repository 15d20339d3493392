#pragma once

#include <string>
#include <vector>

#include "dph/node.hpp"

namespace dph {

// TCP pipeline edges for one rank of a multi-process deployment. endpoints
// holds the host:port of every rank in order (rank i listens on entry i-1).
// Rank i accepts one connection from rank i+1 and dials rank i-1; each
// connection starts with a handshake frame carrying (protocol version, p,
// sender rank, n, partition bounds), and any disagreement aborts the run.
// Packages travel as u64-length-prefixed DPKG frames; a send completes only
// after the receiver's acknowledgment byte, which keeps the blocking
// one-package-in-flight rule of the in-process transport.
class socket_transport final : public node_transport {
 public:
  socket_transport(int rank, const range_partition& partition,
                   const std::vector<std::string>& endpoints);
  ~socket_transport() override;

  socket_transport(const socket_transport&) = delete;
  socket_transport& operator=(const socket_transport&) = delete;

  void send_to_prev(package&& pkg) override;
  package receive_from_next() override;

  // Post-loop result chaining along the same edges (DRES frames).
  void send_result(const node_result& result);
  node_result receive_result();

 private:
  void send_frame(int fd, const std::vector<std::byte>& frame);
  std::vector<std::byte> receive_frame(int fd);

  int rank_;
  int nodes_;
  int fd_prev_ = -1;   // to rank-1: we send
  int fd_next_ = -1;   // from rank+1: we receive
};

struct socket_run_outcome {
  bool coordinator = false;            // true on rank 1
  gathered_result merged;              // coordinator only
  std::vector<node_result> nodes;      // coordinator only, ordered by id
};

// Runs one rank of Algorithm 2 over sockets; rank 1 gathers everything.
socket_run_outcome run_socket_node(int rank, const std::vector<std::string>& endpoints,
                                   const range_partition& partition,
                                   column_provider& provider, std::span<const dim_t> dims);

}  // namespace dph
