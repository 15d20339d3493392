#include "dph/socket_transport.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <thread>

#include "wire.hpp"

namespace dph {

namespace {

constexpr std::byte ack_byte{0x06};
constexpr auto dial_deadline = std::chrono::seconds(30);

[[noreturn]] void fail_errno(const std::string& what) {
  throw transport_error(what + ": " + std::strerror(errno));
}

void split_endpoint(const std::string& endpoint, std::string& host, std::string& port) {
  auto colon = endpoint.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == endpoint.size())
    throw transport_error("malformed endpoint '" + endpoint + "', expected host:port");
  host = endpoint.substr(0, colon);
  port = endpoint.substr(colon + 1);
}

void write_all(int fd, const void* data, std::size_t size) {
  const char* p = static_cast<const char*>(data);
  while (size > 0) {
    ssize_t w = ::write(fd, p, size);
    if (w < 0) {
      if (errno == EINTR) continue;
      fail_errno("socket write failed");
    }
    p += w;
    size -= static_cast<std::size_t>(w);
  }
}

void read_all(int fd, void* data, std::size_t size) {
  char* p = static_cast<char*>(data);
  while (size > 0) {
    ssize_t r = ::read(fd, p, size);
    if (r == 0) throw transport_error("peer disconnected");
    if (r < 0) {
      if (errno == EINTR) continue;
      fail_errno("socket read failed");
    }
    p += r;
    size -= static_cast<std::size_t>(r);
  }
}

void configure(int fd) {
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  timeval tv{};
  tv.tv_sec = 300;
  ::setsockopt(fd, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));
  ::setsockopt(fd, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof(tv));
}

int listen_on(const std::string& endpoint) {
  std::string host, port;
  split_endpoint(endpoint, host, port);
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  hints.ai_flags = AI_PASSIVE;
  addrinfo* res = nullptr;
  if (int rc = ::getaddrinfo(nullptr, port.c_str(), &hints, &res); rc != 0)
    throw transport_error("cannot resolve listen port " + port + ": " + gai_strerror(rc));
  int fd = -1;
  for (addrinfo* ai = res; ai != nullptr; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    if (::bind(fd, ai->ai_addr, ai->ai_addrlen) == 0 && ::listen(fd, 1) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0) throw transport_error("cannot listen on " + endpoint);
  return fd;
}

int dial(const std::string& endpoint) {
  std::string host, port;
  split_endpoint(endpoint, host, port);
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  auto deadline = std::chrono::steady_clock::now() + dial_deadline;
  while (true) {
    addrinfo* res = nullptr;
    if (int rc = ::getaddrinfo(host.c_str(), port.c_str(), &hints, &res); rc != 0)
      throw transport_error("cannot resolve " + endpoint + ": " + gai_strerror(rc));
    for (addrinfo* ai = res; ai != nullptr; ai = ai->ai_next) {
      int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
      if (fd < 0) continue;
      if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
        ::freeaddrinfo(res);
        return fd;
      }
      ::close(fd);
    }
    ::freeaddrinfo(res);
    if (std::chrono::steady_clock::now() > deadline)
      throw transport_error("timed out dialing " + endpoint);
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
}

std::vector<std::byte> encode_handshake(int rank, const range_partition& partition) {
  std::vector<std::byte> out;
  wire::put_magic(out, "DHSK");
  wire::put_u16(out, wire_version);
  wire::put_u64(out, static_cast<std::uint64_t>(partition.count()));
  wire::put_u64(out, static_cast<std::uint64_t>(rank));
  wire::put_u64(out, static_cast<std::uint64_t>(partition.n()));
  for (index_t b : partition.bounds) wire::put_u64(out, static_cast<std::uint64_t>(b));
  return out;
}

void check_handshake(std::span<const std::byte> frame, int expected_sender,
                     const range_partition& partition) {
  wire::reader r{frame};
  r.expect_magic("DHSK");
  std::uint16_t version = r.u16("handshake version");
  if (version != wire_version)
    throw protocol_error("protocol version mismatch: peer speaks " + std::to_string(version) +
                         ", this node speaks " + std::to_string(wire_version));
  std::uint64_t p = r.u64("handshake node count");
  std::uint64_t sender = r.u64("handshake sender");
  std::uint64_t n = r.u64("handshake cell count");
  if (p != static_cast<std::uint64_t>(partition.count()) ||
      n != static_cast<std::uint64_t>(partition.n()))
    throw protocol_error("handshake mismatch: peers disagree on (p, n)");
  if (sender != static_cast<std::uint64_t>(expected_sender))
    throw protocol_error("handshake from rank " + std::to_string(sender) + ", expected " +
                         std::to_string(expected_sender));
  for (index_t b : partition.bounds)
    if (r.u64("handshake bound") != static_cast<std::uint64_t>(b))
      throw protocol_error("handshake mismatch: peers disagree on the partition");
  r.finish();
}

std::vector<std::byte> encode_result(const node_result& nr) {
  std::vector<std::byte> out;
  wire::put_magic(out, "DRES");
  wire::put_u16(out, wire_version);
  wire::put_u64(out, static_cast<std::uint64_t>(nr.id));
  wire::put_u64(out, nr.pairs.size());
  for (const persistence_pair& p : nr.pairs) {
    wire::put_u64(out, static_cast<std::uint64_t>(p.birth));
    wire::put_u64(out, static_cast<std::uint64_t>(p.death));
    wire::put_u16(out, static_cast<std::uint16_t>(p.dim));
  }
  wire::put_u64(out, nr.zeroed.size());
  for (index_t z : nr.zeroed) wire::put_u64(out, static_cast<std::uint64_t>(z));
  wire::put_u64(out, nr.cleared.size());
  for (index_t c : nr.cleared) wire::put_u64(out, static_cast<std::uint64_t>(c));
  wire::put_u64(out, nr.metrics.messages_to.size());
  for (const auto& [dest, count] : nr.metrics.messages_to) {
    wire::put_u64(out, static_cast<std::uint64_t>(dest));
    wire::put_u64(out, count);
    wire::put_u64(out, nr.metrics.bytes_to.at(dest));
  }
  wire::put_u64(out, nr.metrics.max_package_bytes);
  wire::put_u64(out, nr.metrics.peak_resident_columns);
  return out;
}

node_result decode_result(std::span<const std::byte> frame) {
  wire::reader r{frame};
  r.expect_magic("DRES");
  if (r.u16("result version") != wire_version) r.fail("unsupported result version");
  node_result nr;
  nr.id = static_cast<int>(r.u64("result node id"));
  std::uint64_t pairs = r.u64("result pair count");
  nr.pairs.reserve(static_cast<std::size_t>(pairs));
  for (std::uint64_t k = 0; k < pairs; ++k) {
    persistence_pair p;
    p.birth = static_cast<index_t>(r.u64("pair birth"));
    p.death = static_cast<index_t>(r.u64("pair death"));
    p.dim = static_cast<dim_t>(r.u16("pair dim"));
    nr.pairs.push_back(p);
  }
  std::uint64_t zeroed = r.u64("zero-report count");
  for (std::uint64_t k = 0; k < zeroed; ++k)
    nr.zeroed.push_back(static_cast<index_t>(r.u64("zero-report index")));
  std::uint64_t cleared = r.u64("cleared count");
  for (std::uint64_t k = 0; k < cleared; ++k)
    nr.cleared.push_back(static_cast<index_t>(r.u64("cleared index")));
  std::uint64_t dests = r.u64("metrics edge count");
  for (std::uint64_t k = 0; k < dests; ++k) {
    int dest = static_cast<int>(r.u64("metrics dest"));
    nr.metrics.messages_to[dest] = r.u64("metrics messages");
    nr.metrics.bytes_to[dest] = r.u64("metrics bytes");
  }
  nr.metrics.max_package_bytes = r.u64("metrics max package");
  nr.metrics.peak_resident_columns = r.u64("metrics peak columns");
  r.finish();
  return nr;
}

}  // namespace

socket_transport::socket_transport(int rank, const range_partition& partition,
                                   const std::vector<std::string>& endpoints)
    : rank_(rank), nodes_(partition.count()) {
  if (static_cast<int>(endpoints.size()) != nodes_)
    throw transport_error("expected " + std::to_string(nodes_) + " endpoints, got " +
                          std::to_string(endpoints.size()));
  int listen_fd = -1;
  if (rank_ < nodes_)
    listen_fd = listen_on(endpoints[static_cast<std::size_t>(rank_ - 1)]);

  if (rank_ > 1) {
    fd_prev_ = dial(endpoints[static_cast<std::size_t>(rank_ - 2)]);
    configure(fd_prev_);
    send_frame(fd_prev_, encode_handshake(rank_, partition));
    check_handshake(receive_frame(fd_prev_), rank_ - 1, partition);
  }
  if (rank_ < nodes_) {
    fd_next_ = ::accept(listen_fd, nullptr, nullptr);
    if (fd_next_ < 0) fail_errno("accept failed");
    ::close(listen_fd);
    configure(fd_next_);
    check_handshake(receive_frame(fd_next_), rank_ + 1, partition);
    send_frame(fd_next_, encode_handshake(rank_, partition));
  }
}

socket_transport::~socket_transport() {
  if (fd_prev_ >= 0) ::close(fd_prev_);
  if (fd_next_ >= 0) ::close(fd_next_);
}

void socket_transport::send_frame(int fd, const std::vector<std::byte>& frame) {
  std::uint64_t size = frame.size();
  write_all(fd, &size, sizeof(size));
  write_all(fd, frame.data(), frame.size());
}

std::vector<std::byte> socket_transport::receive_frame(int fd) {
  std::uint64_t size = 0;
  read_all(fd, &size, sizeof(size));
  if (size > (std::uint64_t(1) << 40)) throw transport_error("oversized frame announced");
  std::vector<std::byte> frame(static_cast<std::size_t>(size));
  read_all(fd, frame.data(), frame.size());
  return frame;
}

void socket_transport::send_to_prev(package&& pkg) {
  if (fd_prev_ < 0) throw std::logic_error("socket_transport: node 1 never sends");
  std::vector<std::byte> frame = encode_package(pkg);
  send_frame(fd_prev_, frame);
  // The ack closes the rendezvous: the package is out of our hands only once
  // the receiver has taken it.
  std::byte ack{};
  read_all(fd_prev_, &ack, 1);
  if (ack != ack_byte) throw protocol_error("bad acknowledgment byte");
}

package socket_transport::receive_from_next() {
  if (fd_next_ < 0) throw std::logic_error("socket_transport: node p never receives");
  std::vector<std::byte> frame = receive_frame(fd_next_);
  package pkg = decode_package(frame);
  write_all(fd_next_, &ack_byte, 1);
  return pkg;
}

void socket_transport::send_result(const node_result& result) {
  if (fd_prev_ < 0) throw std::logic_error("socket_transport: node 1 never sends");
  send_frame(fd_prev_, encode_result(result));
  std::byte ack{};
  read_all(fd_prev_, &ack, 1);
  if (ack != ack_byte) throw protocol_error("bad acknowledgment byte");
}

node_result socket_transport::receive_result() {
  if (fd_next_ < 0) throw std::logic_error("socket_transport: node p never receives");
  std::vector<std::byte> frame = receive_frame(fd_next_);
  node_result nr = decode_result(frame);
  write_all(fd_next_, &ack_byte, 1);
  return nr;
}

socket_run_outcome run_socket_node(int rank, const std::vector<std::string>& endpoints,
                                   const range_partition& partition,
                                   column_provider& provider, std::span<const dim_t> dims) {
  const int p = partition.count();
  if (rank < 1 || rank > p)
    throw std::invalid_argument("rank must lie in [1, p]");

  socket_transport transport(rank, partition, endpoints);
  node_config cfg;
  cfg.id = rank;
  cfg.partition = partition;
  node_output out = run_node(cfg, provider, transport);
  node_result own = summarize(out, dims);

  socket_run_outcome outcome;
  if (rank > 1) {
    transport.send_result(own);
    for (int k = 0; k < p - rank; ++k) transport.send_result(transport.receive_result());
    return outcome;
  }
  outcome.coordinator = true;
  outcome.nodes.push_back(std::move(own));
  for (int k = 0; k < p - 1; ++k) outcome.nodes.push_back(transport.receive_result());
  std::sort(outcome.nodes.begin(), outcome.nodes.end(),
            [](const node_result& a, const node_result& b) { return a.id < b.id; });
  outcome.merged = gather_results(partition, outcome.nodes, dims);
  return outcome;
}

}  // namespace dph
