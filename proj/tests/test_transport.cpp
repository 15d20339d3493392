#include <doctest.h>

#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <chrono>
#include <thread>

#include "dph/socket_transport.hpp"
#include "dph/transport.hpp"

using namespace dph;

namespace {

// Grab a free TCP port from the kernel. Racy in principle, fine for tests.
int free_port() {
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  REQUIRE(fd >= 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = 0;
  REQUIRE(::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) == 0);
  socklen_t len = sizeof(addr);
  REQUIRE(::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len) == 0);
  int port = ntohs(addr.sin_port);
  ::close(fd);
  return port;
}

std::vector<std::string> loopback_endpoints(int count) {
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i)
    out.push_back("127.0.0.1:" + std::to_string(free_port()));
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("transport");

TEST_CASE("package_channel is a blocking capacity-1 slot") {
  package_channel channel;
  std::atomic<int> puts_done{0};
  std::thread producer([&] {
    channel.put(make_package(1, {}));
    puts_done = 1;
    channel.put(make_package(2, {}));   // must block until the first is taken
    puts_done = 2;
  });
  while (puts_done.load() < 1) std::this_thread::yield();
  std::this_thread::sleep_for(std::chrono::milliseconds(50));
  CHECK(puts_done.load() == 1);   // second put still parked

  package first = channel.take();
  CHECK(first.column_range == 1);
  package second = channel.take();
  CHECK(second.column_range == 2);
  producer.join();
  CHECK(puts_done.load() == 2);
}

TEST_CASE("poisoning a channel releases blocked peers") {
  package_channel channel;
  std::thread consumer([&] { CHECK_THROWS_AS(channel.take(), transport_error); });
  std::this_thread::sleep_for(std::chrono::milliseconds(20));
  channel.poison();
  consumer.join();
  CHECK_THROWS_AS(channel.put(make_package(1, {})), transport_error);
}

TEST_CASE("pipeline edges exist only where Algorithm 2 needs them") {
  package_channel c;
  in_process_transport node1(nullptr, &c);
  in_process_transport node2(&c, nullptr);
  CHECK_THROWS_AS(node1.send_to_prev(make_package(1, {})), std::logic_error);
  CHECK_THROWS_AS(node2.receive_from_next(), std::logic_error);
}

TEST_CASE("socket transport delivers packages with rendezvous acks") {
  range_partition part = make_partition(10, 2);
  auto endpoints = loopback_endpoints(2);

  std::thread rank2([&] {
    socket_transport t(2, part, endpoints);
    work_set ws;
    ws.push_back({7, 1, {2, 5}});
    t.send_to_prev(make_package(2, std::move(ws)));
    node_result nr;
    nr.id = 2;
    nr.pairs.push_back({6, 7, 1});
    nr.metrics.messages_to[1] = 1;
    nr.metrics.bytes_to[1] = 48;
    t.send_result(nr);
  });

  socket_transport t(1, part, endpoints);
  package pkg = t.receive_from_next();
  CHECK(pkg.column_range == 2);
  REQUIRE(pkg.columns.size() == 1);
  CHECK(pkg.columns[0].index == 7);
  CHECK(pkg.columns[0].rows == column{2, 5});
  CHECK(pkg.byte_size == encoded_package_size(pkg));

  node_result nr = t.receive_result();
  CHECK(nr.id == 2);
  REQUIRE(nr.pairs.size() == 1);
  CHECK(nr.pairs[0] == persistence_pair{6, 7, 1});
  CHECK(nr.metrics.messages_to.at(1) == 1);
  rank2.join();
}

TEST_CASE("handshake rejects a partition disagreement") {
  auto endpoints = loopback_endpoints(2);
  range_partition part_a = make_partition(10, 2);
  range_partition part_b = make_partition(12, 2);

  std::thread rank2([&] {
    try {
      socket_transport t(2, part_b, endpoints);
      FAIL("expected protocol_error");
    } catch (const protocol_error&) {
    } catch (const transport_error&) {
      // The peer may slam the connection first; either error is a rejection.
    }
  });
  try {
    socket_transport t(1, part_a, endpoints);
    FAIL("expected protocol_error");
  } catch (const protocol_error&) {
  } catch (const transport_error&) {
  }
  rank2.join();
}

TEST_SUITE_END();
