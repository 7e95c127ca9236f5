#include <catch_amalgamated.hpp>

#include "cbo/problems.hpp"
#include "support.hpp"

using cbo::Point;
using namespace std::chrono_literals;

namespace {

std::string server(const std::string& args) { return std::string(CBO_SERVER_PATH) + " " + args; }

}  // namespace

TEST_CASE("handshake reports name, dim and x0") {
  const auto p = cbo::connect_remote(server("WATSON"));
  CHECK(p.name == "WATSON");
  CHECK(p.dim == 12);
  CHECK(p.x0 == cbo::watson().x0);
  CHECK(p.f_star == cbo::watson().f_star);
}

TEST_CASE("remote evaluation agrees with native evaluation") {
  const auto remote = cbo::connect_remote(server("non_sparse_quadratic"));
  const auto native = cbo::non_sparse_quadratic();
  CHECK(remote.f(Point::Ones(200)) == 200.0);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n;
  for (int t = 0; t < 100; ++t) {
    Point x(200);
    for (auto& v : x) v = n(rng);
    const double a = remote.f(x), b = native.f(x);
    REQUIRE(std::abs(a - b) <= 1e-12 * std::abs(b));
    REQUIRE((remote.grad(x) - native.grad(x)).norm() <= 1e-12 * native.grad(x).norm());
  }
}

TEST_CASE("remote gradient passes the finite-difference check") {
  const auto p = cbo::connect_remote(server("WATSON"));
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n;
  for (int t = 0; t < 20; ++t) {
    Point x(12);
    for (auto& v : x) v = 0.5 * n(rng);
    const Point g = p.grad(x);
    REQUIRE((g - testing::fd_gradient(p, x)).norm() <= 1e-5 * std::max(1.0, g.norm()));
  }
}

TEST_CASE("a silent server times out as a connection error") {
  const auto start = std::chrono::steady_clock::now();
  CHECK_THROWS_AS(cbo::connect_remote(server("ROSENBR --misbehave silent"), 300ms), cbo::ConnectionError);
  CHECK(std::chrono::steady_clock::now() - start < 5s);
}

TEST_CASE("a missing command is a connection error") {
  CHECK_THROWS_AS(cbo::connect_remote("/nonexistent/problem-server"), cbo::ConnectionError);
}

TEST_CASE("a malformed handshake is a connection error") {
  CHECK_THROWS_AS(cbo::connect_remote("echo '{\"name\":\"x\",\"dim\":2}'"), cbo::ConnectionError);
  CHECK_THROWS_AS(cbo::connect_remote("echo 'hello'"), cbo::ConnectionError);
  CHECK_THROWS_AS(cbo::connect_remote("echo '{\"name\":\"x\",\"dim\":3,\"x0\":[1,2]}'"), cbo::ConnectionError);
}

TEST_CASE("garbage replies are protocol errors") {
  const auto p = cbo::connect_remote(server("ROSENBR --misbehave garbage"));
  CHECK_THROWS_AS(p.f(Point::Zero(2)), cbo::ProtocolError);
}

TEST_CASE("mismatched ids are protocol errors") {
  const auto p = cbo::connect_remote(server("ROSENBR --misbehave wrong-id"));
  CHECK_THROWS_AS(p.f(Point::Zero(2)), cbo::ProtocolError);
}

TEST_CASE("error replies are protocol errors") {
  const auto p = cbo::connect_remote(server("ROSENBR --misbehave error"));
  CHECK_THROWS_AS(p.grad(Point::Zero(2)), cbo::ProtocolError);
}

TEST_CASE("a server exiting mid-run is a transport error") {
  const auto p = cbo::connect_remote(server("ROSENBR --misbehave exit-after=3"));
  for (int i = 0; i < 3; ++i) CHECK_NOTHROW(p.f(Point::Zero(2)));
  CHECK_THROWS_AS(p.f(Point::Zero(2)), cbo::TransportError);
}

TEST_CASE("copies share one connection that closes with the last copy") {
  auto p = cbo::connect_remote(server("ROSENBR"));
  {
    const auto copy = p;
    CHECK(copy.f(testing::vec({1, 1})) == 0.0);
  }
  CHECK(p.f(testing::vec({1, 1})) == 0.0);
}
