// Serves a native problem over the newline-delimited JSON problem protocol on
// stdin/stdout. Used to exercise the remote-problem client without a bridge.
//
//   cbo_problem_server NAME [--misbehave MODE]
//
// MODE is one of: silent (never answers the handshake), garbage (answers
// evaluations with a non-JSON line), exit-after=N (exits after N evaluations),
// wrong-id (echoes an id off by one), error (replies with an error object).

#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include "cbo/problems.hpp"
#include "json.hpp"

using nlohmann::json;

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cbo_problem_server NAME [--misbehave MODE]\n";
    return 2;
  }
  const auto problem = cbo::find_builtin(argv[1]);
  if (!problem) {
    std::cerr << "unknown problem " << argv[1] << "\n";
    return 2;
  }
  std::string mode;
  if (argc >= 4 && std::string(argv[2]) == "--misbehave") mode = argv[3];
  long exit_after = -1;
  if (mode.rfind("exit-after=", 0) == 0) exit_after = std::strtol(mode.c_str() + 11, nullptr, 10);

  long evaluations = 0;
  for (std::string line; std::getline(std::cin, line);) {
    json req;
    try {
      req = json::parse(line);
    } catch (const json::parse_error&) {
      std::cout << json{{"error", "unparseable request"}}.dump() << std::endl;
      continue;
    }
    const std::string op = req.value("op", "");
    if (op == "shutdown") return 0;
    if (op == "info") {
      if (mode == "silent") {
        std::this_thread::sleep_for(std::chrono::hours(1));
        return 0;
      }
      const cbo::Point& x0 = problem->x0;
      std::cout << json{{"name", problem->name},
                        {"dim", problem->dim},
                        {"x0", std::vector<double>(x0.data(), x0.data() + x0.size())}}
                       .dump()
                << std::endl;
      continue;
    }
    if (exit_after >= 0 && evaluations >= exit_after) return 3;
    ++evaluations;
    json reply;
    const auto id = req.value("id", json(nullptr));
    try {
      const auto xs = req.at("x").get<std::vector<double>>();
      const cbo::Point x = Eigen::Map<const cbo::Point>(xs.data(), static_cast<Eigen::Index>(xs.size()));
      if (op == "eval_f") {
        reply = {{"id", id}, {"f", problem->f(x)}};
      } else if (op == "eval_grad") {
        const cbo::Point g = problem->grad(x);
        reply = {{"id", id}, {"g", std::vector<double>(g.data(), g.data() + g.size())}};
      } else {
        reply = {{"id", id}, {"error", "unknown op " + op}};
      }
    } catch (const std::exception& e) {
      reply = {{"id", id}, {"error", e.what()}};
    }
    if (mode == "garbage") {
      std::cout << "this is not json" << std::endl;
      continue;
    }
    if (mode == "wrong-id") reply["id"] = id.is_number() ? json(id.get<long>() + 1) : json(-1);
    if (mode == "error") reply = {{"id", id}, {"error", "simulated failure"}};
    std::cout << reply.dump() << std::endl;
  }
  return 0;
}
