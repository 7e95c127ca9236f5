#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cbo {

using Point = Eigen::VectorXd;
using Rng = std::mt19937_64;

/// Thrown when a remote problem cannot be reached or dies mid-run.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Handshake with a remote problem failed (timeout, refused, error reply).
class ConnectionError : public TransportError {
 public:
  using TransportError::TransportError;
};

/// A remote problem replied with something that does not follow the wire protocol.
class ProtocolError : public TransportError {
 public:
  using TransportError::TransportError;
};

/// Bad algorithm / experiment configuration, detected before any run starts.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// splitmix64 finalizer
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Child seed for a position in an experiment (e.g. {problem, algorithm, repeat}).
/// Distinct paths give statistically independent streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix64(master);
  for (std::uint64_t p : path) h = mix64(h ^ mix64(p + 0x632BE59BD9B4E019ULL));
  return h;
}

// Stream tags used with derive_seed for the two streams a run owns.
inline constexpr std::uint64_t kAlgorithmStream = 0;
inline constexpr std::uint64_t kNoiseStream = 1;

}  // namespace cbo
