#pragma once

#include <stdexcept>
#include <string>

namespace hspec {

// Error hierarchy. Every failure mode named by the operation contracts maps
// to one concrete type so callers (and tests) can catch them selectively.

struct error : std::runtime_error {
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

struct parameter_error : error {
  explicit parameter_error(const std::string& msg) : error(msg) {}
};

// Mismatched grids / dimensions between operands.
struct shape_error : error {
  explicit shape_error(const std::string& msg) : error(msg) {}
};

// Spectral transform requested beyond what the quadrature resolves.
struct resolution_error : error {
  explicit resolution_error(const std::string& msg) : error(msg) {}
};

// Oscillatory kernel evaluated too close to its singular times.
struct singularity_error : error {
  explicit singularity_error(const std::string& msg) : error(msg) {}
};

// Resolvent parameter on (or numerically on) the spectrum.
struct spectral_point_error : error {
  explicit spectral_point_error(const std::string& msg) : error(msg) {}
};

// dist(beta, N0) below the configured gap constant.
struct gap_error : error {
  explicit gap_error(const std::string& msg) : error(msg) {}
};

// Time support touches the interval endpoints.
struct truncation_error : error {
  explicit truncation_error(const std::string& msg) : error(msg) {}
};

// Signal not supported inside the interval; DFT would alias.
struct wraparound_error : error {
  explicit wraparound_error(const std::string& msg) : error(msg) {}
};

struct degenerate_probe_error : error {
  explicit degenerate_probe_error(const std::string& msg) : error(msg) {}
};

struct config_error : error {
  explicit config_error(const std::string& msg) : error(msg) {}
};

}  // namespace hspec
