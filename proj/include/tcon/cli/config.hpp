#pragma once

#include <string>
#include <vector>

#include "tcon/core.hpp"

namespace tcon::cli {

/// Everything a run depends on. Serialized as `key = value` lines; doubles
/// are written with 17 significant digits so text round-trips bit-exactly.
struct RunConfig {
  std::string surface = "bolza";
  int weight = 12;
  int truncation = 12;
  std::vector<std::vector<Complex>> map_seeds{{1.0, 0.0, Complex(0.2, 0.25), 0.0, 30.0},
                                              {0.0, 1.0, 0.0, Complex(0.1, -0.3), Complex(-12.0, 9.0)}};
  std::string orientation = "holomorphic";
  unsigned rho_seed = 0;
  double delta = 1e-2;
  double fd_step = 2.5e-4;
  double ode_tol = 1e-8;
  int quad_angular = 6;
  int quad_radial = 8;
  int quad_fiber = 8;
  int quad_order = 4;
  int samples = 100;
  unsigned sample_seed = 1;
  std::vector<int> ghost_s{0};
  double lmax = 4.0;
  int count = 20;  // geodesics checked, shortest first; 0 = all up to lmax
  double perturb = 0.0;
  double t_trunc = 20.0;
  double budget_transparency = 1e-4;
  double budget_descent = 1e-5;
  double budget_identity = 1e-5;
  double budget_pestov = 1e-3;
  double budget_uf = 1e-6;
  std::string out = "tcon_out";

  bool operator==(const RunConfig&) const = default;
};

/// Sets one key from its text value; kParse on unknown keys or bad values.
void set_value(RunConfig& cfg, const std::string& key, const std::string& value);
/// Applies `key=value` (spaces around '=' allowed).
void apply_assignment(RunConfig& cfg, const std::string& assignment);
/// Parses a config file body: assignments, blank lines and '#' comments.
RunConfig parse_config(const std::string& text, RunConfig base = {});
std::string to_config_text(const RunConfig& cfg);
/// Checks ranges (positive tolerances, known surface and orientation).
void validate(const RunConfig& cfg);

std::string format_complex(Complex z);
Complex parse_complex(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

}  // namespace tcon::cli
