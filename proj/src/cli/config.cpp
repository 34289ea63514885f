#include "tcon/cli/config.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace tcon::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& value) {
  throw Error(ErrorKind::kParse, "bad value for " + key + ": '" + value + "'");
}

double to_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  std::string t = trim(text);
  if (!t.empty() && t[0] == '+') t.erase(0, 1);  // from_chars rejects a leading '+'
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) bad(key, text);
  return v;
}

long to_long(const std::string& key, const std::string& text) {
  long v = 0;
  const std::string t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) bad(key, text);
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return format_double(z.real());
  std::string im = format_double(z.imag()) + "i";
  if (z.real() == 0.0) return im;
  if (im[0] != '-') im = "+" + im;
  return format_double(z.real()) + im;
}

Complex parse_complex(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) bad("complex", text);
  if (t.back() != 'i') return {to_double("complex", t), 0.0};
  const std::string body = t.substr(0, t.size() - 1);
  // split at the last sign that is not an exponent sign or the leading sign
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      const std::string im = body.substr(k);
      return {to_double("complex", body.substr(0, k)),
              im == "+" ? 1.0 : im == "-" ? -1.0 : to_double("complex", im)};
    }
  }
  if (body.empty() || body == "+") return {0.0, 1.0};
  if (body == "-") return {0.0, -1.0};
  return {0.0, to_double("complex", body)};
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const std::string& p : split(text, ',')) out.push_back(static_cast<int>(to_long("list", p)));
  if (out.empty()) bad("list", text);
  return out;
}

void set_value(RunConfig& cfg, const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  auto as_int = [&] { return static_cast<int>(to_long(key, value)); };
  auto as_unsigned = [&] {
    const long v = to_long(key, value);
    if (v < 0) bad(key, value);
    return static_cast<unsigned>(v);
  };
  auto as_double = [&] { return to_double(key, value); };
  if (key == "surface") cfg.surface = value;
  else if (key == "weight") cfg.weight = as_int();
  else if (key == "truncation") cfg.truncation = as_int();
  else if (key == "map_seeds") {
    cfg.map_seeds.clear();
    for (const std::string& seed : split(value, ';')) {
      std::vector<Complex> coeffs;
      for (const std::string& c : split(seed, ',')) coeffs.push_back(parse_complex(c));
      cfg.map_seeds.push_back(coeffs);
    }
  } else if (key == "orientation") cfg.orientation = value;
  else if (key == "rho_seed") cfg.rho_seed = as_unsigned();
  else if (key == "delta") cfg.delta = as_double();
  else if (key == "fd_step") cfg.fd_step = as_double();
  else if (key == "ode_tol") cfg.ode_tol = as_double();
  else if (key == "quad_angular") cfg.quad_angular = as_int();
  else if (key == "quad_radial") cfg.quad_radial = as_int();
  else if (key == "quad_fiber") cfg.quad_fiber = as_int();
  else if (key == "quad_order") cfg.quad_order = as_int();
  else if (key == "samples") cfg.samples = as_int();
  else if (key == "sample_seed") cfg.sample_seed = as_unsigned();
  else if (key == "ghost_s") cfg.ghost_s = parse_int_list(value);
  else if (key == "lmax") cfg.lmax = as_double();
  else if (key == "count") cfg.count = as_int();
  else if (key == "perturb") cfg.perturb = as_double();
  else if (key == "t_trunc") cfg.t_trunc = as_double();
  else if (key == "budget_transparency") cfg.budget_transparency = as_double();
  else if (key == "budget_descent") cfg.budget_descent = as_double();
  else if (key == "budget_identity") cfg.budget_identity = as_double();
  else if (key == "budget_pestov") cfg.budget_pestov = as_double();
  else if (key == "budget_uf") cfg.budget_uf = as_double();
  else if (key == "out") cfg.out = value;
  else throw Error(ErrorKind::kParse, "unknown config key '" + key + "'");
}

void apply_assignment(RunConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw Error(ErrorKind::kParse, "expected key=value, got '" + assignment + "'");
  set_value(cfg, trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

RunConfig parse_config(const std::string& text, RunConfig base) {
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    try {
      apply_assignment(base, line);
    } catch (const Error& e) {
      throw Error(ErrorKind::kParse, "line " + std::to_string(number) + ": " + e.what());
    }
  }
  return base;
}

std::string to_config_text(const RunConfig& c) {
  std::ostringstream o;
  auto line = [&](const char* key, const std::string& v) { o << key << " = " << v << "\n"; };
  std::string seeds;
  for (std::size_t s = 0; s < c.map_seeds.size(); ++s) {
    if (s) seeds += "; ";
    for (std::size_t k = 0; k < c.map_seeds[s].size(); ++k) {
      if (k) seeds += ", ";
      seeds += format_complex(c.map_seeds[s][k]);
    }
  }
  std::string ghost;
  for (std::size_t k = 0; k < c.ghost_s.size(); ++k) ghost += (k ? "," : "") + std::to_string(c.ghost_s[k]);
  line("surface", c.surface);
  line("weight", std::to_string(c.weight));
  line("truncation", std::to_string(c.truncation));
  line("map_seeds", seeds);
  line("orientation", c.orientation);
  line("rho_seed", std::to_string(c.rho_seed));
  line("delta", format_double(c.delta));
  line("fd_step", format_double(c.fd_step));
  line("ode_tol", format_double(c.ode_tol));
  line("quad_angular", std::to_string(c.quad_angular));
  line("quad_radial", std::to_string(c.quad_radial));
  line("quad_fiber", std::to_string(c.quad_fiber));
  line("quad_order", std::to_string(c.quad_order));
  line("samples", std::to_string(c.samples));
  line("sample_seed", std::to_string(c.sample_seed));
  line("ghost_s", ghost);
  line("lmax", format_double(c.lmax));
  line("count", std::to_string(c.count));
  line("perturb", format_double(c.perturb));
  line("t_trunc", format_double(c.t_trunc));
  line("budget_transparency", format_double(c.budget_transparency));
  line("budget_descent", format_double(c.budget_descent));
  line("budget_identity", format_double(c.budget_identity));
  line("budget_pestov", format_double(c.budget_pestov));
  line("budget_uf", format_double(c.budget_uf));
  line("out", c.out);
  return o.str();
}

void validate(const RunConfig& c) {
  auto need = [](bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorKind::kParse, what);
  };
  need(c.surface == "bolza", "unsupported surface '" + c.surface + "' (only bolza)");
  need(c.orientation == "holomorphic" || c.orientation == "anti-holomorphic",
       "orientation must be holomorphic or anti-holomorphic");
  need(c.weight >= 4 && c.weight % 2 == 0, "weight must be even and >= 4");
  need(c.truncation > 0, "truncation must be positive");
  need(c.map_seeds.size() == 2, "map_seeds needs exactly two seeds");
  for (double v : {c.delta, c.fd_step, c.ode_tol, c.lmax, c.t_trunc, c.budget_transparency, c.budget_descent,
                   c.budget_identity, c.budget_pestov, c.budget_uf}) {
    need(v > 0.0, "tolerances, budgets and lengths must be positive");
  }
  need(c.perturb >= 0.0, "perturb must be >= 0");
  need(c.quad_angular > 0 && c.quad_radial > 0 && c.quad_fiber > 0 && c.quad_order > 0,
       "quadrature resolution must be positive");
  need(c.samples > 0, "samples must be positive");
  need(c.count >= 0, "count must be >= 0");
  need(!c.out.empty(), "out must be set");
}

}  // namespace tcon::cli
