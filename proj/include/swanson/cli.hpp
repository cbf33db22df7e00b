#ifndef SWANSON_CLI_HPP
#define SWANSON_CLI_HPP

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "swanson/verify.hpp"

namespace swanson {

using ordered_json = nlohmann::ordered_json;

inline ordered_json config_to_json(const RunConfig& c) {
  ordered_json j;
  j["model"] = c.model;
  j["alpha"] = c.alpha;
  j["beta"] = c.beta;
  for (const auto& kv : c.params) j[kv.first] = kv.second;
  j["grid_n"] = c.grid_n;
  if (c.window) j["window"] = {c.window->first, c.window->second};
  j["checks"] = c.checks;
  j["nmax"] = c.nmax;
  j["out"] = c.out_dir;
  j["format"] = c.formats;
  return j;
}

inline RunConfig config_from_json(const ordered_json& j) {
  if (!j.is_object()) raise(ErrorCode::InvalidConfig, "config must be a flat JSON object");
  RunConfig c;
  c.formats.clear();
  bool saw_format = false;
  for (const auto& item : j.items()) {
    const std::string& key = item.key();
    const ordered_json& v = item.value();
    if (key == "model") {
      if (!v.is_string()) raise(ErrorCode::InvalidConfig, "'model' must be a string");
      c.model = v.get<std::string>();
    } else if (key == "alpha") {
      if (!v.is_number()) raise(ErrorCode::InvalidConfig, "'alpha' must be a number");
      c.alpha = v.get<double>();
    } else if (key == "beta") {
      if (!v.is_number()) raise(ErrorCode::InvalidConfig, "'beta' must be a number");
      c.beta = v.get<double>();
    } else if (key == "grid_n") {
      if (!v.is_number_integer()) raise(ErrorCode::InvalidConfig, "'grid_n' must be an integer");
      c.grid_n = v.get<int>();
    } else if (key == "window") {
      if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        raise(ErrorCode::InvalidConfig, "'window' must be [lo, hi]");
      c.window = std::make_pair(v[0].get<double>(), v[1].get<double>());
    } else if (key == "checks") {
      if (!v.is_array()) raise(ErrorCode::InvalidConfig, "'checks' must be a list");
      for (const auto& s : v) c.checks.push_back(s.get<std::string>());
    } else if (key == "nmax") {
      if (!v.is_number_integer()) raise(ErrorCode::InvalidConfig, "'nmax' must be an integer");
      c.nmax = v.get<int>();
    } else if (key == "out") {
      if (!v.is_string()) raise(ErrorCode::InvalidConfig, "'out' must be a string");
      c.out_dir = v.get<std::string>();
    } else if (key == "format") {
      if (!v.is_array()) raise(ErrorCode::InvalidConfig, "'format' must be a list");
      saw_format = true;
      for (const auto& s : v) c.formats.push_back(s.get<std::string>());
    } else if (v.is_number()) {
      c.params[key] = v.get<double>();  // model parameter; strays fail downstream
    } else {
      raise(ErrorCode::InvalidConfig, "unknown config key '" + key + "'");
    }
  }
  if (!saw_format) c.formats = {"json", "csv"};
  return c;
}

inline RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::InvalidConfig, "cannot open config file '" + path + "'");
  ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    raise(ErrorCode::InvalidConfig, std::string("config parse error: ") + e.what());
  }
  return config_from_json(j);
}

inline ordered_json report_to_json(const Report& rep) {
  ordered_json j;
  j["config"] = config_to_json(rep.config);
  ordered_json d;
  d["mu"] = rep.derived.mu;
  d["r"] = rep.derived.r;
  d["s"] = rep.derived.s;
  d["lambda1"] = rep.derived.lambda1;
  d["delta1"] = rep.derived.delta1;
  d["factorization_offset"] = rep.derived.factorization_offset;
  d["convention_offset"] = rep.derived.convention_offset;
  j["derived"] = d;
  ordered_json checks = ordered_json::array();
  for (const auto& c : rep.checks) {
    ordered_json jc;
    jc["name"] = c.name;
    jc["metric"] = c.metric;
    jc["tolerance"] = c.tolerance;
    jc["passed"] = c.passed;
    ordered_json det;
    for (const auto& kv : c.details) det[kv.first] = kv.second;
    jc["details"] = det;
    checks.push_back(jc);
  }
  j["checks"] = checks;
  ordered_json findings = ordered_json::array();
  for (const auto& f : rep.findings) {
    ordered_json jf;
    jf["name"] = f.name;
    jf["detail"] = f.detail;
    findings.push_back(jf);
  }
  j["findings"] = findings;
  j["pass"] = rep.pass;
  j["timestamp"] = rep.timestamp;
  return j;
}

inline void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::InvalidConfig, "cannot write '" + path + "'");
  out << body;
}

inline std::string spectra_csv(const ModelSpec& m, const PartnerParameters& p, int N,
                               int nmax, std::optional<std::pair<double, double>> window) {
  SpectrumTable t = spectrum_table(m, p, N, nmax, window);
  std::string body = "n,eps_minus_closed,eps_minus_numeric,eps_plus_numeric,abs_err,mixed_err\n";
  char line[256];
  for (std::size_t i = 0; i < t.n.size(); ++i) {
    std::snprintf(line, sizeof line, "%d,%.12g,%.12g,%.12g,%.12g,%.12g\n", t.n[i],
                  t.closed[i], t.numeric_minus[i], t.numeric_plus[i], t.abs_err[i],
                  t.mixed[i]);
    body += line;
  }
  return body;
}

namespace svg {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Frame {
  double x0, x1, y0, y1;  // data ranges
  double px0 = 60, px1 = 780, py0 = 560, py1 = 40;
  double mx(double x) const { return px0 + (px1 - px0) * (x - x0) / (x1 - x0); }
  double my(double y) const { return py0 + (py1 - py0) * (y - y0) / (y1 - y0); }
};

inline void polyline(std::ostringstream& os, const Frame& fr,
                     const std::vector<double>& xs, const std::vector<double>& ys,
                     const char* color, const char* dash = nullptr) {
  os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
  if (dash) os << " stroke-dasharray=\"" << dash << "\"";
  os << " points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) os << " ";
    os << num(fr.mx(xs[i])) << "," << num(fr.my(ys[i]));
  }
  os << "\"/>\n";
}

inline void text(std::ostringstream& os, double px, double py, const std::string& s,
                 const char* color = "#333333") {
  os << "<text x=\"" << num(px) << "\" y=\"" << num(py)
     << "\" font-family=\"monospace\" font-size=\"12\" fill=\"" << color << "\">" << s
     << "</text>\n";
}

inline std::string document(const std::string& body) {
  std::string head =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
      "viewBox=\"0 0 800 600\">\n<rect width=\"800\" height=\"600\" fill=\"#ffffff\"/>\n";
  return head + body + "</svg>\n";
}

}  // namespace svg

inline std::string potentials_svg(const ModelSpec& m, const PartnerParameters& p,
                                  const RunConfig& cfg) {
  const int bm = bound_max_index(m, p);
  const int top = std::min(cfg.nmax, bm);
  Grid g = build_grid(m, 600, cfg.window, &p, top);
  PotentialPair pair = v_pair(m, p);
  std::vector<double> xs(g.x.begin(), g.x.end()), vm(g.N), vp(g.N);
  double vmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < g.N; ++i) {
    vm[i] = pair.v_minus(g.x[i]);
    vp[i] = pair.v_plus(g.x[i]);
    if (std::isfinite(vm[i])) vmin = std::min(vmin, vm[i]);
    if (std::isfinite(vp[i])) vmin = std::min(vmin, vp[i]);
  }
  std::vector<double> levels;
  for (int n = 0; n <= top; ++n)
    levels.push_back(closed_spectrum_minus(m, p.lambda1, p.delta1, n));
  const double lmax = levels.empty() ? vmin + 1.0 : *std::max_element(levels.begin(), levels.end());
  const double span = std::max(lmax - vmin, 1e-6);
  svg::Frame fr;
  fr.x0 = g.x0;
  fr.x1 = g.x1;
  fr.y0 = vmin - 0.05 * span - 0.1;
  fr.y1 = lmax + 0.3 * span + 1.0;
  for (auto& v : vm) v = std::min(std::max(v, fr.y0), fr.y1);
  for (auto& v : vp) v = std::min(std::max(v, fr.y0), fr.y1);
  std::ostringstream os;
  svg::polyline(os, fr, xs, vm, "#1f77b4");
  svg::polyline(os, fr, xs, vp, "#d62728");
  for (double e : levels) {
    std::vector<double> lx = {g.x0, g.x1}, ly = {e, e};
    svg::polyline(os, fr, lx, ly, "#888888", "4,3");
  }
  svg::text(os, 60, 20, std::string(model_id_string(m.id)) + "  table potentials V- (blue), V+ (red), levels (dashed)");
  char meta[128];
  std::snprintf(meta, sizeof meta, "alpha=%.6g beta=%.6g lambda1=%.6g delta1=%.6g",
                cfg.alpha, cfg.beta, p.lambda1, p.delta1);
  svg::text(os, 60, 36, meta);
  return svg::document(os.str());
}

inline std::string wavefunctions_svg(const ModelSpec& m, const PartnerParameters& p,
                                     const RunConfig& cfg) {
  const int bm = bound_max_index(m, p);
  const int top = std::min(cfg.nmax, bm);
  Grid g = build_grid(m, 600, cfg.window, &p, top);
  static const char* palette[4] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  std::ostringstream os;
  svg::Frame fr;
  fr.x0 = g.x0;
  fr.x1 = g.x1;
  fr.y0 = -1.3;
  fr.y1 = 1.3 * (top + 1);
  std::vector<double> xs(g.x.begin(), g.x.end());
  for (int n = 0; n <= top; ++n) {
    auto psi = psi_minus_grid(m, p, n, g.x);
    std::vector<double> ys(g.N);
    double mx = 0.0;
    for (int i = 0; i < g.N; ++i) mx = std::max(mx, std::abs(psi[i].real()));
    for (int i = 0; i < g.N; ++i) ys[i] = 1.3 * n + (mx > 0 ? psi[i].real() / mx : 0.0);
    svg::polyline(os, fr, xs, ys, palette[n % 4]);
    std::vector<double> bx = {g.x0, g.x1}, by = {1.3 * n, 1.3 * n};
    svg::polyline(os, fr, bx, by, "#cccccc", "2,4");
  }
  svg::text(os, 60, 20, std::string(model_id_string(m.id)) +
                            "  Re psi_n, max-abs normalized, stacked by n");
  return svg::document(os.str());
}

inline int cmd_list(std::ostream& out) {
  out << "rosen-morse-1       (0, π)        params a2, b2 (a2 > 0, b2 > 0); partner tower normalizable for α > β\n"
      << "rosen-morse-2       (-∞, ∞)       params a2, b2 (a2 > 0, b2 < a2²); normalizable for α < β\n"
      << "eckart              (0, ∞)        params a2, b2 (a2 > 0, b > a²); normalizable for α < β\n"
      << "scarf-1             (-π/2, π/2)   params lambda2, delta2; no extra coupling constraint\n"
      << "scarf-2             (-∞, ∞)       params lambda2, delta2; no extra coupling constraint\n"
      << "poschl-teller       (0, ∞)        params lambda2, delta2 (lambda2 < delta2); normalizable for α < β\n"
      << "morse               (-∞, ∞)       params a2, b2 (a2 > 0, b2 > 0); no extra coupling constraint\n"
      << "shifted-oscillator  (-∞, ∞)       params a2, b2 (a2 > 0); needs |α + β| < 1\n";
  return 0;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& err) {
  Report rep = run_all(cfg);
  std::filesystem::create_directories(cfg.out_dir);
  bool want_json = false, want_csv = false;
  for (const auto& f : cfg.formats) {
    if (f == "json") want_json = true;
    else if (f == "csv") want_csv = true;
    else raise(ErrorCode::InvalidConfig, "unknown format '" + f + "'");
  }
  if (want_json)
    write_text_file(cfg.out_dir + "/report.json", report_to_json(rep).dump(2) + "\n");
  bool setup_failed = false;
  for (const auto& c : rep.checks) setup_failed = setup_failed || c.name == "setup";
  if (want_csv && !setup_failed) {
    const ModelId id = model_id_from_string(cfg.model);
    const SwansonCouple couple = (cfg.alpha == 0.0 && cfg.beta == 0.0)
                                     ? hermitian_limit()
                                     : new_couple(cfg.alpha, cfg.beta);
    ModelSpec m = instantiate(id, cfg.params, couple);
    PartnerParameters p = solve_partner(m);
    const int n_sym = cfg.grid_n > 0 ? cfg.grid_n : 2000;
    write_text_file(cfg.out_dir + "/spectra.csv",
                    spectra_csv(m, p, n_sym, cfg.nmax, cfg.window));
  }
  if (!rep.pass) {
    for (const auto& c : rep.checks)
      if (!c.passed) {
        err << "check failed: " << c.name;
        if (!c.details.empty() && c.details.front().first == "error")
          err << " (" << c.details.front().second << ")";
        err << "\n";
        break;
      }
    return 1;
  }
  return 0;
}

inline int cmd_plot(const RunConfig& cfg) {
  const ModelId id = model_id_from_string(cfg.model);
  const SwansonCouple couple = (cfg.alpha == 0.0 && cfg.beta == 0.0)
                                   ? hermitian_limit()
                                   : new_couple(cfg.alpha, cfg.beta);
  ModelSpec m = instantiate(id, cfg.params, couple);
  PartnerParameters p = solve_partner(m);
  std::filesystem::create_directories(cfg.out_dir);
  write_text_file(cfg.out_dir + "/potentials.svg", potentials_svg(m, p, cfg));
  write_text_file(cfg.out_dir + "/wavefunctions.svg", wavefunctions_svg(m, p, cfg));
  return 0;
}

namespace detail {

inline void apply_param_flags(RunConfig& cfg, const std::vector<std::string>& raw) {
  for (const auto& item : raw) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      raise(ErrorCode::InvalidConfig, "--param expects NAME=VALUE, got '" + item + "'");
    const std::string name = item.substr(0, eq);
    char* endp = nullptr;
    const std::string vs = item.substr(eq + 1);
    const double v = std::strtod(vs.c_str(), &endp);
    if (endp == vs.c_str() || *endp != '\0')
      raise(ErrorCode::InvalidConfig, "--param " + name + " has a non-numeric value");
    cfg.params[name] = v;
  }
}

inline std::pair<double, double> parse_window(const std::string& s) {
  double lo = 0.0, hi = 0.0;
  char trail = 0;
  if (std::sscanf(s.c_str(), "%lf,%lf%c", &lo, &hi, &trail) != 2)
    raise(ErrorCode::InvalidConfig, "--window expects LO,HI");
  return {lo, hi};
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

}  // namespace detail

}  // namespace swanson

#include "CLI11.hpp"

namespace swanson {

namespace detail {

struct CliFlags {
  std::string model, window, checks, formats, config, out;
  std::vector<std::string> params;
  double alpha = 0.0, beta = 0.0;
  int grid_n = 0, nmax = 3;
  bool dump = false;
};

inline void add_common_flags(CLI::App* sub, CliFlags& f) {
  sub->add_option("--model", f.model, "potential family (see 'list')");
  sub->add_option("--alpha", f.alpha, "quadratic lowering coefficient");
  sub->add_option("--beta", f.beta, "quadratic raising coefficient");
  sub->add_option("--param", f.params, "model parameter NAME=VALUE (repeatable)");
  sub->add_option("--grid-n", f.grid_n, "interior grid points");
  sub->add_option("--window", f.window, "override window LO,HI");
  sub->add_option("--checks", f.checks, "comma-separated check list");
  sub->add_option("--nmax", f.nmax, "highest level to examine");
  sub->add_option("--out", f.out, "output directory");
  sub->add_option("--format", f.formats, "comma-separated outputs: json,csv");
  sub->add_option("--config", f.config, "flat JSON config file");
  sub->add_flag("--dump-config", f.dump, "print the merged config and exit");
}

inline RunConfig merge_flags(CLI::App* sub, const CliFlags& f) {
  RunConfig cfg;
  if (sub->count("--config")) cfg = load_config_file(f.config);
  if (sub->count("--model")) cfg.model = f.model;
  if (sub->count("--alpha")) cfg.alpha = f.alpha;
  if (sub->count("--beta")) cfg.beta = f.beta;
  if (sub->count("--param")) apply_param_flags(cfg, f.params);
  if (sub->count("--grid-n")) cfg.grid_n = f.grid_n;
  if (sub->count("--window")) cfg.window = parse_window(f.window);
  if (sub->count("--checks")) cfg.checks = split_list(f.checks);
  if (sub->count("--nmax")) cfg.nmax = f.nmax;
  if (sub->count("--out")) cfg.out_dir = f.out;
  if (sub->count("--format")) cfg.formats = split_list(f.formats);
  return cfg;
}

inline bool is_usage_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidConfig:
    case ErrorCode::UnknownParameter:
    case ErrorCode::EqualParameters:
    case ErrorCode::SumExceedsOne:
    case ErrorCode::ProductBoundViolated:
      return true;
    default:
      return false;
  }
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv) {
  if (const char* env = std::getenv("SWANSON_FORGE_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) Eigen::setNbThreads(n);
  }
  CLI::App app{"partner Hamiltonians for the generalized Swanson model"};
  app.require_subcommand(1);
  auto* list = app.add_subcommand("list", "list supported potential families");
  detail::CliFlags vf, pf;
  auto* verify = app.add_subcommand("verify", "run the verification battery");
  detail::add_common_flags(verify, vf);
  auto* plot = app.add_subcommand("plot", "write potential and wavefunction plots");
  detail::add_common_flags(plot, pf);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    if (list->parsed()) return cmd_list(std::cout);
    if (verify->parsed()) {
      RunConfig cfg = detail::merge_flags(verify, vf);
      if (vf.dump) {
        std::cout << config_to_json(cfg).dump(2) << "\n";
        return 0;
      }
      return cmd_verify(cfg, std::cerr);
    }
    if (plot->parsed()) {
      RunConfig cfg = detail::merge_flags(plot, pf);
      if (pf.dump) {
        std::cout << config_to_json(cfg).dump(2) << "\n";
        return 0;
      }
      return cmd_plot(cfg);
    }
  } catch (const SwansonError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return detail::is_usage_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace swanson

#endif  // SWANSON_CLI_HPP
