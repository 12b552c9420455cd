#include "cli.hpp"

#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "pcpkit/classifiers.hpp"
#include "pcpkit/constructions.hpp"
#include "pcpkit/degree.hpp"
#include "pcpkit/errors.hpp"
#include "pcpkit/io.hpp"
#include "pcpkit/report_json.hpp"
#include "pcpkit/reproduce.hpp"
#include "pcpkit/solver.hpp"

namespace pcpkit::cli {

namespace {

using nlohmann::json;

struct Globals {
  std::uint64_t seed = 1;
  bool seed_set = false;
  std::string config;
  bool json_out = false;
};

// Accepts the typographic minus as well, so pasted values work.
std::string ascii_minus(std::string s) {
  const std::string minus = "\xE2\x88\x92";
  for (std::size_t p; (p = s.find(minus)) != std::string::npos;) s.replace(p, minus.size(), "-");
  return s;
}

Vector parse_vector_arg(const std::string& text, const std::string& flag) {
  return io::vector_from_json(io::parse(ascii_minus(text), flag), flag);
}

std::string fmt(const Vector& v) {
  std::ostringstream os;
  os.precision(10);
  os << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ")";
  return os.str();
}

// Field errors from the readers carry a JSON path only; prefix the file.
template <class Fn>
auto from_file(const std::string& path, Fn read) {
  const json j = io::read_file(path);
  try {
    return read(j);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Tensor load_tensor(const std::string& path) {
  return from_file(path, [](const json& j) { return io::tensor_from_json(j); });
}

Matrix load_matrix(const std::string& path) {
  return from_file(path, [](const json& j) { return io::matrix_from_json(j); });
}

SolveConfig load_config(const Globals& g) {
  SolveConfig c;
  if (!g.config.empty()) c = from_file(g.config, [](const json& j) { return report::solve_config_from_json(j); });
  if (g.seed_set) c.seed = g.seed;
  return c;
}

std::uint64_t effective_seed(const Globals& g, const SolveConfig& c) {
  return g.seed_set ? g.seed : c.seed;
}

PcpInstance load_instance(const std::string& map_path, const std::string& q_text) {
  io::LoadedMap m = from_file(map_path, [](const json& j) { return io::map_or_tensor_from_json(j); });
  Vector q = Vector::Zero(m.map.dim());
  if (!q_text.empty()) q = parse_vector_arg(q_text, "--q");
  if (q.size() != m.map.dim())
    throw InvalidInput("--q has length " + std::to_string(q.size()) + ", map dimension is " +
                       std::to_string(m.map.dim()));
  return PcpInstance(m.map, q + m.constant);
}

void print_solve(std::ostream& out, const SolveReport& r) {
  out << "status: " << to_string(r.status) << "\n";
  for (const Solution& s : r.solutions)
    out << "x = " << fmt(s.x) << "  residual " << s.residuals.natural_residual << "\n";
  if (r.certificate)
    out << "certificate: " << (r.certificate->certified ? "certified" : "inconclusive")
        << ", min grid residual " << r.certificate->min_grid_residual << "\n";
  for (const std::string& n : r.notes) out << "note: " << n << "\n";
}

void print_verdict(std::ostream& out, const ClassVerdict& v) {
  out << v.property << ": " << to_string(v.verdict);
  if (!v.witnesses.empty()) {
    out << "  witness";
    for (const Vector& w : v.witnesses) out << " " << fmt(w);
  }
  out << "\n";
}

ClassVerdict classify_one(const std::string& prop, const Tensor& t, std::uint64_t seed,
                          const SolveConfig& cfg) {
  const PolynomialMap F = PolynomialMap::homogeneous(t);
  if (prop == "r0") return is_R0(t);
  if (prop == "r") {
    RProbeOptions o;
    o.seed = seed;
    o.solve = cfg;
    return is_R(t, {}, o);
  }
  if (prop == "copositive") return is_copositive(F);
  if (prop == "strictly-copositive") return is_copositive(F, true);
  if (prop == "z") return is_Z_tensor(t);
  if (prop == "nonneg-pos-diag") return is_nonneg_pos_diag(t);
  if (prop == "strong-m") return is_strong_M(t, seed);
  if (prop == "gus") {
    GusOptions o;
    o.seed = seed;
    o.solve = cfg;
    return gus_probe(t, o);
  }
  if (prop == "strong-q") {
    StrongQOptions o;
    o.seed = seed;
    o.solve = cfg;
    return strong_q_probe(t, o);
  }
  if (prop == "p") {
    PProbeOptions o;
    o.seed = seed;
    return p_property_check(F, o);
  }
  throw InvalidInput("unknown property: " + prop);
}

const std::vector<std::string> kProperties{"r0", "r", "copositive", "strictly-copositive", "z",
                                           "nonneg-pos-diag", "strong-m", "gus", "strong-q", "p"};

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polynomial and tensor complementarity toolkit"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "random seed (overrides the config file)")
      ->each([&](const std::string&) { g.seed_set = true; });
  app.add_option("--config", g.config, "solver config JSON file");
  app.add_flag("--json", g.json_out, "emit JSON");
  app.fallthrough();

  std::function<int()> action;

  // solve / enumerate
  std::string map_path, q_text;
  double radius = 0.0;
  auto* solve_cmd = app.add_subcommand("solve", "solve PCP(f, q)");
  solve_cmd->add_option("--map", map_path, "map or tensor JSON file")->required();
  solve_cmd->add_option("--q", q_text, "q as a JSON array (default zero)");
  solve_cmd->callback([&] {
    action = [&] {
      const SolveConfig cfg = load_config(g);
      const SolveReport r = solve(load_instance(map_path, q_text), cfg);
      if (g.json_out)
        emit(out, report::envelope("solve", report::to_json(r), cfg.seed));
      else
        print_solve(out, r);
      return 0;
    };
  });

  auto* enum_cmd = app.add_subcommand("enumerate", "enumerate all solutions in a box");
  enum_cmd->add_option("--map", map_path, "map or tensor JSON file")->required();
  enum_cmd->add_option("--q", q_text, "q as a JSON array (default zero)");
  enum_cmd->add_option("--radius", radius, "search radius (default from config)");
  enum_cmd->callback([&] {
    action = [&] {
      SolveConfig cfg = load_config(g);
      if (radius > 0) cfg.search_radius = radius;
      const SolveReport r = enumerate_solutions(load_instance(map_path, q_text), cfg);
      if (g.json_out)
        emit(out, report::envelope("enumerate", report::to_json(r), cfg.seed));
      else
        print_solve(out, r);
      return 0;
    };
  });

  // classify
  std::string tensor_path, props = "r0,r";
  auto* cls = app.add_subcommand("classify", "probe structural tensor classes");
  cls->add_option("--tensor", tensor_path, "tensor JSON file")->required();
  cls->add_option("--properties", props, "comma list of: r0,r,copositive,strictly-copositive,z,"
                                         "nonneg-pos-diag,strong-m,gus,strong-q,p");
  cls->callback([&] {
    action = [&] {
      const std::vector<std::string> list = split_csv(props);
      if (list.empty()) throw InvalidInput("--properties is empty");
      for (const std::string& p : list)
        if (std::find(kProperties.begin(), kProperties.end(), p) == kProperties.end())
          throw InvalidInput("unknown property: " + p);
      const SolveConfig cfg = load_config(g);
      const std::uint64_t seed = effective_seed(g, cfg);
      const Tensor t = load_tensor(tensor_path);
      json arr = json::array();
      for (const std::string& p : list) {
        const ClassVerdict v = classify_one(p, t, seed, cfg);
        if (g.json_out)
          arr.push_back(report::to_json(v));
        else
          print_verdict(out, v);
      }
      if (g.json_out) emit(out, report::envelope("verdicts", arr, seed));
      return 0;
    };
  });

  // degree
  std::string method = "both";
  auto* deg = app.add_subcommand("degree", "degree of min{x, A x^(m-1)} at the origin");
  deg->add_option("--tensor", tensor_path, "tensor JSON file")->required();
  deg->add_option("--method", method, "rv | winding | both")
      ->check(CLI::IsMember({"rv", "winding", "both"}));
  deg->callback([&] {
    action = [&] {
      const SolveConfig cfg = load_config(g);
      DegreeOptions o;
      o.seed = effective_seed(g, cfg);
      const DegreeMethod m = method == "rv"        ? DegreeMethod::kRegularValue
                             : method == "winding" ? DegreeMethod::kWinding2d
                                                   : DegreeMethod::kBoth;
      const DegreeEstimate d =
          tensor_degree(load_tensor(tensor_path), m, o);
      if (g.json_out)
        emit(out, report::envelope("degree", report::to_json(d), o.seed));
      else
        out << d.value << "\n";
      return 0;
    };
  });

  // construct
  std::string matrix_path, out_path;
  int k = 3, r = 1;
  auto* con = app.add_subcommand("construct", "build tensors and instances");
  con->require_subcommand(1);
  auto write_or_print = [&](const json& j) {
    if (out_path.empty())
      emit(out, j);
    else
      io::write_file(out_path, j);
  };
  auto* mp = con->add_subcommand("matrix-power", "tensor with A x^(m-1) = (A x)^[k]");
  mp->add_option("--matrix", matrix_path, "matrix JSON file")->required();
  mp->add_option("--k", k, "odd power")->required();
  mp->add_option("--out", out_path, "output file (default stdout)");
  mp->callback([&] {
    action = [&] {
      const Matrix a = load_matrix(matrix_path);
      write_or_print(io::tensor_to_json(matrix_power_tensor(a, k)));
      return 0;
    };
  });
  auto* th = con->add_subcommand("theta-scaled", "map |x|^(2r) (A x)^[k]");
  th->add_option("--matrix", matrix_path, "matrix JSON file")->required();
  th->add_option("--k", k, "odd power")->required();
  th->add_option("--r", r, "power of |x|^2")->required();
  th->add_option("--out", out_path, "output file (default stdout)");
  th->callback([&] {
    action = [&] {
      const Matrix a = load_matrix(matrix_path);
      write_or_print(io::map_to_json(theta_scaled_map(a, k, r)));
      return 0;
    };
  });
  auto* r5 = con->add_subcommand("remark5", "instance with the two solutions 0 and e");
  r5->add_option("--tensor", tensor_path, "tensor JSON file (default: built-in example)");
  r5->add_option("--out", out_path, "output file (default stdout)");
  r5->callback([&] {
    action = [&] {
      const Tensor t = tensor_path.empty() ? remark5_tensor()
                                           : load_tensor(tensor_path);
      const PcpInstance inst = remark5_instance(t);
      json j = io::map_to_json(inst.f);
      // q travels as an order-1 term so the file is a complete instance
      j["terms"].push_back(io::tensor_to_json(Tensor::from_vector(inst.q)));
      write_or_print(j);
      return 0;
    };
  });

  // catalog
  std::string entry_name;
  auto* cat = app.add_subcommand("catalog", "built-in examples");
  cat->require_subcommand(1);
  auto* cl = cat->add_subcommand("list", "list entries");
  cl->callback([&] {
    action = [&] {
      const std::vector<CatalogEntry> all = example_catalog();
      if (g.json_out) {
        json arr = json::array();
        for (const CatalogEntry& c : all) arr.push_back(report::to_json(c, false));
        emit(out, report::envelope("catalog", arr, g.seed));
      } else {
        for (const CatalogEntry& c : all) out << c.name << "  " << c.description << "\n";
      }
      return 0;
    };
  });
  auto* cs = cat->add_subcommand("show", "print one entry with its data");
  cs->add_option("name", entry_name, "entry name")->required();
  cs->add_option("--out", out_path, "write the tensor or map to a file");
  cs->callback([&] {
    action = [&] {
      const CatalogEntry c = catalog_entry(entry_name);
      const json j = report::to_json(c, true);
      if (!out_path.empty()) {
        io::write_file(out_path, j.contains("map") ? j["map"] : j["tensor"]);
        return 0;
      }
      emit(out, j);
      return 0;
    };
  });

  // reproduce
  std::string scenario;
  bool timing = false;
  auto* rep = app.add_subcommand("reproduce", "run a named reproduction scenario");
  rep->add_option("scenario", scenario, "scenario id or 'all'")->required();
  rep->add_flag("--timing", timing, "include wall time in JSON");
  rep->callback([&] {
    action = [&] {
      std::vector<std::string> ids;
      if (scenario == "all") {
        ids = scenario_names();
      } else {
        const auto& known = scenario_names();
        if (std::find(known.begin(), known.end(), scenario) == known.end()) {
          err << "unknown scenario: " << scenario << "\nknown:";
          for (const std::string& s : known) err << " " << s;
          err << "\n";
          return 2;
        }
        ids.push_back(scenario);
      }
      const std::uint64_t seed = g.seed_set ? g.seed : 1;
      bool all_pass = true;
      json arr = json::array();
      for (const std::string& id : ids) {
        const ScenarioReport sr = reproduce(id, seed);
        all_pass = all_pass && sr.pass();
        if (g.json_out) {
          arr.push_back(to_json(sr, timing));
          continue;
        }
        out << "== " << id << ": " << (sr.pass() ? "PASS" : "FAIL") << " (" << sr.wall_seconds
            << " s)\n";
        for (const CheckResult& c : sr.checks) {
          out << "  " << (c.pass ? "ok  " : "FAIL") << " [" << c.provenance << "] " << c.name
              << "\n";
          if (!c.pass)
            out << "       expected: " << c.expected << "\n       observed: " << c.observed
                << "\n";
        }
      }
      if (g.json_out) emit(out, report::envelope("scenarios", arr, seed));
      return all_pass ? 0 : 1;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  if (!action) {
    err << app.help();
    return 2;
  }
  try {
    return action();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << to_string(e.kind()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace pcpkit::cli
