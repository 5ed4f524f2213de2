#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "spherechord/analytic.hpp"
#include "spherechord/geometry.hpp"
#include "spherechord/samplers.hpp"
#include "spherechord/stats.hpp"
#include "spherechord/verify.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

constexpr int kExitUsage = 2;
constexpr int kExitBadInput = 3;
constexpr int kExitEfficiency = 4;

class BadInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Locale-independent, 17 significant digits.
std::string g17(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

spherechord::SphericalCap make_cap(int d, double r) {
  spherechord::Vector e = spherechord::Vector::Zero(d);
  e[d - 1] = 1.0;
  return spherechord::SphericalCap(spherechord::UnitVector(std::move(e)), r);
}

// Body file: one normal per line (whitespace-separated components) plus an
// "interior:" line with the witness. '#' starts a comment.
spherechord::ConvexSphericalBody load_body_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadInputError("cannot open body file: " + path);
  std::vector<spherechord::Vector> normals;
  std::optional<spherechord::Vector> interior;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    std::string first;
    if (!(row >> first)) continue;
    const bool is_interior = first == "interior:";
    std::vector<double> values;
    if (!is_interior) {
      double v0 = 0.0;
      std::istringstream head(first);
      if (!(head >> v0)) {
        throw BadInputError("body file line " + std::to_string(lineno) +
                            ": expected numbers or 'interior:'");
      }
      values.push_back(v0);
    }
    double v = 0.0;
    while (row >> v) values.push_back(v);
    if (values.empty()) {
      throw BadInputError("body file line " + std::to_string(lineno) + ": empty vector");
    }
    spherechord::Vector vec(static_cast<int>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) vec[static_cast<int>(i)] = values[i];
    if (is_interior) {
      interior = std::move(vec);
    } else {
      normals.push_back(std::move(vec));
    }
  }
  if (normals.empty()) throw BadInputError("body file has no normals: " + path);
  if (!interior) throw BadInputError("body file has no 'interior:' line: " + path);
  std::vector<spherechord::UnitVector> units;
  units.reserve(normals.size());
  for (auto& n : normals) {
    if (n.size() != interior->size()) {
      throw BadInputError("body file mixes dimensions: " + path);
    }
    units.emplace_back(std::move(n));
  }
  try {
    return spherechord::ConvexSphericalBody(std::move(units),
                                            spherechord::UnitVector(std::move(*interior)));
  } catch (const std::domain_error& e) {
    throw BadInputError(std::string("invalid body: ") + e.what());
  }
}

// Cumulative CDF column: per-segment adaptive quadrature of the density.
std::vector<double> cdf_column(const std::function<double(double)>& density,
                               const std::vector<double>& grid) {
  std::vector<double> cdf(grid.size(), 0.0);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    cdf[i] = cdf[i - 1] +
             spherechord::adaptive_quadrature(density, grid[i - 1], grid[i], 1e-12).value;
  }
  return cdf;
}

void emit_curve(const std::string& format, const nlohmann::ordered_json& meta,
                const std::vector<double>& t, const std::vector<double>& f,
                const std::vector<double>& cdf) {
  if (format == "json") {
    nlohmann::ordered_json out = meta;
    out["t"] = t;
    out["f_delta"] = f;
    out["F_delta"] = cdf;
    std::cout << out.dump(2) << "\n";
    return;
  }
  std::cout << "t,f_delta,F_delta\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::cout << g17(t[i]) << ',' << g17(f[i]) << ',' << g17(cdf[i]) << "\n";
  }
}

struct CapDeltaArgs {
  int dim = 3;
  double radius = 1.0;
  int grid = 512;
  std::string format = "csv";
  bool closed_form = false;
};

int run_cap_delta(const CapDeltaArgs& args) {
  const spherechord::SphericalCap cap = make_cap(args.dim, args.radius);
  std::function<double(double)> density;
  if (args.closed_form) {
    density = [&](double t) {
      return spherechord::even_dim_cap_delta_density(cap, args.dim, t);
    };
  } else {
    density = [&](double t) { return spherechord::cap_delta_density(cap, args.dim, t); };
  }
  const std::vector<double> grid =
      spherechord::uniform_grid(0.0, 2.0 * args.radius, args.grid);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = density(grid[i]);

  nlohmann::ordered_json meta;
  meta["body"] = "cap";
  meta["dim"] = args.dim;
  meta["radius"] = args.radius;
  meta["closed_form"] = args.closed_form;
  emit_curve(args.format, meta, grid, values, cdf_column(density, grid));
  return 0;
}

struct CapSigmaArgs {
  int dim = 3;
  double radius = 1.0;
  int grid = 512;
  std::string format = "csv";
};

int run_cap_sigma(const CapSigmaArgs& args) {
  const spherechord::SphericalCap cap = make_cap(args.dim, args.radius);
  const std::vector<double> grid =
      spherechord::uniform_grid(0.0, 2.0 * args.radius, args.grid);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = 1.0 - spherechord::cap_sigma_survival(cap, args.dim, grid[i]);
  }
  if (args.format == "json") {
    nlohmann::ordered_json out;
    out["body"] = "cap";
    out["dim"] = args.dim;
    out["radius"] = args.radius;
    out["s"] = grid;
    out["F_sigma"] = values;
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << "s,F_sigma\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::cout << g17(grid[i]) << ',' << g17(values[i]) << "\n";
  }
  return 0;
}

struct TransformArgs {
  std::string sigma_cdf_path;
  double volume = 0.0;
  double boundary = 0.0;
  int dim = 3;
  int grid = 512;
  std::string format = "csv";
};

spherechord::SigmaCDF load_sigma_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadInputError("cannot open sigma CDF file: " + path);
  std::vector<double> s;
  std::vector<double> f;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    for (auto& c : line) {
      if (c == ',' || c == ';') c = ' ';
    }
    std::istringstream row(line);
    double a = 0.0;
    double b = 0.0;
    if (!(row >> a >> b)) {
      if (lineno == 1) continue;  // header row
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw BadInputError("sigma CDF file line " + std::to_string(lineno) +
                          ": expected two numeric columns");
    }
    s.push_back(a);
    f.push_back(b);
  }
  if (s.empty()) throw BadInputError("sigma CDF file is empty: " + path);
  try {
    return spherechord::SigmaCDF::from_table(std::move(s), std::move(f));
  } catch (const std::domain_error& e) {
    throw BadInputError(e.what());
  }
}

int run_transform(const TransformArgs& args) {
  const spherechord::SigmaCDF sigma = load_sigma_table(args.sigma_cdf_path);
  const std::vector<double> grid =
      spherechord::uniform_grid(0.0, sigma.support_max(), args.grid);
  spherechord::DensityCurve curve;
  try {
    curve = spherechord::delta_density_from_sigma(sigma, args.volume, args.boundary,
                                                  args.dim, grid);
  } catch (const std::domain_error& e) {
    throw BadInputError(e.what());
  }
  if (curve.clamped_points > 0) {
    std::cerr << "note: clamped " << curve.clamped_points
              << " negative bracket value(s), first at t=" << g17(curve.first_clamped_t)
              << "\n";
  }
  auto density = [&](double t) {
    const double omega = spherechord::sphere_surface_area(args.dim - 1);
    const double coef = spherechord::sphere_surface_area(args.dim) / (2.0 * kPi) *
                        args.boundary / args.volume;
    const double bracket = omega - coef * sigma.integrated_survival(t);
    return std::max(bracket, 0.0) * std::pow(std::sin(t), args.dim - 2) / args.volume;
  };
  nlohmann::ordered_json meta;
  meta["body"] = "sigma-cdf:" + args.sigma_cdf_path;
  meta["dim"] = args.dim;
  meta["volume"] = args.volume;
  meta["boundary"] = args.boundary;
  emit_curve(args.format, meta, curve.grid, curve.values, cdf_column(density, curve.grid));
  return 0;
}

struct McArgs {
  std::string what = "delta";
  std::string body = "cap";
  int dim = 3;
  double radius = 1.0;
  std::string body_file;
  std::int64_t n = 10000;
  std::uint64_t seed = 1;
  int workers = 1;
  bool summary = false;
};

void emit_samples_or_summary(const McArgs& args, const spherechord::SampleBatch& batch,
                             const char* rate_name) {
  const double rate = static_cast<double>(batch.n_accepted()) /
                      static_cast<double>(std::max<std::int64_t>(batch.n_attempted, 1));
  if (args.summary) {
    double mean = 0.0;
    double max = 0.0;
    double min = batch.values.empty() ? 0.0 : batch.values.front();
    for (double v : batch.values) {
      mean += v;
      max = std::max(max, v);
      min = std::min(min, v);
    }
    if (!batch.values.empty()) mean /= static_cast<double>(batch.values.size());
    constexpr int kBins = 32;
    std::vector<std::int64_t> counts(kBins, 0);
    const double width = max > 0.0 ? max : 1.0;
    for (double v : batch.values) {
      const int bin = static_cast<int>(v / width * kBins);
      counts[std::clamp(bin, 0, kBins - 1)] += 1;
    }
    nlohmann::ordered_json out;
    out["what"] = args.what;
    out["body"] = args.body;
    out["dim"] = args.dim;
    out["n"] = batch.n_accepted();
    out["n_attempted"] = batch.n_attempted;
    out[rate_name] = rate;
    out["seed"] = args.seed;
    out["workers"] = args.workers;
    out["mean"] = mean;
    out["min"] = min;
    out["max"] = max;
    out["hist_max"] = width;
    out["hist_counts"] = counts;
    std::cout << out.dump(2) << "\n";
    return;
  }
  if (args.what == "sigma") {
    std::cout << "# " << rate_name << ' ' << g17(rate) << " accepted "
              << batch.n_accepted() << " attempted " << batch.n_attempted << "\n";
  }
  for (double v : batch.values) std::cout << g17(v) << "\n";
}

int run_mc(McArgs& args) {
  spherechord::SampleBatch batch;
  if (args.body == "cap") {
    const spherechord::SphericalCap cap = make_cap(args.dim, args.radius);
    batch = args.what == "sigma"
                ? spherechord::sample_sigma_parallel(cap, args.dim, args.n, args.seed,
                                                     args.workers)
                : spherechord::sample_delta_parallel(cap, args.dim, args.n, args.seed,
                                                     args.workers);
  } else {
    const spherechord::ConvexSphericalBody body = load_body_file(args.body_file);
    args.dim = body.dim();
    batch = args.what == "sigma"
                ? spherechord::sample_sigma_parallel(body, args.dim, args.n, args.seed,
                                                     args.workers)
                : spherechord::sample_delta_parallel(body, args.dim, args.n, args.seed,
                                                     args.workers);
  }
  emit_samples_or_summary(args, batch, args.what == "sigma" ? "hit_rate" : "acceptance_rate");
  return 0;
}

struct VerifyArgs {
  std::string suite = "default";
  std::int64_t n = 100000;
  std::uint64_t seed = 1;
  int workers = 1;
  std::string body_file;
  bool timings = false;
};

int run_verify(const VerifyArgs& args) {
  std::optional<spherechord::ConvexSphericalBody> extra;
  if (!args.body_file.empty()) extra = load_body_file(args.body_file);
  std::vector<spherechord::VerificationReport> reports;
  try {
    reports = spherechord::run_suite(args.suite, args.n, args.seed, args.workers, extra);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  bool all_pass = true;
  for (auto& report : reports) {
    if (!args.timings) report.ms = 0.0;  // keep repeated invocations byte-identical
    std::cout << report.to_json().dump() << "\n";
    all_pass = all_pass && report.pass;
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chord-length and point-distance distributions for convex bodies on spheres"};
  app.require_subcommand(1);

  auto positive_radius = CLI::Validator(
      [](std::string& input) {
        double value = 0.0;
        try {
          value = std::stod(input);
        } catch (...) {
          return std::string("radius must be a number");
        }
        if (!(value > 0.0) || !(value < kPi / 2.0)) {
          return std::string("radius must lie in (0, pi/2) radians");
        }
        return std::string();
      },
      "RADIUS");

  CapDeltaArgs cap_delta;
  auto* cmd_cap_delta = app.add_subcommand("cap-delta", "distance density for a spherical cap");
  cmd_cap_delta->add_option("--dim", cap_delta.dim, "ambient dimension d")
      ->required()
      ->check(CLI::Range(3, 64));
  cmd_cap_delta->add_option("--radius", cap_delta.radius, "cap radius in radians")
      ->required()
      ->check(positive_radius);
  cmd_cap_delta->add_option("--grid", cap_delta.grid, "number of grid points")
      ->check(CLI::Range(2, 1 << 20));
  cmd_cap_delta->add_option("--format", cap_delta.format)->check(CLI::IsMember({"csv", "json"}));
  cmd_cap_delta->add_flag("--closed-form", cap_delta.closed_form,
                          "use the even-dimension elementary form (even d only)");

  CapSigmaArgs cap_sigma;
  auto* cmd_cap_sigma = app.add_subcommand("cap-sigma", "chord-length CDF for a spherical cap");
  cmd_cap_sigma->add_option("--dim", cap_sigma.dim)->required()->check(CLI::Range(3, 64));
  cmd_cap_sigma->add_option("--radius", cap_sigma.radius)->required()->check(positive_radius);
  cmd_cap_sigma->add_option("--grid", cap_sigma.grid)->check(CLI::Range(2, 1 << 20));
  cmd_cap_sigma->add_option("--format", cap_sigma.format)->check(CLI::IsMember({"csv", "json"}));

  TransformArgs transform;
  auto* cmd_transform =
      app.add_subcommand("transform", "distance density from a chord-length CDF table");
  cmd_transform->add_option("--sigma-cdf", transform.sigma_cdf_path, "CSV file: s,F_sigma")
      ->required();
  cmd_transform->add_option("--volume", transform.volume, "|K|")->required();
  cmd_transform->add_option("--boundary", transform.boundary, "|dK|")->required();
  cmd_transform->add_option("--dim", transform.dim)->required()->check(CLI::Range(3, 64));
  cmd_transform->add_option("--grid", transform.grid)->check(CLI::Range(2, 1 << 20));
  cmd_transform->add_option("--format", transform.format)->check(CLI::IsMember({"csv", "json"}));

  McArgs mc;
  auto* cmd_mc = app.add_subcommand("mc", "raw Monte Carlo samples of delta or sigma");
  cmd_mc->add_option("--what", mc.what)->required()->check(CLI::IsMember({"delta", "sigma"}));
  cmd_mc->add_option("--body", mc.body)->required()->check(CLI::IsMember({"cap", "halfspaces"}));
  cmd_mc->add_option("--dim", mc.dim)->check(CLI::Range(3, 64));
  cmd_mc->add_option("--radius", mc.radius)->check(positive_radius);
  cmd_mc->add_option("--body-file", mc.body_file, "halfspace body description");
  cmd_mc->add_option("--n", mc.n)->required()->check(CLI::Range(1, 1 << 30));
  cmd_mc->add_option("--seed", mc.seed);
  cmd_mc->add_option("--workers", mc.workers)->check(CLI::Range(1, 256));
  cmd_mc->add_flag("--summary", mc.summary, "emit a JSON summary instead of raw samples");

  VerifyArgs verify;
  auto* cmd_verify = app.add_subcommand("verify", "run identity checks; one JSON report per line");
  cmd_verify->add_option("--suite", verify.suite, "default|crofton|bp|theorem|cap-sigma");
  cmd_verify->add_option("--n", verify.n)->check(CLI::Range(100, 1 << 30));
  cmd_verify->add_option("--seed", verify.seed);
  cmd_verify->add_option("--workers", verify.workers)->check(CLI::Range(1, 256));
  cmd_verify->add_option("--body-file", verify.body_file,
                         "replace the built-in orthant in general-body checks");
  cmd_verify->add_flag("--timings", verify.timings, "include measured wall times in reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cmd_cap_delta->parsed()) {
      if (cap_delta.closed_form && cap_delta.dim % 2 != 0) {
        std::cerr << "--closed-form requires an even dimension\n";
        return kExitUsage;
      }
      return run_cap_delta(cap_delta);
    }
    if (cmd_cap_sigma->parsed()) return run_cap_sigma(cap_sigma);
    if (cmd_transform->parsed()) return run_transform(transform);
    if (cmd_mc->parsed()) {
      if (mc.body == "halfspaces" && mc.body_file.empty()) {
        std::cerr << "--body halfspaces requires --body-file\n";
        return kExitUsage;
      }
      return run_mc(mc);
    }
    if (cmd_verify->parsed()) return run_verify(verify);
  } catch (const BadInputError& e) {
    std::cerr << e.what() << "\n";
    return kExitBadInput;
  } catch (const spherechord::EfficiencyError& e) {
    std::cerr << e.what() << "\n";
    return kExitEfficiency;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
