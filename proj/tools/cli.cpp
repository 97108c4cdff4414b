#include "cli.hpp"

#include "latbound/cone.hpp"
#include "latbound/ell1_plane.hpp"
#include "latbound/lattice.hpp"
#include "latbound/quasi.hpp"
#include "latbound/ray_code.hpp"
#include "latbound/rays.hpp"
#include "latbound/svg.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace latbound::cli {

namespace {

using json = nlohmann::ordered_json;

struct Assertion {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct Result {
  json input = json::object();
  json output = json::object();
  std::string text;
  std::string csv;  // empty: derived from output
  std::vector<Assertion> assertions;
  std::string svg;  // figure, for commands that draw one
  bool input_error = false;
};

using Handler = std::function<Result()>;

// Input errors that are not CLI11 parse errors.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

json number(const BigInt& value) {
  if (value >= std::numeric_limits<std::int64_t>::min() && value <= std::numeric_limits<std::int64_t>::max()) {
    return value.convert_to<std::int64_t>();
  }
  return to_string(value);
}

std::string point_text(const LatticePoint& p) { return "(" + to_string(p) + ")"; }

RayCode ray_arg(const std::string& literal) {
  RayCode raw = parse_ray(literal);
  auto canonical = canonicalize(raw);
  if (!canonical) throw std::invalid_argument("'" + literal + "' uses opposite directions and is not a geodesic ray");
  require_valid(*canonical);
  return *canonical;
}

std::uint64_t count_arg(const std::string& text, const std::string& what) {
  BigInt value = parse_integer(text);
  if (value < 0 || value > std::numeric_limits<std::int64_t>::max()) {
    throw std::invalid_argument(what + " must be a nonnegative integer, got '" + text + "'");
  }
  return value.convert_to<std::uint64_t>();
}

std::pair<Rational, Rational> rational_pair(const std::string& text, const std::string& what) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw std::invalid_argument(what + " must read 'a,b', got '" + text + "'");
  return {parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1))};
}

std::string bool_text(bool value) { return value ? "true" : "false"; }

json verdict_json(const AsymptoticVerdict& verdict) {
  json out;
  if (const auto* a = std::get_if<Asymptotic>(&verdict)) {
    out["kind"] = "asymptotic";
    out["bound"] = number(a->bound);
    out["attained"] = a->attained;
  } else if (const auto* d = std::get_if<Divergent>(&verdict)) {
    out["kind"] = "divergent";
    out["witness"] = d->witness;
    out["threshold"] = d->threshold;
    out["distance"] = d->distance;
  } else {
    out["kind"] = "unknown";
    out["horizon"] = std::get<Unknown>(verdict).horizon;
  }
  return out;
}

std::string side_name(InequalitySide side) { return side == InequalitySide::Lower ? "lower" : "upper"; }

json violation_json(const Violation& v) {
  return json{{"p", to_string(v.pair.p)}, {"q", to_string(v.pair.q)}, {"side", side_name(v.side)},
              {"margin", v.margin}};
}

std::string violation_text(const Violation& v) {
  std::ostringstream out;
  out << side_name(v.side) << " inequality fails at (" << to_string(v.pair.p) << ") (" << to_string(v.pair.q)
      << "), margin " << v.margin;
  return out.str();
}

std::string csv_cell(const json& value) {
  std::string text = value.is_string() ? value.get<std::string>() : value.dump();
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

// One header row of output keys and one row of values.
std::string generic_csv(const json& output) {
  std::string header;
  std::string row;
  for (auto it = output.begin(); it != output.end(); ++it) {
    if (!header.empty()) {
      header += ',';
      row += ',';
    }
    header += it.key();
    row += csv_cell(it.value());
  }
  return header + "\n" + row + "\n";
}

json assertions_json(const std::vector<Assertion>& assertions) {
  json out = json::array();
  for (const auto& a : assertions) {
    out.push_back({{"name", a.name}, {"expected", a.expected}, {"actual", a.actual}, {"pass", a.pass}});
  }
  return out;
}

Assertion check(std::string name, std::string expected, std::string actual) {
  bool pass = expected == actual;
  return {std::move(name), std::move(expected), std::move(actual), pass};
}

QIMap map_arg(const std::string& name, const std::string& gens, const std::string& gens2) {
  if (name == "floor") return QIMap::floor();
  if (name == "inclusion") return QIMap::inclusion();
  if (name == "genset") return QIMap::genset(parse_generating_set(gens), parse_generating_set(gens2));
  throw UsageError("--map must be floor, inclusion or genset, got '" + name + "'");
}

QIParams params_arg(const std::string& k, const std::string& k_squared, const std::string& c) {
  if (!k.empty() && !k_squared.empty()) throw UsageError("give --k or --k-squared, not both");
  if (k.empty() && k_squared.empty()) throw UsageError("one of --k or --k-squared is required");
  Rational c_value = parse_rational(c);
  if (!k.empty()) return QIParams(parse_rational(k), c_value);
  return QIParams::from_k_squared(parse_rational(k_squared), c_value);
}

SearchStrategy strategy_arg(const std::string& name) {
  if (name == "grid") return SearchStrategy::Grid;
  if (name == "diagonal-ray") return SearchStrategy::DiagonalRay;
  if (name == "random") return SearchStrategy::Random;
  throw UsageError("--strategy must be grid, diagonal-ray or random, got '" + name + "'");
}

SvgWindow window_arg(const std::string& text) {
  std::vector<std::int64_t> v;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    BigInt value = parse_integer(part);
    if (abs(value) > 100000) throw std::invalid_argument("window coordinate out of range");
    v.push_back(value.convert_to<std::int64_t>());
  }
  if (v.size() != 4) throw std::invalid_argument("--window must read xmin,ymin,xmax,ymax");
  return {v[0], v[1], v[2], v[3]};
}

// Smallest integer window holding every point, padded by one unit.
SvgWindow fit_window(const std::vector<SvgPath>& paths) {
  SvgWindow w{0, 0, 1, 1};
  for (const auto& path : paths) {
    for (const auto& p : path.points) {
      w.xmin = std::min(w.xmin, floor(p.x).convert_to<std::int64_t>());
      w.ymin = std::min(w.ymin, floor(p.y).convert_to<std::int64_t>());
      w.xmax = std::max(w.xmax, ceil(p.x).convert_to<std::int64_t>());
      w.ymax = std::max(w.ymax, ceil(p.y).convert_to<std::int64_t>());
    }
  }
  return {w.xmin - 1, w.ymin - 1, w.xmax + 1, w.ymax + 1};
}

std::vector<PlanePoint> polyline_points(const Polyline& path, const Rational& t) {
  std::vector<PlanePoint> points = path.vertices;
  if (path.is_ray() && t > path.finite_length()) points.push_back(path.at(t));
  return points;
}

const std::vector<Subcommand> kRegistry = {
    {"metric", "word_metric"},
    {"bfs-metric", "bfs_metric"},
    {"count", "geodesic_count"},
    {"enumerate", "enumerate_geodesics"},
    {"is-geodesic", "is_geodesic_word"},
    {"genset-lipschitz", "generating_set_lipschitz"},
    {"validate", "validate"},
    {"digit", "digit_at"},
    {"point", "point_at"},
    {"nmap", "n_map"},
    {"bmap", "b_map"},
    {"digitize", "digitize"},
    {"direction", "direction_of"},
    {"asymptotic", "are_asymptotic"},
    {"divergence", "divergence_time"},
    {"splice", "splice"},
    {"ball", "ball_contains"},
    {"floor", "floor_map"},
    {"qi-check", "check_embedding"},
    {"qi-violate", "find_violation"},
    {"qi-surj", "quasi_surjectivity_bound"},
    {"roundtrip", "roundtrip_displacement"},
    {"ell1-distance", "ell1_distance"},
    {"ell1-check", "is_geodesic_polyline+check_monotone_commitment"},
    {"ell1-splice", "splice_plane"},
    {"project", "project_to_lattice"},
    {"demo trivial-topology", "trivial_topology_demo"},
    {"demo cardinality", "demo_cardinality"},
    {"demo cone", "cone_lengths"},
    {"render", "render_svg"},
};

class Cli {
 public:
  Cli() : app_("Word metrics, geodesic rays and quasi-isometries of Z^2", "latbound") {
    app_.require_subcommand(1);
    app_.fallthrough();
    app_.add_option("--format", format_, "Output format: text, json, csv or svg")
        ->check(CLI::IsMember({"text", "json", "csv", "svg"}));
    app_.add_option("--out", out_path_, "Write the figure (or the report) to this path");
    app_.add_option("--seed", seed_, "Seed for sampled checks");
    define_lattice();
    define_rays();
    define_quasi();
    define_plane();
    define_demos();
  }

  int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app_.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
      out << help_text();
      return kOk;
    } catch (const CLI::CallForAllHelp& e) {
      out << app_.help("", CLI::AppFormatMode::All);
      return kOk;
    } catch (const CLI::ParseError& e) {
      err << "usage error: " << e.what() << "\n";
      return kUsageError;
    }

    const Command* chosen = selected();
    if (chosen == nullptr) {
      err << "usage error: no subcommand given\n";
      return kUsageError;
    }
    Result result;
    try {
      result = chosen->handler();
    } catch (const UsageError& e) {
      err << "usage error: " << chosen->name << ": " << e.what() << "\n";
      return kUsageError;
    } catch (const std::exception& e) {
      err << "error: " << chosen->name << ": " << e.what() << "\n";
      return kUsageError;
    }
    try {
      return emit(*chosen, result, out, err);
    } catch (const std::exception& e) {
      err << "error: " << chosen->name << ": " << e.what() << "\n";
      return kUsageError;
    }
  }

 private:
  struct Command {
    std::string name;
    std::string operation;
    CLI::App* app;
    Handler handler;
    bool draws = false;
  };

  // Options of one subcommand, stored in maps so bound references stay valid.
  class Def {
   public:
    Def(Cli& cli, CLI::App* app, std::string key) : cli_(cli), app_(app), key_(std::move(key)) {}

    const std::string& arg(const std::string& name, const std::string& help) {
      std::string& slot = cli_.values_[key_ + "." + name];
      app_->add_option(name, slot, help)->required();
      return slot;
    }
    const std::vector<std::string>& args(const std::string& name, const std::string& help) {
      std::vector<std::string>& slot = cli_.lists_[key_ + "." + name];
      app_->add_option(name, slot, help);
      return slot;
    }
    const std::string& opt(const std::string& flag, const std::string& help, std::string initial = "") {
      std::string& slot = cli_.values_[key_ + "." + flag];
      slot = std::move(initial);
      app_->add_option(flag, slot, help)->capture_default_str();
      return slot;
    }
    const std::vector<std::string>& many(const std::string& flag, const std::string& help) {
      std::vector<std::string>& slot = cli_.lists_[key_ + "." + flag];
      app_->add_option(flag, slot, help)->allow_extra_args(false);
      return slot;
    }
    const bool& flag(const std::string& flag, const std::string& help) {
      bool& slot = cli_.flags_[key_ + "." + flag];
      app_->add_flag(flag, slot, help);
      return slot;
    }

   private:
    Cli& cli_;
    CLI::App* app_;
    std::string key_;
  };

  Def command(CLI::App& parent, const std::string& full_name, const std::string& description,
              std::function<Handler(Def&)> define, bool draws = false) {
    auto entry = std::find_if(kRegistry.begin(), kRegistry.end(),
                              [&](const Subcommand& s) { return s.name == full_name; });
    if (entry == kRegistry.end()) throw std::logic_error("unregistered subcommand " + full_name);
    std::string local = full_name.substr(full_name.rfind(' ') + 1);
    CLI::App* sub = parent.add_subcommand(local, description);
    Def def(*this, sub, full_name);
    commands_.push_back({full_name, entry->operation, sub, define(def), draws});
    return def;
  }

  const Command* selected() const {
    for (const auto& c : commands_) {
      if (c.app->parsed()) return &c;
    }
    return nullptr;
  }

  std::string help_text() const {
    for (auto it = commands_.rbegin(); it != commands_.rend(); ++it) {
      if (it->app->parsed()) return it->app->help();
    }
    if (demo_->parsed()) return demo_->help();
    return app_.help();
  }

  int emit(const Command& command, const Result& result, std::ostream& out, std::ostream& err) {
    json output = result.output;
    std::vector<std::string> artifacts;
    if (command.draws && !out_path_.empty()) {
      write_file(out_path_, result.svg);
      artifacts.push_back(out_path_);
    }
    if (!result.assertions.empty() || command.draws) {
      output["assertions"] = assertions_json(result.assertions);
      output["artifacts"] = artifacts;
    }

    std::string report;
    if (format_ == "svg") {
      if (!command.draws) throw UsageError("--format svg only applies to render and demo trivial-topology");
      report = result.svg;
    } else if (format_ == "json") {
      json doc{{"op", command.operation}, {"input", result.input}, {"output", output}};
      report = doc.dump(2) + "\n";
    } else if (format_ == "csv") {
      report = result.csv.empty() ? generic_csv(result.output) : result.csv;
    } else {
      report = result.text;
      for (const auto& a : result.assertions) {
        report += std::string(a.pass ? "PASS " : "FAIL ") + a.name + ": expected " + a.expected + ", got " +
                  a.actual + "\n";
      }
      for (const auto& path : artifacts) report += "wrote " + path + "\n";
    }

    if (!command.draws && !out_path_.empty()) {
      write_file(out_path_, report);
    } else {
      out << report;
    }
    if (result.input_error) return kUsageError;
    bool failed = std::any_of(result.assertions.begin(), result.assertions.end(),
                              [](const Assertion& a) { return !a.pass; });
    if (failed) err << command.name << ": assertion failed\n";
    return failed ? kAssertionFailed : kOk;
  }

  static void write_file(const std::string& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write '" + path + "'");
    file << content;
    if (!file) throw std::runtime_error("cannot write '" + path + "'");
  }

  void define_lattice() {
    command(app_, "metric", "Word metric (l1 distance) between two lattice points", [](Def& d) -> Handler {
      auto& p = d.arg("p", "Point x,y");
      auto& q = d.arg("q", "Point x,y");
      return [&] {
        Result r;
        r.input = {{"p", p}, {"q", q}};
        BigInt value = word_metric(parse_point(p), parse_point(q));
        r.output = {{"distance", number(value)}};
        r.text = to_string(value) + "\n";
        return r;
      };
    });

    command(app_, "bfs-metric", "Graph distance under any generating set, by BFS", [](Def& d) -> Handler {
      auto& p = d.arg("p", "Point x,y");
      auto& q = d.arg("q", "Point x,y");
      auto& gens = d.opt("--gens", "Generators 'x,y;x,y' or 'standard'", "standard");
      auto& cap = d.opt("--cap", "Radius cap", "20");
      return [&] {
        Result r;
        r.input = {{"p", p}, {"q", q}, {"gens", gens}, {"cap", cap}};
        std::uint64_t radius = count_arg(cap, "--cap");
        if (radius == 0) throw std::invalid_argument("--cap must be at least 1");
        auto value = bfs_metric(parse_generating_set(gens), parse_point(p), parse_point(q),
                                static_cast<std::int64_t>(radius));
        r.output = {{"distance", value ? json(*value) : json("exceeded")}};
        r.text = (value ? std::to_string(*value) : std::string("exceeded")) + "\n";
        return r;
      };
    });

    command(app_, "count", "Number of geodesic words between two points", [](Def& d) -> Handler {
      auto& p = d.arg("p", "Point x,y");
      auto& q = d.arg("q", "Point x,y");
      return [&] {
        Result r;
        r.input = {{"p", p}, {"q", q}};
        BigInt value = geodesic_count(parse_point(p), parse_point(q));
        r.output = {{"count", number(value)}};
        r.text = to_string(value) + "\n";
        return r;
      };
    });

    command(app_, "enumerate", "Geodesic words in lexicographic order", [](Def& d) -> Handler {
      auto& p = d.arg("p", "Point x,y");
      auto& q = d.arg("q", "Point x,y");
      auto& limit = d.opt("--limit", "Maximum number of words", "100");
      return [&] {
        Result r;
        r.input = {{"p", p}, {"q", q}, {"limit", limit}};
        std::uint64_t n = count_arg(limit, "--limit");
        if (n == 0) throw std::invalid_argument("--limit must be at least 1");
        auto words = enumerate_geodesics(parse_point(p), parse_point(q), n);
        json list = json::array();
        r.csv = "word\n";
        for (const auto& w : words) {
          list.push_back(w.digits());
          r.text += w.digits() + "\n";
          r.csv += w.digits() + "\n";
        }
        r.output = {{"count", words.size()}, {"words", list}};
        return r;
      };
    });

    command(app_, "is-geodesic", "Whether a word never backtracks", [](Def& d) -> Handler {
      auto& word = d.arg("word", "Digit string over 0..4");
      return [&] {
        Result r;
        r.input = {{"word", word}};
        Word w(word);
        bool value = is_geodesic_word(w);
        r.output = {{"geodesic", value}, {"length", w.length()}, {"distance", number(word_metric({}, w.endpoint()))}};
        r.text = bool_text(value) + "\n";
        return r;
      };
    });

    command(app_, "genset-lipschitz", "Lipschitz constants between two generating sets", [](Def& d) -> Handler {
      auto& gens = d.opt("--gens", "First generating set", "standard");
      auto& gens2 = d.opt("--gens2", "Second generating set", "standard");
      auto& cap = d.opt("--cap", "Radius cap", "64");
      return [&] {
        Result r;
        r.input = {{"gens", gens}, {"gens2", gens2}, {"cap", cap}};
        std::uint64_t radius = count_arg(cap, "--cap");
        auto value = generating_set_lipschitz(parse_generating_set(gens), parse_generating_set(gens2),
                                              static_cast<std::int64_t>(radius));
        r.output = {{"m", value.m}, {"n", value.n}};
        r.text = "m = " + std::to_string(value.m) + ", n = " + std::to_string(value.n) + "\n";
        return r;
      };
    });
  }

  void define_rays() {
    command(app_, "validate", "Whether a ray literal is a canonical geodesic ray code", [](Def& d) -> Handler {
      auto& ray = d.arg("ray", "Ray literal");
      return [&] {
        Result r;
        r.input = {{"ray", ray}};
        RayCode code = parse_ray(ray);
        bool value = validate(code);
        auto canonical = canonicalize(code);
        r.output = {{"valid", value}, {"canonical", canonical ? json(to_string(*canonical)) : json(nullptr)}};
        r.text = bool_text(value);
        if (!value) r.text += canonical ? " (canonical form " + to_string(*canonical) + ")" : " (backtracks)";
        r.text += "\n";
        return r;
      };
    });

    command(app_, "digit", "The n-th digit of a ray, n >= 1", [](Def& d) -> Handler {
      auto& ray = d.arg("ray", "Ray literal");
      auto& n = d.arg("n", "Position, from 1");
      return [&] {
        Result r;
        r.input = {{"ray", ray}, {"n", n}};
        std::uint64_t pos = count_arg(n, "n");
        if (pos == 0) throw std::invalid_argument("digit positions start at 1");
        int value = digit_at(ray_arg(ray), pos);
        r.output = {{"digit", value}};
        r.text = std::to_string(value) + "\n";
        return r;
      };
    });

    command(app_, "point", "Position of a ray at integer time t", [](Def& d) -> Handler {
      auto& ray = d.arg("ray", "Ray literal");
      auto& t = d.arg("t", "Time");
      return [&] {
        Result r;
        r.input = {{"ray", ray}, {"t", t}};
        LatticePoint p = point_at(ray_arg(ray), count_arg(t, "t"));
        r.output = {{"point", to_string(p)}};
        r.text = to_string(p) + "\n";
        return r;
      };
    });

    command(app_, "nmap", "N(f) = m + B(f - m)", [](Def& d) -> Handler {
      auto& ray = d.arg("ray", "Ray literal");
      auto& bits = d.opt("--bits", "Enclosure width 2^-bits for staircase tails", "");
      return [&] {
        Result r;
        r.input = {{"ray", ray}};
        unsigned precision = bits.empty() ? horizon_precision() : static_cast<unsigned>(count_arg(bits, "--bits"));
        RayCode code = ray_arg(ray);
        NMapValue value = n_map(code, precision);
        r.input["ray"] = to_string(code);
        if (const auto* exact = std::get_if<Rational>(&value)) {
          r.output = {{"m", min_digit(code)}, {"value", to_string(*exact)}};
          r.text = to_string(*exact) + "\n";
        } else {
          const auto& box = std::get<RationalInterval>(value);
          r.output = {{"m", min_digit(code)}, {"lo", to_string(box.lo)}, {"hi", to_string(box.hi)},
                      {"bits", precision}};
          r.text = "[" + to_decimal(box.lo, 20, Rounding::Down) + ", " + to_decimal(box.hi, 20, Rounding::Up) + "]\n";
        }
        return r;
      };
    });

    command(app_, "bmap", "B of a binary sequence '<preamble>(<period>)'", [](Def& d) -> Handler {
      auto& seq = d.arg("sequence", "Binary sequence literal");
      return [&] {
        Result r;
        r.input = {{"sequence", seq}};
        Rational value = b_map(parse_binary_sequence(seq));
        r.output = {{"value", to_string(value)}};
        r.text = to_string(value) + "\n";
        return r;
      };
    });

    command(app_, "digitize", "The staircase ray of a direction", [](Def& d) -> Handler {
      auto& dir = d.arg("direction", "Direction p,q (integers or surds such as sqrt(2))");
      return [&] {
        Result r;
        r.input = {{"direction", dir}};
        RayCode code = digitize(parse_direction(dir));
        r.output = {{"ray", to_string(code)}};
        r.text = to_string(code) + "\n";
        return r;
      };
    });

    command(app_, "direction", "l1-normalized direction of a ray", [](Def& d) -> Handler {
      auto& ray = d.arg("ray", "Ray literal");
      return [&] {
        Result r;
        r.input = {{"ray", ray}};
        PlaneDirection dir = direction_of(ray_arg(ray));
        r.output = {{"x", dir.x.str()}, {"y", dir.y.str()}};
        r.text = to_string(dir) + "\n";
        return r;
      };
    });

    command(app_, "asymptotic", "Bounded-distance verdict for two rays", [](Def& d) -> Handler {
      auto& f = d.arg("f", "Ray literal");
      auto& g = d.arg("g", "Ray literal");
      auto& threshold = d.opt("--threshold", "Distance a divergence witness must exceed", "10");
      return [&] {
        Result r;
        r.input = {{"f", f}, {"g", g}, {"threshold", threshold}};
        auto verdict = are_asymptotic(ray_arg(f), ray_arg(g),
                                      static_cast<std::int64_t>(count_arg(threshold, "--threshold")));
        r.output = verdict_json(verdict);
        r.text = describe(verdict) + "\n";
        return r;
      };
    });

    command(app_, "divergence", "First time the distance between two rays exceeds M", [](Def& d) -> Handler {
      auto& f = d.arg("f", "Ray literal");
      auto& g = d.arg("g", "Ray literal");
      auto& m = d.opt("--M", "Distance bound", "10");
      auto& horizon = d.opt("--horizon", "Largest time examined", "1000000");
      return [&] {
        Result r;
        r.input = {{"f", f}, {"g", g}, {"M", m}, {"horizon", horizon}};
        auto t = divergence_time(ray_arg(f), ray_arg(g), static_cast<std::int64_t>(count_arg(m, "--M")),
                                 count_arg(horizon, "--horizon"));
        r.output = {{"t", t ? json(*t) : json("not-found")}};
        r.text = (t ? std::to_string(*t) : std::string("not-found")) + "\n";
        return r;
      };
    });

    command(app_, "splice", "Follow f for s steps, then g's steps", [](Def& d) -> Handler {
      auto& f = d.arg("f", "Ray literal");
      auto& g = d.arg("g", "Ray literal");
      auto& s = d.arg("s", "Splice time");
      return [&] {
        Result r;
        r.input = {{"f", f}, {"g", g}, {"s", s}};
        RayCode code = splice(ray_arg(f), ray_arg(g), count_arg(s, "s"));
        r.output = {{"ray", to_string(code)}};
        r.text = to_string(code) + "\n";
        return r;
      };
    });

    command(app_, "ball", "Whether g lies in the neighbourhood B_K(f, eps)", [](Def& d) -> Handler {
      auto& f = d.arg("f", "Center ray literal");
      auto& g = d.arg("g", "Candidate ray literal");
      auto& k = d.opt("--K", "Time interval a,b", "0,1");
      auto& eps = d.opt("--eps", "Radius", "1");
      return [&] {
        Result r;
        r.input = {{"f", f}, {"g", g}, {"K", k}, {"eps", eps}};
        auto [a, b] = rational_pair(k, "--K");
        bool value = ball_contains(ray_arg(f), ray_arg(g), BallQuery(a, b, parse_rational(eps)));
        r.output = {{"contains", value}};
        r.text = bool_text(value) + "\n";
        return r;
      };
    });
  }

  void define_quasi() {
    command(app_, "floor", "The floor map R^2 -> Z^2", [](Def& d) -> Handler {
      auto& p = d.arg("p", "Rational point x,y");
      return [&] {
        Result r;
        r.input = {{"p", p}};
        LatticePoint value = floor_map(parse_plane_point(p));
        r.output = {{"point", to_string(value)}};
        r.text = to_string(value) + "\n";
        return r;
      };
    });

    command(app_, "qi-check", "Check both quasi-isometry inequalities on sampled or given pairs",
            [this](Def& d) -> Handler {
      auto& map = d.opt("--map", "floor, inclusion or genset", "floor");
      auto& k = d.opt("--k", "Multiplicative constant k");
      auto& k2 = d.opt("--k-squared", "k^2, for irrational k");
      auto& c = d.opt("--c", "Additive constant c", "0");
      auto& box = d.opt("--box", "Sample box lo,hi", "-1000,1000");
      auto& count = d.opt("--count", "Number of sampled pairs", "1000");
      auto& pairs = d.many("--pair", "Explicit pair 'x1,y1;x2,y2' (repeatable)");
      auto& gens = d.opt("--gens", "Domain generating set for genset", "standard");
      auto& gens2 = d.opt("--gens2", "Codomain generating set for genset", "standard");
      return [&, this] {
        Result r;
        QIMap qi_map = map_arg(map, gens, gens2);
        QIParams params = params_arg(k, k2, c);
        r.input = {{"map", qi_map.id()}, {"k", params.k_string()}, {"c", to_string(params.c())}};
        QIReport report;
        if (!pairs.empty()) {
          std::vector<PointPair> list;
          for (const auto& text : pairs) {
            auto semi = text.find(';');
            if (semi == std::string::npos) throw UsageError("--pair must read 'x1,y1;x2,y2'");
            list.push_back({parse_plane_point(text.substr(0, semi)), parse_plane_point(text.substr(semi + 1))});
          }
          r.input["pairs"] = pairs;
          report = check_embedding(qi_map, params, std::span<const PointPair>(list));
        } else {
          auto [lo, hi] = rational_pair(box, "--box");
          SampleSpec spec{lo, hi, static_cast<std::size_t>(count_arg(count, "--count")), seed_};
          r.input["box"] = box;
          r.input["count"] = spec.count;
          r.input["seed"] = seed_;
          report = check_embedding(qi_map, params, spec);
        }
        json violations = json::array();
        r.csv = "p,q,side,margin\n";
        for (const auto& v : report.violations) {
          violations.push_back(violation_json(v));
          r.csv += csv_cell(to_string(v.pair.p)) + "," + csv_cell(to_string(v.pair.q)) + "," + side_name(v.side) +
                   "," + json(v.margin).dump() + "\n";
        }
        r.output = {{"map", report.map},
                    {"k", report.params.k_string()},
                    {"c", to_string(report.params.c())},
                    {"checked", report.checked},
                    {"violations", violations},
                    {"D", "not-checked"}};
        if (report.sample) {
          r.output["sample"] = {{"lo", to_string(report.sample->lo)},
                                {"hi", to_string(report.sample->hi)},
                                {"count", report.sample->count},
                                {"seed", report.sample->seed}};
        }
        r.text = report.map + " with k = " + report.params.k_string() + ", c = " + to_string(report.params.c()) +
                 ": " + std::to_string(report.checked) + " pairs checked, " +
                 std::to_string(report.violations.size()) + " violations\n";
        for (const auto& v : report.violations) r.text += "  " + violation_text(v) + "\n";
        return r;
      };
    });

    command(app_, "qi-violate", "Search for a pair violating a quasi-isometry inequality",
            [this](Def& d) -> Handler {
      auto& map = d.opt("--map", "floor, inclusion or genset", "floor");
      auto& k = d.opt("--k", "Multiplicative constant k");
      auto& k2 = d.opt("--k-squared", "k^2, for irrational k");
      auto& c = d.opt("--c", "Additive constant c", "0");
      auto& strategy = d.opt("--strategy", "grid, diagonal-ray or random", "diagonal-ray");
      auto& budget = d.opt("--budget", "Diagonal length, grid half-width or random pair count", "1000");
      auto& gens = d.opt("--gens", "Domain generating set for genset", "standard");
      auto& gens2 = d.opt("--gens2", "Codomain generating set for genset", "standard");
      return [&, this] {
        Result r;
        QIMap qi_map = map_arg(map, gens, gens2);
        QIParams params = params_arg(k, k2, c);
        r.input = {{"map", qi_map.id()}, {"k", params.k_string()}, {"c", to_string(params.c())},
                   {"strategy", strategy}, {"budget", budget}, {"seed", seed_}};
        auto witness = find_violation(qi_map, params, strategy_arg(strategy), count_arg(budget, "--budget"), seed_);
        r.output = {{"witness", witness ? violation_json(*witness) : json(nullptr)}};
        r.text = (witness ? violation_text(*witness) : std::string("none")) + "\n";
        if (witness) {
          r.csv = "p,q,side,margin\n" + csv_cell(to_string(witness->pair.p)) + "," +
                  csv_cell(to_string(witness->pair.q)) + "," + side_name(witness->side) + "," +
                  json(witness->margin).dump() + "\n";
        } else {
          r.csv = "p,q,side,margin\n";
        }
        return r;
      };
    });

    command(app_, "qi-surj", "Quasi-surjectivity constant D over probe targets", [](Def& d) -> Handler {
      auto& map = d.opt("--map", "floor, inclusion or genset", "inclusion");
      auto& probes = d.args("targets", "Probe points x,y");
      auto& gens = d.opt("--gens", "Domain generating set for genset", "standard");
      auto& gens2 = d.opt("--gens2", "Codomain generating set for genset", "standard");
      return [&] {
        Result r;
        QIMap qi_map = map_arg(map, gens, gens2);
        r.input = {{"map", qi_map.id()}, {"targets", probes}};
        std::vector<PlanePoint> points;
        for (const auto& text : probes) points.push_back(parse_plane_point(text));
        auto bound = quasi_surjectivity_bound(qi_map, points);
        r.output = {{"max_squared_distance", to_string(bound.max_squared_distance)}, {"D", number(bound.d)}};
        r.text = "D = " + to_string(bound.d) + " (largest squared distance " +
                 to_string(bound.max_squared_distance) + ")\n";
        return r;
      };
    });

    command(app_, "roundtrip", "Largest squared displacement |p - floor(p)|^2", [this](Def& d) -> Handler {
      auto& points = d.args("points", "Rational points x,y (sampled when none are given)");
      auto& count = d.opt("--count", "Number of sampled points when none are given", "1000");
      return [&, this] {
        Result r;
        std::vector<PlanePoint> samples;
        if (!points.empty()) {
          for (const auto& text : points) samples.push_back(parse_plane_point(text));
          r.input = {{"points", points}};
        } else {
          SampleSpec spec{-1000, 1000, static_cast<std::size_t>(count_arg(count, "--count")), seed_};
          for (auto& pair : sample_pairs(QIMap::floor(), spec)) samples.push_back(pair.p);
          r.input = {{"count", spec.count}, {"seed", seed_}};
        }
        Rational value = roundtrip_displacement(samples);
        r.output = {{"squared", to_string(value)}, {"below_two", value < 2}};
        r.text = to_string(value) + "\n";
        return r;
      };
    });
  }

  void define_plane() {
    command(app_, "ell1-distance", "l1 distance between two rational points", [](Def& d) -> Handler {
      auto& p = d.arg("p", "Rational point x,y");
      auto& q = d.arg("q", "Rational point x,y");
      return [&] {
        Result r;
        r.input = {{"p", p}, {"q", q}};
        Rational value = ell1_distance(parse_plane_point(p), parse_plane_point(q));
        r.output = {{"distance", to_string(value)}};
        r.text = to_string(value) + "\n";
        return r;
      };
    });

    command(app_, "ell1-check", "Geodesic test and monotone commitment of a polyline", [](Def& d) -> Handler {
      auto& path = d.arg("path", "Polyline '0,0;1,1;2,1 >1/0'");
      return [&] {
        Result r;
        r.input = {{"path", path}};
        Polyline line = parse_polyline(path);
        bool geodesic = is_geodesic_polyline(line);
        auto violation = check_monotone_commitment(line);
        r.output = {{"geodesic", geodesic},
                    {"monotone", has_monotone_coordinates(line)},
                    {"length", to_string(line.finite_length())},
                    {"endpoint_distance", to_string(ell1_distance(line.vertices.front(), line.vertices.back()))},
                    {"commitment_violation", violation ? json(to_string(*violation)) : json(nullptr)}};
        r.text = "geodesic: " + bool_text(geodesic) + "\n" + "commitment: " +
                 (violation ? "violated at t = " + to_string(*violation) : std::string("holds")) + "\n";
        return r;
      };
    });

    command(app_, "ell1-splice", "f on [0,b], then f(b) + g(t) - g(b)", [](Def& d) -> Handler {
      auto& f = d.arg("f", "Polyline ray");
      auto& g = d.arg("g", "Polyline ray");
      auto& b = d.arg("b", "Splice time");
      return [&] {
        Result r;
        r.input = {{"f", f}, {"g", g}, {"b", b}};
        auto result = splice_plane(parse_polyline(f), parse_polyline(g), parse_rational(b));
        r.output = {{"ray", to_string(result.ray)}, {"bound", to_string(result.bound)}};
        r.text = to_string(result.ray) + "\nbound " + to_string(result.bound) + "\n";
        return r;
      };
    });

    command(app_, "project", "Lattice ray of a plane ray", [](Def& d) -> Handler {
      auto& path = d.arg("path", "Polyline ray");
      return [&] {
        Result r;
        r.input = {{"path", path}};
        RayCode code = project_to_lattice(parse_polyline(path));
        r.output = {{"ray", to_string(code)}};
        r.text = to_string(code) + "\n";
        return r;
      };
    });

    command(app_, "render", "SVG figure of rays, polylines and lines", [](Def& d) -> Handler {
      auto& rays = d.many("--ray", "Ray literal (repeatable)");
      auto& lines = d.many("--line", "Reference line direction p,q (repeatable)");
      auto& paths = d.many("--polyline", "Polyline (repeatable)");
      auto& t = d.opt("--t", "Time span drawn for rays", "30");
      auto& window = d.opt("--window", "xmin,ymin,xmax,ymax (fitted when omitted)");
      return [&] {
        Result r;
        r.input = {{"rays", rays}, {"lines", lines}, {"polylines", paths}, {"t", t}};
        std::uint64_t span = count_arg(t, "--t");
        if (span > 2000) throw std::invalid_argument("--t is limited to 2000");
        SvgScene scene;
        std::size_t color = 0;
        for (const auto& literal : rays) {
          RayCode code = ray_arg(literal);
          scene.paths.push_back({to_string(code), palette(color++), ray_points(code, span)});
        }
        for (const auto& literal : paths) {
          Polyline line = parse_polyline(literal);
          scene.paths.push_back({literal, palette(color++), polyline_points(line, Rational(span))});
        }
        scene.window = window.empty() ? fit_window(scene.paths) : window_arg(window);
        for (const auto& literal : lines) {
          scene.paths.push_back({"line " + literal, palette(color++),
                                 reference_line(parse_direction(literal), scene.window), true});
        }
        if (scene.paths.empty()) throw UsageError("nothing to draw: give --ray, --polyline or --line");
        r.input["window"] = {scene.window.xmin, scene.window.ymin, scene.window.xmax, scene.window.ymax};
        r.svg = render_svg(scene);
        r.output = {{"paths", scene.paths.size()}};
        r.text = "figure with " + std::to_string(scene.paths.size()) + " paths\n";
        return r;
      };
    }, true);
  }

  void define_demos() {
    demo_ = app_.add_subcommand("demo", "Worked demonstrations");
    demo_->require_subcommand(1);

    command(*demo_, "demo trivial-topology", "Splice g into B_K(f, eps) and hop along the axes",
            [](Def& d) -> Handler {
      auto& f = d.opt("--f", "Center ray", "(01)");
      auto& g = d.opt("--g", "Target ray", "(001)");
      auto& k = d.opt("--K", "Time interval a,b", "0,5");
      auto& eps = d.opt("--eps", "Radius", "1");
      auto& chain = d.flag("--chain", "Reach g through the axis chain when it lies in another quadrant");
      return [&] {
        Result r;
        auto [a, b] = rational_pair(k, "--K");
        BallQuery query(a, b, parse_rational(eps));
        RayCode fr = ray_arg(f);
        RayCode gr = ray_arg(g);
        r.input = {{"f", to_string(fr)}, {"g", to_string(gr)}, {"K", k}, {"eps", eps}, {"chain", chain}};
        TopologyReport report = trivial_topology_demo(fr, gr, query, chain);

        json steps = json::array();
        std::ostringstream text;
        text << "s = " << report.s << "\n";
        bool axes[4] = {false, false, false, false};
        for (const auto& step : report.steps) {
          steps.push_back({{"role", step.role},
                           {"center", to_string(step.center)},
                           {"target", to_string(step.target)},
                           {"spliced", to_string(step.spliced)},
                           {"in_ball", step.in_ball},
                           {"verdict", verdict_json(step.verdict)}});
          text << step.role << ": splice(" << to_string(step.center) << ", " << to_string(step.target)
               << ") = " << to_string(step.spliced) << ", in ball " << bool_text(step.in_ball) << ", "
               << describe(step.verdict) << "\n";
          std::string who = step.role == "axis" ? "axis " + to_string(step.target) : "g_s";
          r.assertions.push_back(check(who + " in B_K(center, eps)", "true", bool_text(step.in_ball)));
          r.assertions.push_back(check(who + " asymptotic to target", "asymptotic",
                                       std::holds_alternative<Asymptotic>(step.verdict) ? "asymptotic"
                                                                                        : describe(step.verdict)));
          if (step.role == "axis") axes[digit_at(step.target, 1) % 4] = true;
        }
        int reached = std::count(std::begin(axes), std::end(axes), true);
        r.assertions.push_back(check("axis chain reaches all four axes", "4", std::to_string(reached)));
        if (fr == gr) {
          const SpliceStep* direct = report.target_step();
          r.assertions.push_back(check("degenerate splice returns f", to_string(fr),
                                       direct ? to_string(direct->spliced) : "missing"));
        }
        r.output = {{"s", report.s}, {"steps", steps}};
        r.text = text.str();

        // f, g and g_s over [0, b + 10]
        std::uint64_t span = report.s + 10;
        SvgScene scene;
        scene.paths.push_back({"f = " + to_string(fr), palette(0), ray_points(fr, span)});
        scene.paths.push_back({"g = " + to_string(gr), palette(1), ray_points(gr, span)});
        if (const SpliceStep* direct = report.target_step()) {
          scene.paths.push_back({"g_s = " + to_string(direct->spliced), palette(2),
                                 ray_points(direct->spliced, span), true});
        }
        scene.window = fit_window(scene.paths);
        r.svg = render_svg(scene);
        return r;
      };
    }, true);

    command(*demo_, "demo cardinality", "Table of N values with collision annotations", [](Def& d) -> Handler {
      auto& rays = d.args("rays", "Ray literals");
      return [&] {
        Result r;
        r.input = {{"rays", rays}};
        struct Row {
          std::string literal;
          std::optional<RayCode> code;
          std::optional<NMapValue> value;
          std::string error;
        };
        std::vector<Row> rows;
        for (const auto& literal : rays) {
          Row row{literal, std::nullopt, std::nullopt, ""};
          try {
            row.code = ray_arg(literal);
            row.value = n_map(*row.code, horizon_precision());
          } catch (const std::exception& e) {
            row.error = e.what();
            r.input_error = true;
          }
          rows.push_back(std::move(row));
        }

        json table = json::array();
        r.csv = "ray,m,N,note\n";
        bool twins_only = true;
        for (std::size_t i = 0; i < rows.size(); ++i) {
          const Row& row = rows[i];
          json entry{{"ray", row.literal}};
          std::string m_text, n_text, note;
          if (!row.error.empty()) {
            note = "error: " + row.error;
            entry["error"] = row.error;
          } else {
            m_text = std::to_string(min_digit(*row.code));
            if (const auto* exact = std::get_if<Rational>(&*row.value)) {
              n_text = to_string(*exact);
            } else {
              const auto& box = std::get<RationalInterval>(*row.value);
              n_text = "[" + to_decimal(box.lo, 20, Rounding::Down) + ", " + to_decimal(box.hi, 20, Rounding::Up) + "]";
            }
            entry["canonical"] = to_string(*row.code);
            entry["m"] = min_digit(*row.code);
            entry["N"] = n_text;
            for (std::size_t j = 0; j < rows.size(); ++j) {
              if (j == i || !rows[j].error.empty() || *rows[j].code == *row.code) continue;
              const auto* a = std::get_if<Rational>(&*row.value);
              const auto* b = std::get_if<Rational>(&*rows[j].value);
              if (a == nullptr || b == nullptr || *a != *b) continue;
              bool twins = dyadic_twins(*row.code, *rows[j].code);
              twins_only = twins_only && twins;
              if (!note.empty()) note += "; ";
              note += "collides with " + to_string(*rows[j].code) + (twins ? " (dyadic twins)" : "");
            }
            if (!note.empty()) entry["collision"] = note;
          }
          table.push_back(entry);
          r.csv += csv_cell(row.literal) + "," + m_text + "," + csv_cell(n_text) + "," + csv_cell(note) + "\n";
          r.text += row.literal + "  m = " + (m_text.empty() ? "-" : m_text) + "  N = " +
                    (n_text.empty() ? "-" : n_text) + (note.empty() ? "" : "  " + note) + "\n";
        }
        r.assertions.push_back(check("collisions are dyadic twins", "true", bool_text(twins_only)));
        r.output = {{"rows", table}};
        return r;
      };
    });

    command(*demo_, "demo cone", "Through-the-apex versus around-the-cone lengths", [](Def& d) -> Handler {
      auto& eps = d.opt("--eps", "Distance from the apex", "1");
      return [&] {
        Result r;
        r.input = {{"eps", eps}};
        ConeLengths c = cone_lengths(parse_rational(eps));
        auto interval = [](const RationalInterval& x) {
          return json{{"lo", to_decimal(x.lo, 20, Rounding::Down)}, {"hi", to_decimal(x.hi, 20, Rounding::Up)}};
        };
        RationalInterval ratio{c.through.lo / c.around.hi, c.through.hi / c.around.lo};
        r.output = {{"epsilon", to_string(c.epsilon)}, {"through", interval(c.through)},
                    {"around", interval(c.around)},    {"ratio", interval(ratio)},
                    {"extendable", c.extendable},      {"bits", c.bits}};
        r.text = "through the apex: 2 sqrt(26) eps in [" + to_decimal(c.through.lo, 12, Rounding::Down) + ", " +
                 to_decimal(c.through.hi, 12, Rounding::Up) + "]\n" + "around the cone:  pi eps in [" +
                 to_decimal(c.around.lo, 12, Rounding::Down) + ", " + to_decimal(c.around.hi, 12, Rounding::Up) +
                 "]\n" + "ratio in [" + to_decimal(ratio.lo, 6, Rounding::Down) + ", " +
                 to_decimal(ratio.hi, 6, Rounding::Up) + "]\n" + "extendable: " + bool_text(c.extendable) + "\n";
        r.assertions.push_back(check("geodesic through the apex is not extendable", "false", bool_text(c.extendable)));
        return r;
      };
    });
  }

  CLI::App app_;
  CLI::App* demo_ = nullptr;
  std::string format_ = "text";
  std::string out_path_;
  std::uint64_t seed_ = 0;
  std::map<std::string, std::string> values_;
  std::map<std::string, std::vector<std::string>> lists_;
  std::map<std::string, bool> flags_;
  std::vector<Command> commands_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    Cli cli;
    return cli.run(args, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
}

const std::vector<Subcommand>& registry() { return kRegistry; }

}  // namespace latbound::cli
