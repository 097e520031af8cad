#include "isd/simfile.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "isd/error.hpp"
#include "isd/io.hpp"

namespace isd {

namespace {

const std::map<std::string, std::string>& presets() {
  static const std::map<std::string, std::string> table{
      {"table1",
       "# Size of the upward test: X1, X2 ~ dP(alpha, beta), same law.\n"
       "direction = up\n"
       "functional = sup, int\n"
       "m = 3\n"
       "alpha = 2, 3, 4, 5\n"
       "beta = 1, 2, 3, 4, 5, 6, 7, 8\n"
       "tau = 1, 2, 3, 4, inf\n"
       "n = 2000\n"
       "dgp1 = alpha, beta\n"
       "dgp2 = alpha, beta\n"
       "replications = 1000\n"
       "mode = warpspeed\n"
       "rows = tau\n"
       "columns = beta\n"
       "seed = 1\n"},
      {"table2",
       "# Size of the downward test: X1, X2 ~ dP(alpha, beta), same law.\n"
       "direction = down\n"
       "functional = sup, int\n"
       "m = 3\n"
       "alpha = 2, 3, 4, 5\n"
       "beta = 1, 2, 3, 4, 5, 6, 7, 8\n"
       "tau = 1, 2, 3, 4, inf\n"
       "n = 2000\n"
       "dgp1 = alpha, beta\n"
       "dgp2 = alpha, beta\n"
       "replications = 1000\n"
       "mode = warpspeed\n"
       "rows = tau\n"
       "columns = beta\n"
       "seed = 1\n"},
      {"table3",
       "# Power of the upward test: X1 ~ dP(2.1, 1.5), X2 ~ dP(100, beta).\n"
       "direction = up\n"
       "functional = sup, int\n"
       "m = 3\n"
       "beta = 2.91, 2.92, 2.93, 2.94, 2.95, 2.96, 2.97, 2.98, 2.99, 3\n"
       "tau = 3\n"
       "n = 200, 500, 1000, 2000\n"
       "dgp1 = 2.1, 1.5\n"
       "dgp2 = 100, beta\n"
       "replications = 1000\n"
       "mode = warpspeed\n"
       "rows = n\n"
       "columns = beta\n"
       "seed = 1\n"},
      {"table4",
       "# Power of the downward test: X1 ~ dP(2.1, 1.5), X2 ~ dP(alpha, 4).\n"
       "direction = down\n"
       "functional = sup, int\n"
       "m = 3\n"
       "alpha = 10, 20, 30, 40, 50, 60, 70, 80, 90, 100\n"
       "tau = 3\n"
       "n = 200, 500, 1000, 2000\n"
       "dgp1 = 2.1, 1.5\n"
       "dgp2 = alpha, 4\n"
       "replications = 1000\n"
       "mode = warpspeed\n"
       "rows = n\n"
       "columns = alpha\n"
       "seed = 1\n"},
  };
  return table;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

class Parser {
 public:
  explicit Parser(std::string source) : source_(std::move(source)) {}

  void line(const std::string& raw, std::size_t number) {
    line_ = number;
    const std::string text = trim(raw.substr(0, raw.find('#')));
    if (text.empty()) return;
    const auto eq = text.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (value.empty()) fail("empty value for '" + key + "'");
    if (!values_.emplace(key, std::pair{value, number}).second) fail("duplicate key '" + key + "'");
  }

  SimTable finish() {
    static const std::vector<std::string> known{
        "direction", "functional", "m",    "alpha", "beta",  "tau",  "n",     "n1",         "n2",
        "dgp1",      "dgp2",       "replications", "mode", "bootstrap", "rows", "columns", "seed",
        "significance", "xi", "eta", "grid", "vgrid"};
    for (const auto& [key, entry] : values_) {
      if (std::find(known.begin(), known.end(), key) == known.end()) {
        line_ = entry.second;
        fail("unknown key '" + key + "'");
      }
    }

    SimTable table;
    TestConfig& base = table.base;
    base.m = static_cast<int>(integer("m", 3));
    base.alpha = real("significance", 0.05);
    base.xi = real("xi", base.xi);
    base.eta = real("eta", base.eta);
    base.bootstrap = integer("bootstrap", base.bootstrap);
    base.grid = integer("grid", base.grid);
    base.vgrid = integer("vgrid", base.vgrid);
    base.seed = integer("seed", 1);
    table.rows = text("rows", "tau");
    table.columns = text("columns", "beta");
    for (const auto* axis : {&table.rows, &table.columns}) {
      static const std::vector<std::string> axes{"functional", "direction", "alpha", "beta", "tau", "n"};
      if (std::find(axes.begin(), axes.end(), *axis) == axes.end()) {
        locate(*axis == table.rows ? "rows" : "columns");
        fail("cannot lay out '" + *axis + "'");
      }
    }

    const std::size_t replications = integer("replications", 1000);
    const std::string mode = text("mode", "warpspeed");
    if (mode != "warpspeed" && mode != "full") {
      locate("mode");
      fail("mode must be warpspeed or full");
    }

    std::vector<Direction> directions;
    for (const auto& d : list("direction", "up")) {
      if (d == "up") directions.push_back(Direction::Up);
      else if (d == "down") directions.push_back(Direction::Down);
      else fail("direction must be up or down");
    }
    std::vector<FunctionalKind> functionals;
    for (const auto& f : list("functional", "sup")) {
      if (f == "sup") functionals.push_back(FunctionalKind::Sup);
      else if (f == "int") functionals.push_back(FunctionalKind::Int);
      else fail("functional must be sup or int");
    }
    const auto alphas = numbers("alpha");
    const auto betas = numbers("beta");
    const auto taus = numbers("tau", "3");
    std::vector<std::pair<std::size_t, std::size_t>> sizes;
    if (values_.count("n")) {
      if (values_.count("n1") || values_.count("n2")) {
        locate("n");
        fail("give either n or n1/n2");
      }
      for (double n : numbers("n")) sizes.emplace_back(count(n), count(n));
    } else {
      sizes.emplace_back(integer("n1", 2000), integer("n2", integer("n1", 2000)));
    }
    const auto dgp1 = dgp_tokens("dgp1");
    const auto dgp2 = dgp_tokens("dgp2");
    for (const auto& var : {std::string("alpha"), std::string("beta")}) {
      const bool used = std::count(dgp1.begin(), dgp1.end(), var) + std::count(dgp2.begin(), dgp2.end(), var) > 0;
      if (used && !values_.count(var)) fail("dgp refers to '" + var + "' but no '" + var + "' list is given");
    }

    const std::vector<double> one{std::nan("")};
    const auto& alpha_axis = alphas.empty() ? one : alphas;
    const auto& beta_axis = betas.empty() ? one : betas;
    for (auto f : functionals) {
      for (auto d : directions) {
        for (double a : alpha_axis) {
          for (double b : beta_axis) {
            for (const auto& [n1, n2] : sizes) {
              for (double tau : taus) {
                SimSpec cell;
                cell.cfg = base;
                cell.cfg.functional = f;
                cell.cfg.direction = d;
                cell.cfg.tau = tau;
                cell.dgp1 = resolve(dgp1, a, b);
                cell.dgp2 = resolve(dgp2, a, b);
                cell.n1 = n1;
                cell.n2 = n2;
                cell.replications = replications;
                cell.mode = mode == "full" ? SimMode::Full : SimMode::WarpSpeed;
                cell.labels = {{"functional", to_string(f)}, {"direction", to_string(d)}};
                if (!alphas.empty()) cell.labels.emplace_back("alpha", format_number(a));
                if (!betas.empty()) cell.labels.emplace_back("beta", format_number(b));
                cell.labels.emplace_back("n", n1 == n2 ? std::to_string(n1)
                                                       : std::to_string(n1) + "/" + std::to_string(n2));
                cell.labels.emplace_back("tau", format_number(tau));
                table.cells.push_back(std::move(cell));
              }
            }
          }
        }
      }
    }
    assign_families(table.cells);
    return table;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    const std::string at = line_ > 0 ? source_ + ":" + std::to_string(line_) : source_;
    throw Error(Errc::InvalidConfig, at + ": " + what);
  }

  void locate(const std::string& key) {
    const auto it = values_.find(key);
    line_ = it == values_.end() ? 0 : it->second.second;
  }

  std::string text(const std::string& key, const std::string& fallback) {
    locate(key);
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second.first;
  }

  std::vector<std::string> list(const std::string& key, const std::string& fallback) {
    return split_list(text(key, fallback));
  }

  double parse_number(const std::string& token) const {
    if (token == "inf") return std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      fail("'" + token + "' is not a number");
    }
    if (used != token.size()) fail("'" + token + "' is not a number");
    return v;
  }

  std::vector<double> numbers(const std::string& key, const std::string& fallback = "") {
    std::vector<double> out;
    const std::string value = text(key, fallback);
    if (value.empty()) return out;
    for (const auto& token : split_list(value)) out.push_back(parse_number(token));
    return out;
  }

  double real(const std::string& key, double fallback) {
    const auto v = numbers(key);
    if (v.empty()) return fallback;
    if (v.size() != 1) fail("'" + key + "' takes a single value");
    return v[0];
  }

  std::size_t count(double v) const {
    if (!(v >= 0.0) || v != std::floor(v) || v > 1e15) fail("expected a nonnegative integer");
    return static_cast<std::size_t>(v);
  }

  std::size_t integer(const std::string& key, std::size_t fallback) {
    const auto v = numbers(key);
    if (v.empty()) return fallback;
    if (v.size() != 1) fail("'" + key + "' takes a single value");
    return count(v[0]);
  }

  std::vector<std::string> dgp_tokens(const std::string& key) {
    // Unswept parameters default to dP(3, 2).
    const std::string fallback = std::string(values_.count("alpha") ? "alpha" : "3") + ", " +
                                 (values_.count("beta") ? "beta" : "2");
    const auto tokens = list(key, fallback);
    if (tokens.size() != 2 && tokens.size() != 3) fail("'" + key + "' needs 'alpha, beta' or 'alpha, beta, scale'");
    for (const auto& t : tokens) {
      if (t != "alpha" && t != "beta") parse_number(t);
    }
    return tokens;
  }

  DoubleParetoParams resolve(const std::vector<std::string>& tokens, double a, double b) const {
    auto value = [&](const std::string& t) { return t == "alpha" ? a : t == "beta" ? b : parse_number(t); };
    DoubleParetoParams p{value(tokens[0]), value(tokens[1])};
    if (tokens.size() == 3) p.scale = value(tokens[2]);
    return p;
  }

  std::string source_;
  std::size_t line_ = 0;
  std::map<std::string, std::pair<std::string, std::size_t>> values_;
};

}  // namespace

SimTable parse_simfile(std::istream& in, const std::string& source) {
  Parser parser(source);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) parser.line(raw, ++number);
  return parser.finish();
}

SimTable load_simfile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::FileNotFound, path.string());
  return parse_simfile(in, path.string());
}

const std::string& preset(const std::string& name) {
  const auto it = presets().find(name);
  if (it == presets().end()) throw Error(Errc::InvalidConfig, "unknown preset '" + name + "'");
  return it->second;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, text] : presets()) names.push_back(name);
  return names;
}

}  // namespace isd
