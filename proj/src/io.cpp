#include "isd/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <map>
#include <sstream>

#include "isd/error.hpp"
#include "isd/version.hpp"

namespace isd {

using json = nlohmann::ordered_json;

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string where(const std::string& source, std::size_t line) { return source + ":" + std::to_string(line); }

double checked(double v, const std::string& source, std::size_t line) {
  if (!std::isfinite(v)) throw Error(Errc::NonFiniteValue, where(source, line) + ": non-finite value");
  if (v < 0.0) throw Error(Errc::NegativeValue, where(source, line) + ": negative value");
  return v;
}

// Reads the data rows of a file whose rows hold `width` comma-separated numbers.
std::vector<std::vector<double>> read_rows(std::istream& in, const std::string& source, std::size_t width) {
  std::vector<std::vector<double>> rows;
  std::string raw;
  std::size_t line = 0;
  bool seen_content = false;
  while (std::getline(in, raw)) {
    ++line;
    const auto text = trim(raw);
    if (text.empty()) continue;
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = text.find(',', start);
      fields.push_back(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    std::vector<double> values;
    for (auto f : fields) {
      if (auto v = to_double(f)) values.push_back(*v);
    }
    const bool numeric = values.size() == fields.size();
    if (!numeric && !seen_content) {
      seen_content = true;  // header row
      continue;
    }
    seen_content = true;
    if (!numeric) throw Error(Errc::ParseError, where(source, line) + ": not a number");
    if (values.size() != width) {
      throw Error(Errc::ParseError, where(source, line) + ": expected " + std::to_string(width) + " field(s), got " +
                                        std::to_string(values.size()));
    }
    for (double& v : values) v = checked(v, source, line);
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw Error(Errc::EmptyFile, source + ": no data rows");
  return rows;
}

}  // namespace

SortedSample parse_sample(std::istream& in, const std::string& source) {
  std::vector<double> values;
  for (auto& row : read_rows(in, source, 1)) values.push_back(row[0]);
  return make_sample(values);
}

PairedSample parse_pairs(std::istream& in, const std::string& source) {
  std::vector<double> left, right;
  for (auto& row : read_rows(in, source, 2)) {
    left.push_back(row[0]);
    right.push_back(row[1]);
  }
  return PairedSample(left, right);
}

std::variant<SortedSample, PairedSample> load_csv(const std::filesystem::path& path, Layout layout) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::FileNotFound, path.string());
  if (layout == Layout::Single) return parse_sample(in, path.string());
  return parse_pairs(in, path.string());
}

void write_sample(std::ostream& out, std::span<const double> values) {
  for (double v : values) out << format_number(v) << '\n';
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

Format parse_format(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "text") return Format::Text;
  throw Error(Errc::InvalidConfig, "unknown format '" + name + "'");
}

std::string to_string(Direction dir) { return dir == Direction::Up ? "up" : "down"; }
std::string to_string(FunctionalKind kind) { return kind == FunctionalKind::Sup ? "sup" : "int"; }
std::string to_string(Relation rel) {
  switch (rel) {
    case Relation::Less: return "<";
    case Relation::Greater: return ">";
    case Relation::None: break;
  }
  return "";
}

namespace {

json number(double v) { return std::isinf(v) ? json(format_number(v)) : json(v); }

json config_json(const TestConfig& c) {
  return json{{"m", c.m},
              {"direction", to_string(c.direction)},
              {"functional", to_string(c.functional)},
              {"alpha", c.alpha},
              {"tau", number(c.tau)},
              {"xi", c.xi},
              {"eta", c.eta},
              {"bootstrap", c.bootstrap},
              {"grid", c.grid},
              {"vgrid", c.vgrid},
              {"scheme", c.scheme == SchemeKind::Matched ? "matched" : "independent"}};
}

json result_json(const TestResult& r, bool timing) {
  json diag{{"grid", r.diagnostics.grid},
            {"vgrid", r.diagnostics.vgrid},
            {"bootstrap", r.diagnostics.bootstrap},
            {"raw_critical_value", r.diagnostics.raw_critical_value}};
  if (timing) diag["elapsed_ms"] = r.diagnostics.elapsed_ms;
  return json{{"statistic", r.statistic},     {"critical_value", r.critical_value},
              {"p_value", r.p_value},         {"reject", r.reject},
              {"contact_fraction", r.contact_fraction}, {"T_n", r.t_n},
              {"diagnostics", std::move(diag)}};
}

json dgp_json(const DoubleParetoParams& p) { return json{{"alpha", p.alpha}, {"beta", p.beta}, {"scale", p.scale}}; }

json cell_json(const SimResult& r, bool timing) {
  json labels = json::object();
  for (const auto& [k, v] : r.spec.labels) labels[k] = v;
  json cell{{"labels", std::move(labels)},
            {"dgp1", dgp_json(r.spec.dgp1)},
            {"dgp2", dgp_json(r.spec.dgp2)},
            {"n1", r.spec.n1},
            {"n2", r.spec.n2},
            {"m", r.spec.cfg.m},
            {"direction", to_string(r.spec.cfg.direction)},
            {"functional", to_string(r.spec.cfg.functional)},
            {"tau", number(r.spec.cfg.tau)},
            {"mode", r.spec.mode == SimMode::Full ? "full" : "warpspeed"},
            {"replications", r.spec.replications},
            {"family", r.spec.family},
            {"rejections", r.rejections},
            {"rejection_rate", r.rejection_rate},
            {"critical_value", std::isnan(r.critical_value) ? json(nullptr) : json(r.critical_value)}};
  if (timing) cell["elapsed_ms"] = r.elapsed_ms;
  return cell;
}

json ranking_json(const RankingMatrix& m, bool timing) {
  json matrix = json::array();
  const std::size_t k = m.labels.size();
  for (std::size_t a = 0; a < k; ++a) {
    json row = json::array();
    for (std::size_t b = 0; b < k; ++b) row.push_back(to_string(m.at(a, b)));
    matrix.push_back(std::move(row));
  }
  json pairs = json::array();
  for (const auto& p : m.pairs) {
    pairs.push_back(json{{"a", m.labels[p.a]},
                         {"b", m.labels[p.b]},
                         {"a_dominates_b", result_json(p.a_dominates_b, timing)},
                         {"b_dominates_a", result_json(p.b_dominates_a, timing)}});
  }
  return json{{"labels", m.labels}, {"relation", std::move(matrix)}, {"pairs", std::move(pairs)}};
}

std::string label_of(const SimResult& r, const std::string& key) {
  for (const auto& [k, v] : r.spec.labels) {
    if (k == key) return v;
  }
  return "";
}

// Simulation cells arranged as blocks (one per combination of the labels
// that are neither rows nor columns) of rows x columns rejection rates.
struct Layout2D {
  std::vector<std::string> block_keys;
  std::vector<std::string> blocks, row_values, col_values;
  std::map<std::tuple<std::string, std::string, std::string>, double> rate;
};

Layout2D arrange(const std::vector<SimResult>& cells, const std::string& rows, const std::string& columns) {
  Layout2D out;
  auto add_unique = [](std::vector<std::string>& v, const std::string& s) {
    if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
  };
  if (!cells.empty()) {
    for (const auto& [key, value] : cells.front().spec.labels) {
      if (key == rows || key == columns) continue;
      const bool varies = std::any_of(cells.begin(), cells.end(),
                                      [&, k = key, v = value](const SimResult& c) { return label_of(c, k) != v; });
      if (varies) out.block_keys.push_back(key);
    }
  }
  for (const auto& c : cells) {
    std::string block;
    for (const auto& key : out.block_keys) {
      if (!block.empty()) block += ' ';
      block += key + "=" + label_of(c, key);
    }
    add_unique(out.blocks, block);
    add_unique(out.row_values, label_of(c, rows));
    add_unique(out.col_values, label_of(c, columns));
    out.rate[{block, label_of(c, rows), label_of(c, columns)}] = c.rejection_rate;
  }
  return out;
}

std::string rate_text(const Layout2D& l, const std::string& block, const std::string& row, const std::string& col) {
  const auto it = l.rate.find({block, row, col});
  if (it == l.rate.end()) return "";
  char buf[16];
  std::snprintf(buf, sizeof buf, "%.3f", it->second);
  return buf;
}

std::string sim_csv(const std::vector<SimResult>& cells, const std::string& rows, const std::string& columns) {
  const auto l = arrange(cells, rows, columns);
  std::ostringstream out;
  out << "block," << rows;
  for (const auto& c : l.col_values) out << ',' << columns << '=' << c;
  out << '\n';
  for (const auto& b : l.blocks) {
    for (const auto& r : l.row_values) {
      out << b << ',' << r;
      for (const auto& c : l.col_values) out << ',' << rate_text(l, b, r, c);
      out << '\n';
    }
  }
  return out.str();
}

std::string sim_text(const std::vector<SimResult>& cells, const std::string& rows, const std::string& columns) {
  const auto l = arrange(cells, rows, columns);
  std::ostringstream out;
  for (const auto& b : l.blocks) {
    if (!b.empty()) out << b << '\n';
    out << std::left << std::setw(10) << (rows + " \\ " + columns);
    for (const auto& c : l.col_values) out << std::right << std::setw(8) << c;
    out << '\n';
    for (const auto& r : l.row_values) {
      out << std::left << std::setw(10) << r;
      for (const auto& c : l.col_values) out << std::right << std::setw(8) << rate_text(l, b, r, c);
      out << '\n';
    }
    out << '\n';
  }
  return out.str();
}

std::string test_text(const Report& rep, const TestResult& r) {
  const auto& c = rep.config;
  const std::string first = rep.inputs.size() > 0 ? rep.inputs[0] : "sample 1";
  const std::string second =
      c.scheme == SchemeKind::Matched ? first + " (right column)" : rep.inputs.size() > 1 ? rep.inputs[1] : "sample 2";
  std::ostringstream out;
  out << "H0: " << (c.scheme == SchemeKind::Matched ? first + " (left column)" : first) << " dominates " << second
      << " (degree " << c.m << ", " << to_string(c.direction) << "ward, " << to_string(c.functional) << ")\n";
  out << "statistic         " << format_number(r.statistic) << '\n'
      << "critical value    " << format_number(r.critical_value) << '\n'
      << "p-value           " << format_number(r.p_value) << '\n'
      << "contact fraction  " << format_number(r.contact_fraction) << '\n'
      << "T_n               " << format_number(r.t_n) << '\n'
      << "decision          " << (r.reject ? "reject H0" : "do not reject H0 (no evidence against dominance)")
      << '\n';
  return out.str();
}

std::string rank_text(const RankingMatrix& m) {
  std::size_t width = 3;
  for (const auto& l : m.labels) width = std::max(width, l.size() + 2);
  std::ostringstream out;
  out << std::setw(static_cast<int>(width)) << "";
  for (const auto& l : m.labels) out << std::setw(static_cast<int>(width)) << l;
  out << '\n';
  for (std::size_t a = 0; a < m.labels.size(); ++a) {
    out << std::left << std::setw(static_cast<int>(width)) << m.labels[a] << std::right;
    for (std::size_t b = 0; b < m.labels.size(); ++b) {
      out << std::setw(static_cast<int>(width)) << (b > a ? to_string(m.at(a, b)) : "");
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

std::string emit_report(const Report& rep, Format format) {
  const bool timing = rep.elapsed_ms.has_value();
  if (format == Format::Json) {
    json j{{"command", rep.command}, {"inputs", rep.inputs}, {"config", config_json(rep.config)}};
    if (const auto* t = std::get_if<TestResult>(&rep.result)) {
      j["result"] = result_json(*t, timing);
    } else if (const auto* m = std::get_if<RankingMatrix>(&rep.result)) {
      j["result"] = ranking_json(*m, timing);
    } else {
      const auto& cells = std::get<std::vector<SimResult>>(rep.result);
      json arr = json::array();
      for (const auto& c : cells) arr.push_back(cell_json(c, timing));
      j["result"] = json{{"rows", rep.rows}, {"columns", rep.columns}, {"cells", std::move(arr)}};
    }
    j["seed"] = rep.config.seed;
    j["version"] = kVersion;
    if (timing) j["elapsed_ms"] = *rep.elapsed_ms;
    return j.dump(2) + "\n";
  }
  if (const auto* t = std::get_if<TestResult>(&rep.result)) {
    if (format == Format::Text) return test_text(rep, *t);
    std::ostringstream out;
    out << "statistic,critical_value,p_value,reject,contact_fraction,T_n\n"
        << format_number(t->statistic) << ',' << format_number(t->critical_value) << ','
        << format_number(t->p_value) << ',' << (t->reject ? "true" : "false") << ','
        << format_number(t->contact_fraction) << ',' << format_number(t->t_n) << '\n';
    return out.str();
  }
  if (const auto* m = std::get_if<RankingMatrix>(&rep.result)) {
    if (format == Format::Text) return rank_text(*m);
    std::ostringstream out;
    out << "a,b,relation,reject_a_dominates_b,reject_b_dominates_a\n";
    for (const auto& p : m->pairs) {
      out << m->labels[p.a] << ',' << m->labels[p.b] << ',' << to_string(m->at(p.a, p.b)) << ','
          << (p.a_dominates_b.reject ? "true" : "false") << ',' << (p.b_dominates_a.reject ? "true" : "false")
          << '\n';
    }
    return out.str();
  }
  const auto& cells = std::get<std::vector<SimResult>>(rep.result);
  return format == Format::Text ? sim_text(cells, rep.rows, rep.columns) : sim_csv(cells, rep.rows, rep.columns);
}

}  // namespace isd
