#include "abc/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace abc::cli {

ConfigError::ConfigError(const std::string& source, int line, const std::string& key, const std::string& reason)
    : ConfigurationError(source + ":" + std::to_string(line) + ": " + (key.empty() ? "" : key + ": ") + reason),
      line_(line),
      key_(key) {}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string value;
  int line = 0;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"scenario", {"alpha", "t_final", "length", "n_modes", "n_time", "quad_points"}},
      {"data", {"y0", "f"}},
      {"control", {"n_reg", "z_d", "cg_tol", "max_iter"}},
      {"output", {"dir"}},
  };
  return s;
}

// Reads fields in the order the user wrote them; throws on anything it cannot place.
class Reader {
 public:
  Reader(std::string source, std::string base_dir) : source_(std::move(source)), base_dir_(std::move(base_dir)) {}

  [[noreturn]] void fail(int line, const std::string& key, const std::string& reason) const {
    throw ConfigError(source_, line, key, reason);
  }

  void parse(std::string_view text) {
    std::string current;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto nl = text.find('\n', pos);
      auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
      ++line_no;
      const auto cut = raw.find_first_of("#;");
      const auto line = trim(raw.substr(0, cut));
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') fail(line_no, "", "unterminated section header");
        current = std::string(trim(line.substr(1, line.size() - 2)));
        if (!schema().count(current)) fail(line_no, current, "unknown section");
        if (section_lines_.count(current)) fail(line_no, current, "section appears twice");
        section_lines_[current] = line_no;
        sections_[current];
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) fail(line_no, std::string(line), "expected 'key = value'");
      const std::string key(trim(line.substr(0, eq)));
      const std::string value(trim(line.substr(eq + 1)));
      if (current.empty()) fail(line_no, key, "key outside of any section");
      if (!schema().at(current).count(key)) fail(line_no, key, "unknown key in [" + current + "]");
      if (value.empty()) fail(line_no, key, "empty value");
      auto& sec = sections_[current];
      if (sec.count(key)) fail(line_no, key, "duplicate key (first set on line " + std::to_string(sec[key].line) + ")");
      sec[key] = {value, line_no};
    }
  }

  bool has_section(const std::string& s) const { return sections_.count(s) > 0; }
  int section_line(const std::string& s) const { return section_lines_.at(s); }

  const Entry* find(const std::string& sec, const std::string& key) const {
    const auto it = sections_.find(sec);
    if (it == sections_.end()) return nullptr;
    const auto k = it->second.find(key);
    return k == it->second.end() ? nullptr : &k->second;
  }

  const Entry& require(const std::string& sec, const std::string& key) const {
    if (const auto* e = find(sec, key)) return *e;
    const int line = has_section(sec) ? section_line(sec) : 0;
    fail(line, key, "missing required key in [" + sec + "]");
  }

  double number(const Entry& e, const std::string& key) const {
    double v = 0.0;
    if (!parse_double(e.value, v)) fail(e.line, key, "not a number: '" + e.value + "'");
    return v;
  }

  int integer(const Entry& e, const std::string& key) const {
    long v = 0;
    const char* end = e.value.data() + e.value.size();
    const auto r = std::from_chars(e.value.data(), end, v);
    if (r.ec != std::errc() || r.ptr != end || v < INT32_MIN || v > INT32_MAX)
      fail(e.line, key, "not an integer: '" + e.value + "'");
    return static_cast<int>(v);
  }

  static bool parse_double(std::string_view s, double& v) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const char* end = s.data() + s.size();
    const auto r = std::from_chars(s.data(), end, v);
    return !s.empty() && r.ec == std::errc() && r.ptr == end && std::isfinite(v);
  }

  ProfileSpec profile(std::string_view text, int line, const std::string& key) const {
    ProfileSpec p;
    text = trim(text);
    if (text == "zero") return p;
    if (text == "parabola") {
      p.kind = ProfileSpec::Kind::parabola;
      return p;
    }
    if (text.substr(0, 5) == "mode:") {
      p.kind = ProfileSpec::Kind::mode;
      const auto num = trim(text.substr(5));
      const auto r = std::from_chars(num.data(), num.data() + num.size(), p.mode);
      if (r.ec != std::errc() || r.ptr != num.data() + num.size() || p.mode < 1)
        fail(line, key, "mode index must be a positive integer in '" + std::string(text) + "'");
      return p;
    }
    p.kind = ProfileSpec::Kind::list;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto comma = text.find(',', pos);
      const auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
      double v = 0.0;
      if (!parse_double(item, v))
        fail(line, key, "expected zero, parabola, mode:k or a coefficient list, got '" + std::string(text) + "'");
      p.coeffs.push_back(v);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    return p;
  }

  TimeSpec time(std::string_view text, int line, const std::string& key) const {
    TimeSpec t;
    text = trim(text);
    if (text == "zero") return t;
    const auto colon = text.find(':');
    const auto name = text.substr(0, colon);
    if (colon != std::string_view::npos && (name == "constant" || name == "sin" || name == "cos")) {
      t.kind = name == "constant" ? TimeSpec::Kind::constant : name == "sin" ? TimeSpec::Kind::sin : TimeSpec::Kind::cos;
      if (parse_double(text.substr(colon + 1), t.value)) return t;
    }
    fail(line, key, "expected zero, constant:c, sin:w or cos:w, got '" + std::string(text) + "'");
  }

  FieldSpec field(const Entry& e, const std::string& key) const {
    FieldSpec f;
    const std::string_view text = e.value;
    if (text == "zero") return f;
    if (text.substr(0, 6) == "table:") {
      f.kind = FieldSpec::Kind::table;
      f.table = read_table(std::string(trim(text.substr(6))), e.line, key);
      return f;
    }
    const auto star = text.find('*');
    if (star == std::string_view::npos) fail(e.line, key, "expected zero, table:<path> or '<time> * <profile>'");
    f.kind = FieldSpec::Kind::separable;
    f.time = time(text.substr(0, star), e.line, key);
    f.profile = profile(text.substr(star + 1), e.line, key);
    return f;
  }

  std::vector<TableRow> read_table(const std::string& rel, int line, const std::string& key) const {
    std::filesystem::path path(rel);
    if (path.is_relative()) path = std::filesystem::path(base_dir_) / path;
    std::ifstream in(path);
    if (!in) fail(line, key, "cannot open table " + path.string());
    std::string row;
    std::getline(in, row);
    if (trim(row) != "t,mode_index,coefficient") fail(line, key, "table header must be t,mode_index,coefficient");
    std::vector<TableRow> rows;
    int row_no = 1;
    while (std::getline(in, row)) {
      ++row_no;
      if (trim(row).empty()) continue;
      std::stringstream ss(row);
      std::string a, b, c;
      std::getline(ss, a, ',');
      std::getline(ss, b, ',');
      std::getline(ss, c);
      TableRow r;
      double m = 0.0;
      if (!parse_double(a, r.t) || !parse_double(b, m) || !parse_double(c, r.coefficient) || m < 1 ||
          m != std::floor(m))
        fail(line, key, "bad row " + std::to_string(row_no) + " in " + path.string());
      r.mode = static_cast<int>(m);
      rows.push_back(r);
    }
    if (rows.empty()) fail(line, key, "table " + path.string() + " has no rows");
    return rows;
  }

 private:
  std::string source_;
  std::string base_dir_;
  std::map<std::string, Section> sections_;
  std::map<std::string, int> section_lines_;
};

int max_mode(const ProfileSpec& p) {
  switch (p.kind) {
    case ProfileSpec::Kind::mode:
      return p.mode;
    case ProfileSpec::Kind::list:
      return static_cast<int>(p.coeffs.size());
    default:
      return 0;
  }
}

int max_mode(const FieldSpec& f) {
  if (f.kind == FieldSpec::Kind::separable) return max_mode(f.profile);
  int m = 0;
  for (const auto& r : f.table) m = std::max(m, r.mode);
  return m;
}

}  // namespace

ScenarioConfig parse_scenario(std::string_view text, const std::string& source, const std::string& base_dir) {
  Reader rd(source, base_dir);
  rd.parse(text);
  ScenarioConfig cfg;
  cfg.source = source;

  auto read_number = [&](const char* sec, const char* key, double& out) -> const Entry* {
    const auto* e = rd.find(sec, key);
    if (e) out = rd.number(*e, key);
    return e;
  };
  auto read_int = [&](const char* sec, const char* key, int& out) -> const Entry* {
    const auto* e = rd.find(sec, key);
    if (e) out = rd.integer(*e, key);
    return e;
  };

  const auto& alpha = rd.require("scenario", "alpha");
  cfg.alpha = rd.number(alpha, "alpha");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) rd.fail(alpha.line, "alpha", "must lie in (0, 1)");
  if (const auto* e = read_number("scenario", "t_final", cfg.t_final); e && !(cfg.t_final > 0.0))
    rd.fail(e->line, "t_final", "must be positive");
  if (const auto* e = read_number("scenario", "length", cfg.length_l); e && !(cfg.length_l > 0.0))
    rd.fail(e->line, "length", "must be positive");
  const auto* modes = read_int("scenario", "n_modes", cfg.n_modes);
  if (modes && cfg.n_modes < 1) rd.fail(modes->line, "n_modes", "must be at least 1");
  if (const auto* e = read_int("scenario", "n_time", cfg.n_time); e && cfg.n_time < 2)
    rd.fail(e->line, "n_time", "must be at least 2");
  if (const auto* e = read_int("scenario", "quad_points", cfg.quad_points);
      e && (cfg.quad_points < 2 || cfg.quad_points % 2 != 0))
    rd.fail(e->line, "quad_points", "must be even and at least 2");

  auto check_modes = [&](int needed, int line, const char* key) {
    if (needed > cfg.n_modes)
      rd.fail(line, key, "refers to mode " + std::to_string(needed) + " but n_modes = " + std::to_string(cfg.n_modes));
  };
  if (const auto* e = rd.find("data", "y0")) {
    cfg.y0 = rd.profile(e->value, e->line, "y0");
    check_modes(max_mode(cfg.y0), e->line, "y0");
  }
  if (const auto* e = rd.find("data", "f")) {
    cfg.f = rd.field(*e, "f");
    check_modes(max_mode(cfg.f), e->line, "f");
  }

  if (rd.has_section("control")) {
    ControlSection c;
    const auto& n = rd.require("control", "n_reg");
    c.n_reg = rd.number(n, "n_reg");
    if (!(c.n_reg > 0.0)) rd.fail(n.line, "n_reg", "must be positive");
    if (const auto* e = rd.find("control", "z_d")) {
      c.z_d = rd.field(*e, "z_d");
      check_modes(max_mode(c.z_d), e->line, "z_d");
    }
    if (const auto* e = read_number("control", "cg_tol", c.cg_tol); e && !(c.cg_tol > 0.0))
      rd.fail(e->line, "cg_tol", "must be positive");
    if (const auto* e = read_int("control", "max_iter", c.max_iter); e && c.max_iter < 1)
      rd.fail(e->line, "max_iter", "must be at least 1");
    cfg.control = c;
  }
  if (const auto* e = rd.find("output", "dir")) cfg.output_dir = e->value;
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, 0, "", "cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_scenario(ss.str(), path, dir.empty() ? "." : dir.string());
}

SpectralBasis make_basis(const ScenarioConfig& cfg) { return SpectralBasis(cfg.length_l, cfg.n_modes, cfg.quad_points); }

TimeGrid make_grid(const ScenarioConfig& cfg, int n_time) { return TimeGrid(cfg.t_final, n_time); }

AlphaContext make_context(const ScenarioConfig& cfg) { return AlphaContext::make(cfg.alpha); }

ModalCoefficients make_profile(const ProfileSpec& spec, const SpectralBasis& basis) {
  ModalCoefficients m(basis);
  switch (spec.kind) {
    case ProfileSpec::Kind::zero:
      break;
    case ProfileSpec::Kind::parabola: {
      const double l = basis.length();
      m = project([l](double x) { return x * (l - x); }, basis);
      break;
    }
    case ProfileSpec::Kind::mode:
      m.coeffs.at(spec.mode - 1) = 1.0;
      break;
    case ProfileSpec::Kind::list:
      std::copy(spec.coeffs.begin(), spec.coeffs.end(), m.coeffs.begin());
      break;
  }
  return m;
}

namespace {

double time_factor(const TimeSpec& s, double t) {
  switch (s.kind) {
    case TimeSpec::Kind::zero:
      return 0.0;
    case TimeSpec::Kind::constant:
      return s.value;
    case TimeSpec::Kind::sin:
      return std::sin(s.value * t);
    case TimeSpec::Kind::cos:
      return std::cos(s.value * t);
  }
  return 0.0;
}

TimeSeries interpolate(std::vector<std::pair<double, double>> pts, const TimeGrid& grid) {
  std::stable_sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<double> v(grid.size());
  std::size_t k = 0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double t = grid.node(static_cast<int>(j));
    while (k + 1 < pts.size() && pts[k + 1].first <= t) ++k;
    if (t <= pts.front().first) {
      v[j] = pts.front().second;
    } else if (k + 1 >= pts.size()) {
      v[j] = pts.back().second;
    } else {
      const auto& [t0, c0] = pts[k];
      const auto& [t1, c1] = pts[k + 1];
      v[j] = c0 + (c1 - c0) * (t - t0) / (t1 - t0);
    }
  }
  return TimeSeries(grid, v);
}

}  // namespace

Field make_field(const FieldSpec& spec, const SpectralBasis& basis, const TimeGrid& grid) {
  switch (spec.kind) {
    case FieldSpec::Kind::zero:
      return Field(basis, grid);
    case FieldSpec::Kind::separable:
      return Field::separable(make_profile(spec.profile, basis),
                              TimeSeries::sample(grid, [&](double t) { return time_factor(spec.time, t); }));
    case FieldSpec::Kind::table: {
      Field f(basis, grid);
      std::vector<std::vector<std::pair<double, double>>> per_mode(basis.n_modes());
      for (const auto& r : spec.table) per_mode.at(r.mode - 1).emplace_back(r.t, r.coefficient);
      for (int i = 0; i < basis.n_modes(); ++i)
        if (!per_mode[i].empty()) f[i] = interpolate(per_mode[i], grid);
      return f;
    }
  }
  return Field(basis, grid);
}

}  // namespace abc::cli
