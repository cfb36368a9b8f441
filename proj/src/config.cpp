// config.cpp -- config parsing, serialization, defaults, scenario assembly.
#include "uwauth/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "uwauth/analytic.hpp"
#include "uwauth/authenticator.hpp"
#include "uwauth/errors.hpp"

namespace uwauth {

namespace {

struct Value {
  enum class Kind { number, text, list, boolean } kind;
  double num = 0.0;
  bool flag = false;
  std::string str;            // raw token / unquoted string content
  std::vector<double> items;  // list payload
  std::vector<std::string> item_tokens;
};

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_number(const std::string& token, double* out) {
  if (token.empty()) return false;
  const char* begin = token.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + token.size()) return false;
  *out = v;
  return true;
}

Value parse_value(const std::string& raw, const std::string& file, int line) {
  const std::string s = trim(raw);
  if (s.empty())
    throw ConfigError(file, line, "missing value after '='");
  Value v{};
  if (s.front() == '"') {
    if (s.size() < 2 || s.back() != '"')
      throw ConfigError(file, line, "unterminated string literal");
    v.kind = Value::Kind::text;
    v.str = s.substr(1, s.size() - 2);
    return v;
  }
  if (s.front() == '[') {
    if (s.back() != ']')
      throw ConfigError(file, line, "unterminated list literal");
    v.kind = Value::Kind::list;
    const std::string body = trim(s.substr(1, s.size() - 2));
    if (!body.empty()) {
      std::size_t pos = 0;
      while (true) {
        std::size_t comma = body.find(',', pos);
        const std::string tok =
            trim(comma == std::string::npos ? body.substr(pos)
                                            : body.substr(pos, comma - pos));
        double num;
        if (!parse_number(tok, &num))
          throw ConfigError(file, line,
                            "list element '" + tok + "' is not a number");
        v.items.push_back(num);
        v.item_tokens.push_back(tok);
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
    }
    return v;
  }
  if (s == "true" || s == "false") {
    v.kind = Value::Kind::boolean;
    v.flag = (s == "true");
    v.str = s;
    return v;
  }
  if (parse_number(s, &v.num)) {
    v.kind = Value::Kind::number;
    v.str = s;
    return v;
  }
  if (s.find_first_of(" \t") != std::string::npos)
    throw ConfigError(file, line,
                      "value '" + s + "' must be quoted (contains whitespace)");
  v.kind = Value::Kind::text;
  v.str = s;
  return v;
}

double need_number(const Value& v, const std::string& key,
                   const std::string& file, int line) {
  if (v.kind != Value::Kind::number)
    throw ConfigError(file, line, "key '" + key + "' expects a number");
  return v.num;
}

std::string need_text(const Value& v, const std::string& key,
                      const std::string& file, int line) {
  if (v.kind != Value::Kind::text)
    throw ConfigError(file, line, "key '" + key + "' expects a string");
  return v.str;
}

bool need_bool(const Value& v, const std::string& key, const std::string& file,
               int line) {
  if (v.kind != Value::Kind::boolean)
    throw ConfigError(file, line, "key '" + key + "' expects true or false");
  return v.flag;
}

std::uint64_t need_uint64(const Value& v, const std::string& key,
                          const std::string& file, int line) {
  if (v.kind != Value::Kind::number || v.str.empty())
    throw ConfigError(file, line,
                      "key '" + key + "' expects a non-negative integer");
  const std::string& tok = v.str;
  if (tok.front() == '-' || tok.find('.') != std::string::npos ||
      tok.find_first_of("eE") != std::string::npos)
    throw ConfigError(file, line,
                      "key '" + key + "' expects a non-negative integer, got '" +
                          tok + "'");
  errno = 0;
  char* end = nullptr;
  const unsigned long long u = std::strtoull(tok.c_str(), &end, 0);
  if (errno != 0 || end != tok.c_str() + tok.size())
    throw ConfigError(file, line,
                      "key '" + key + "' has an out-of-range integer '" + tok +
                          "'");
  return static_cast<std::uint64_t>(u);
}

Vec2 need_pair(const Value& v, const std::string& key, const std::string& file,
               int line) {
  if (v.kind != Value::Kind::list || v.items.size() != 2)
    throw ConfigError(file, line,
                      "key '" + key + "' expects a two-element list [x, y]");
  return {v.items[0], v.items[1]};
}

std::string quote(const std::string& s) { return "\"" + s + "\""; }

std::string format_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Trim to the shortest representation that round-trips.
  for (int prec = 1; prec < 17; ++prec) {
    char probe[64];
    std::snprintf(probe, sizeof probe, "%.*g", prec, v);
    if (std::strtod(probe, nullptr) == v) return probe;
  }
  return buf;
}

std::string format_list(const std::vector<double>& items) {
  std::string s = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) s += ", ";
    s += format_full(items[i]);
  }
  return s + "]";
}

std::string format_pair(Vec2 p) { return format_list({p.x, p.y}); }

}  // namespace

ExperimentConfig default_config() {
  ExperimentConfig c;
  c.channel.freq_khz = 22.0;
  c.channel.spreading = 1.5;
  c.channel.sound_speed = 1500.0;
  c.channel.tx_power = 100.0;
  c.channel.link_quality_db = 10.0;
  c.channel.processing_gain = 2e10;
  c.channel.sigma_scale = 1.0;
  c.anchors = {{0.0, 500.0},
               {-500.0, -500.0},
               {500.0, -500.0},
               {-500.0, 500.0},
               {0.0, -500.0}};
  c.num_anchors = 3;
  c.legitimate = {0.0, 0.0};
  c.attacker.kind = AttackerKind::fixed;
  c.attacker.point = {1.0, 1.0};
  c.attacker.extent = 500.0;
  c.attacker.radius = 100.0;
  c.trials = 1000000;
  c.seed = 1;
  c.threads = 0;
  c.mode = "both";
  c.format = "csv";

  // Default decision threshold: analytic 5% false-alarm point of the
  // measurement-sum law for this geometry and channel.
  std::vector<Vec2> active(c.anchors.begin(), c.anchors.begin() + 3);
  LocalizationSystem system(active);
  LegitimateProfile profile = make_profile(system, c.legitimate);
  c.threshold =
      threshold_for_far(spec_under_h0(system, profile, c.channel), 0.05);
  return c;
}

ExperimentConfig parse_config(const std::string& text,
                              const std::string& filename) {
  ExperimentConfig c = default_config();
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // Strip comments (respecting quoted strings).
    bool in_quotes = false;
    std::string code;
    for (char ch : line) {
      if (ch == '"') in_quotes = !in_quotes;
      if (ch == '#' && !in_quotes) break;
      code += ch;
    }
    code = trim(code);
    if (code.empty()) continue;

    const std::size_t eq = code.find('=');
    if (eq == std::string::npos)
      throw ConfigError(filename, lineno, "expected 'key = value'");
    const std::string key = trim(code.substr(0, eq));
    if (key.empty())
      throw ConfigError(filename, lineno, "missing key before '='");
    for (char ch : key)
      if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' ||
            ch == '.'))
        throw ConfigError(filename, lineno,
                          "invalid character in key '" + key + "'");
    const Value v = parse_value(code.substr(eq + 1), filename, lineno);

    auto num = [&] { return need_number(v, key, filename, lineno); };
    auto text_v = [&] { return need_text(v, key, filename, lineno); };

    if (key == "channel.freq_khz") {
      c.channel.freq_khz = num();
    } else if (key == "channel.spreading") {
      c.channel.spreading = num();
    } else if (key == "channel.sound_speed") {
      c.channel.sound_speed = num();
    } else if (key == "channel.tx_power") {
      c.channel.tx_power = num();
    } else if (key == "channel.link_quality_db") {
      c.channel.link_quality_db = num();
    } else if (key == "channel.processing_gain") {
      c.channel.processing_gain = num();
    } else if (key == "channel.sigma_scale") {
      c.channel.sigma_scale = num();
    } else if (key == "anchors") {
      if (v.kind != Value::Kind::list || v.items.empty() ||
          v.items.size() % 2 != 0)
        throw ConfigError(filename, lineno,
                          "key 'anchors' expects [x1, y1, x2, y2, ...]");
      c.anchors.clear();
      for (std::size_t i = 0; i < v.items.size(); i += 2)
        c.anchors.push_back({v.items[i], v.items[i + 1]});
    } else if (key == "num_anchors") {
      const double n = num();
      if (!(n >= 0.0) || n != std::floor(n))
        throw ConfigError(filename, lineno,
                          "key 'num_anchors' expects a non-negative integer");
      c.num_anchors = static_cast<int>(n);
    } else if (key == "legitimate") {
      c.legitimate = need_pair(v, key, filename, lineno);
    } else if (key == "attacker.model") {
      const std::string m = text_v();
      if (m == "fixed")
        c.attacker.kind = AttackerKind::fixed;
      else if (m == "uniform_box")
        c.attacker.kind = AttackerKind::uniform_box;
      else if (m == "circle")
        c.attacker.kind = AttackerKind::circle;
      else
        throw ConfigError(filename, lineno,
                          "attacker.model must be fixed, uniform_box, or circle");
    } else if (key == "attacker.point") {
      c.attacker.point = need_pair(v, key, filename, lineno);
    } else if (key == "attacker.extent") {
      c.attacker.extent = num();
    } else if (key == "attacker.radius") {
      c.attacker.radius = num();
    } else if (key == "threshold") {
      c.threshold = num();
      if (!(c.threshold >= 0.0))
        throw ConfigError(filename, lineno, "threshold must be >= 0");
    } else if (key == "trials") {
      c.trials = need_uint64(v, key, filename, lineno);
      if (c.trials < 1)
        throw ConfigError(filename, lineno, "trials must be >= 1");
    } else if (key == "seed") {
      c.seed = need_uint64(v, key, filename, lineno);
    } else if (key == "threads") {
      const double n = num();
      if (!(n >= 0.0) || n != std::floor(n))
        throw ConfigError(filename, lineno,
                          "key 'threads' expects a non-negative integer");
      c.threads = static_cast<int>(n);
    } else if (key == "mode") {
      c.mode = text_v();
      if (c.mode != "analytic" && c.mode != "montecarlo" && c.mode != "both")
        throw ConfigError(filename, lineno,
                          "mode must be analytic, montecarlo, or both");
    } else if (key == "figure") {
      c.figure = text_v();
      if (!c.figure.empty() && c.figure != "fig2" && c.figure != "fig3" &&
          c.figure != "fig4" && c.figure != "fig5")
        throw ConfigError(filename, lineno,
                          "figure must be one of fig2, fig3, fig4, fig5");
    } else if (key == "out") {
      c.out = text_v();
    } else if (key == "format") {
      c.format = text_v();
      if (c.format != "csv")
        throw ConfigError(filename, lineno, "format must be csv");
    } else if (key == "gnuplot") {
      c.gnuplot = need_bool(v, key, filename, lineno);
    } else if (key == "sweep_axis") {
      c.sweep_axis = text_v();
      if (!c.sweep_axis.empty() && c.sweep_axis != "link_quality_db" &&
          c.sweep_axis != "radius_R" && c.sweep_axis != "threshold")
        throw ConfigError(
            filename, lineno,
            "sweep_axis must be link_quality_db, radius_R, or threshold");
    } else if (key == "sweep_values") {
      if (v.kind != Value::Kind::list)
        throw ConfigError(filename, lineno, "sweep_values expects a list");
      c.sweep_values = v.items;
    } else if (key == "threshold_grid") {
      if (v.kind != Value::Kind::list)
        throw ConfigError(filename, lineno, "threshold_grid expects a list");
      c.threshold_grid = v.items;
    } else {
      throw ConfigError(filename, lineno, "unknown key '" + key + "'");
    }
  }
  return c;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error while reading config file '" + path + "'");
  return parse_config(buf.str(), path);
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "channel.freq_khz = " << format_full(c.channel.freq_khz) << "\n"
     << "channel.spreading = " << format_full(c.channel.spreading) << "\n"
     << "channel.sound_speed = " << format_full(c.channel.sound_speed) << "\n"
     << "channel.tx_power = " << format_full(c.channel.tx_power) << "\n"
     << "channel.link_quality_db = " << format_full(c.channel.link_quality_db)
     << "\n"
     << "channel.processing_gain = " << format_full(c.channel.processing_gain)
     << "\n"
     << "channel.sigma_scale = " << format_full(c.channel.sigma_scale) << "\n";
  std::vector<double> flat;
  for (const Vec2& a : c.anchors) {
    flat.push_back(a.x);
    flat.push_back(a.y);
  }
  os << "anchors = " << format_list(flat) << "\n"
     << "num_anchors = " << c.num_anchors << "\n"
     << "legitimate = " << format_pair(c.legitimate) << "\n";
  const char* model = c.attacker.kind == AttackerKind::fixed ? "fixed"
                      : c.attacker.kind == AttackerKind::uniform_box
                          ? "uniform_box"
                          : "circle";
  os << "attacker.model = " << model << "\n"
     << "attacker.point = " << format_pair(c.attacker.point) << "\n"
     << "attacker.extent = " << format_full(c.attacker.extent) << "\n"
     << "attacker.radius = " << format_full(c.attacker.radius) << "\n"
     << "threshold = " << format_full(c.threshold) << "\n"
     << "trials = " << c.trials << "\n"
     << "seed = " << c.seed << "\n"
     << "threads = " << c.threads << "\n"
     << "mode = " << c.mode << "\n"
     << "figure = " << quote(c.figure) << "\n"
     << "out = " << quote(c.out) << "\n"
     << "format = " << c.format << "\n"
     << "gnuplot = " << (c.gnuplot ? "true" : "false") << "\n"
     << "sweep_axis = " << quote(c.sweep_axis) << "\n"
     << "sweep_values = " << format_list(c.sweep_values) << "\n"
     << "threshold_grid = " << format_list(c.threshold_grid) << "\n";
  return os.str();
}

Scenario build_scenario(const ExperimentConfig& c) {
  validate(c.channel);
  const std::size_t want =
      c.num_anchors == 0 ? c.anchors.size()
                         : static_cast<std::size_t>(c.num_anchors);
  if (want > c.anchors.size()) {
    std::ostringstream os;
    os << "build_scenario: num_anchors = " << want << " but only "
       << c.anchors.size() << " anchors are listed";
    throw std::invalid_argument(os.str());
  }
  std::vector<Vec2> active(c.anchors.begin(),
                           c.anchors.begin() + static_cast<long>(want));
  LocalizationSystem system(std::move(active));
  LegitimateProfile profile = make_profile(system, c.legitimate);
  Scenario s(c.channel, std::move(system), std::move(profile));
  s.attacker = c.attacker;
  s.threshold = c.threshold;
  s.trials = c.trials;
  s.seed = c.seed;
  s.threads = c.threads;
  validate(s);
  return s;
}

}  // namespace uwauth
