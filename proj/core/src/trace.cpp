#include "cip/trace.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "cip/errors.hpp"

namespace cip {
namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view field, double& out) {
  field = trim(field);
  if (field.empty()) return false;
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), last, out);
  return ec == std::errc() && ptr == last;
}

bool parse_u64(std::string_view field, std::uint64_t& out) {
  field = trim(field);
  if (field.empty()) return false;
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), last, out);
  return ec == std::errc() && ptr == last;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  return out;
}

// Rows of "t,<value>" with optional single header line and '#' comments.
// "# key=value" comments are collected into meta when requested.
std::vector<TracePoint> read_csv_rows(std::istream& in, const std::filesystem::path& path,
                                      std::map<std::string, std::string>* meta) {
  std::vector<TracePoint> points;
  std::string line;
  int line_no = 0;
  bool saw_data = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view content = trim(line);
    if (content.empty()) continue;
    if (content.front() == '#') {
      if (meta != nullptr) {
        const std::string_view body = trim(content.substr(1));
        const std::size_t eq = body.find('=');
        if (eq != std::string_view::npos) {
          (*meta)[std::string(trim(body.substr(0, eq)))] = std::string(trim(body.substr(eq + 1)));
        }
      }
      continue;
    }
    const auto fields = split(content, ',');
    if (fields.size() != 2) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": expected two comma-separated columns");
    }
    TracePoint p;
    const bool t_ok = parse_double(fields[0], p.t);
    const bool x_ok = parse_double(fields[1], p.x);
    if (!t_ok || !x_ok) {
      if (!saw_data && !t_ok && !x_ok) continue;  // header line
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": malformed row '" +
                       std::string(content) + "'");
    }
    saw_data = true;
    points.push_back(p);
  }
  return points;
}

void write_csv_rows(std::ostream& out, const std::vector<TracePoint>& points,
                    std::string_view header) {
  out << header << "\n";
  for (const auto& p : points) {
    out << format_full_precision(p.t) << "," << format_full_precision(p.x) << "\n";
  }
}

json parse_json_file(std::istream& in, const std::filesystem::path& path) {
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

double require_number(const json& obj, const char* key, const std::filesystem::path& path) {
  if (!obj.contains(key) || !obj[key].is_number()) {
    throw ParseError(path.string() + ": missing numeric field '" + key + "'");
  }
  return obj[key].get<double>();
}

std::vector<TracePoint> points_from_json(const json& arr, const char* value_key,
                                         const std::filesystem::path& path) {
  if (!arr.is_array()) {
    throw ParseError(path.string() + ": expected an array of point objects");
  }
  std::vector<TracePoint> points;
  points.reserve(arr.size());
  for (const auto& el : arr) {
    if (!el.is_object()) throw ParseError(path.string() + ": point entries must be objects");
    points.push_back({require_number(el, "t", path), require_number(el, value_key, path)});
  }
  return points;
}

json points_to_json(const std::vector<TracePoint>& points, const char* value_key) {
  json arr = json::array();
  for (const auto& p : points) {
    json el;
    el["t"] = p.t;
    el[value_key] = p.x;
    arr.push_back(std::move(el));
  }
  return arr;
}

void validate_sanitized(const SanitizedTrace& trace) {
  if (trace.points.size() < 2) throw DomainError("sanitized trace needs at least 2 points");
  for (std::size_t i = 0; i < trace.points.size(); ++i) {
    if (!std::isfinite(trace.points[i].t) || !std::isfinite(trace.points[i].x)) {
      throw DomainError("sanitized trace contains non-finite values");
    }
    if (i > 0 && !(trace.points[i].t > trace.points[i - 1].t)) {
      throw DomainError("sanitized trace timestamps must be strictly increasing");
    }
  }
  if (!(trace.meta.sigma_z2 > 0) || !std::isfinite(trace.meta.sigma_z2)) {
    throw DomainError("sanitized trace metadata requires sigma_z2 > 0");
  }
}

void meta_comment(std::ostream& out, const char* key, const std::optional<double>& v) {
  if (v) out << "# " << key << "=" << format_full_precision(*v) << "\n";
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from_json(const json& obj, const char* key,
                                         const std::filesystem::path& path) {
  if (!obj.contains(key) || obj[key].is_null()) return std::nullopt;
  if (!obj[key].is_number()) {
    throw ParseError(path.string() + ": meta field '" + key + "' must be numeric or null");
  }
  return obj[key].get<double>();
}

}  // namespace

Trace::Trace(std::vector<TracePoint> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw DomainError("trace needs at least 2 points");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].t) || !std::isfinite(points_[i].x)) {
      throw DomainError("trace contains non-finite values");
    }
    if (i > 0 && !(points_[i].t > points_[i - 1].t)) {
      throw DomainError("trace timestamps must be strictly increasing");
    }
  }
}

std::vector<double> Trace::timestamps() const {
  std::vector<double> out(points_.size());
  std::transform(points_.begin(), points_.end(), out.begin(),
                 [](const TracePoint& p) { return p.t; });
  return out;
}

std::vector<double> Trace::values() const {
  std::vector<double> out(points_.size());
  std::transform(points_.begin(), points_.end(), out.begin(),
                 [](const TracePoint& p) { return p.x; });
  return out;
}

TraceFormat parse_format(std::string_view name) {
  if (name == "csv") return TraceFormat::csv;
  if (name == "json") return TraceFormat::json;
  throw DomainError("unknown trace format '" + std::string(name) + "' (expected csv or json)");
}

TraceFormat format_from_path(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".csv") return TraceFormat::csv;
  if (ext == ".json") return TraceFormat::json;
  throw DomainError("cannot infer format from extension '" + ext + "'; pass it explicitly");
}

std::string format_full_precision(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

Trace read_trace(const std::filesystem::path& path, TraceFormat format) {
  auto in = open_input(path);
  if (format == TraceFormat::csv) {
    return Trace(read_csv_rows(in, path, nullptr));
  }
  return Trace(points_from_json(parse_json_file(in, path), "x", path));
}

void write_trace(const Trace& trace, const std::filesystem::path& path, TraceFormat format) {
  auto out = open_output(path);
  if (format == TraceFormat::csv) {
    write_csv_rows(out, trace.points(), "t,x");
  } else {
    out << points_to_json(trace.points(), "x").dump(2) << "\n";
  }
  if (!out.good()) throw IoError("write failed: " + path.string());
}

SanitizedTrace read_sanitized(const std::filesystem::path& path, TraceFormat format) {
  auto in = open_input(path);
  SanitizedTrace result;
  if (format == TraceFormat::csv) {
    std::map<std::string, std::string> meta;
    result.points = read_csv_rows(in, path, &meta);
    const auto require = [&](const char* key) -> const std::string& {
      auto it = meta.find(key);
      if (it == meta.end()) {
        throw ParseError(path.string() + ": missing '# " + key + "=' metadata line");
      }
      return it->second;
    };
    if (!parse_double(require("sigma_z2"), result.meta.sigma_z2)) {
      throw ParseError(path.string() + ": malformed sigma_z2 metadata");
    }
    if (!parse_u64(require("seed"), result.meta.seed)) {
      throw ParseError(path.string() + ": malformed seed metadata");
    }
    if (auto it = meta.find("rng"); it != meta.end()) result.meta.rng = it->second;
    const auto opt = [&](const char* key) -> std::optional<double> {
      auto it = meta.find(key);
      if (it == meta.end()) return std::nullopt;
      double v = 0.0;
      if (!parse_double(it->second, v)) {
        throw ParseError(path.string() + ": malformed '" + key + "' metadata");
      }
      return v;
    };
    result.meta.epsilon = opt("epsilon");
    result.meta.radius = opt("r");
    result.meta.lambda = opt("lambda");
  } else {
    const json doc = parse_json_file(in, path);
    if (!doc.is_object() || !doc.contains("points") || !doc.contains("meta")) {
      throw ParseError(path.string() + ": expected an object with 'points' and 'meta'");
    }
    result.points = points_from_json(doc["points"], "z", path);
    const json& meta = doc["meta"];
    if (!meta.is_object()) throw ParseError(path.string() + ": 'meta' must be an object");
    result.meta.sigma_z2 = require_number(meta, "sigma_z2", path);
    if (!meta.contains("seed") || !meta["seed"].is_number_unsigned()) {
      throw ParseError(path.string() + ": meta field 'seed' must be an unsigned integer");
    }
    result.meta.seed = meta["seed"].get<std::uint64_t>();
    if (meta.contains("rng") && meta["rng"].is_string()) {
      result.meta.rng = meta["rng"].get<std::string>();
    }
    result.meta.epsilon = optional_from_json(meta, "epsilon", path);
    result.meta.radius = optional_from_json(meta, "r", path);
    result.meta.lambda = optional_from_json(meta, "lambda", path);
  }
  validate_sanitized(result);
  return result;
}

void write_sanitized(const SanitizedTrace& trace, const std::filesystem::path& path,
                     TraceFormat format) {
  validate_sanitized(trace);
  auto out = open_output(path);
  if (format == TraceFormat::csv) {
    out << "# sigma_z2=" << format_full_precision(trace.meta.sigma_z2) << "\n";
    out << "# seed=" << trace.meta.seed << "\n";
    out << "# rng=" << trace.meta.rng << "\n";
    meta_comment(out, "epsilon", trace.meta.epsilon);
    meta_comment(out, "r", trace.meta.radius);
    meta_comment(out, "lambda", trace.meta.lambda);
    write_csv_rows(out, trace.points, "t,z");
  } else {
    json meta;
    meta["sigma_z2"] = trace.meta.sigma_z2;
    meta["seed"] = trace.meta.seed;
    meta["rng"] = trace.meta.rng;
    meta["epsilon"] = optional_json(trace.meta.epsilon);
    meta["r"] = optional_json(trace.meta.radius);
    meta["lambda"] = optional_json(trace.meta.lambda);
    json doc;
    doc["schema_version"] = 1;
    doc["meta"] = std::move(meta);
    doc["points"] = points_to_json(trace.points, "z");
    out << doc.dump(2) << "\n";
  }
  if (!out.good()) throw IoError("write failed: " + path.string());
}

}  // namespace cip
