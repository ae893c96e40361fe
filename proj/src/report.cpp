#include "kahler/report.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <json.hpp>
#include <sstream>

#include "kahler/error.hpp"

namespace kahler::report {

namespace {

const char* compare_name(verify::Compare c) {
  switch (c) {
    case verify::Compare::AtMost: return "<=";
    case verify::Compare::AtLeastAll: return "min >=";
    case verify::Compare::AtLeastSome: return "max >=";
    case verify::Compare::Record: return "record";
  }
  return "?";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

double wall_ms(const verify::CheckReport& r, const Options& opts) { return opts.timing ? r.wall_ms : 0.0; }

double parse_real(std::string_view s, std::string_view whole) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != end)
    throw ConfigError("malformed complex literal '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "text") return Format::Text;
  throw ConfigError("unknown output format '" + std::string(name) + "' (expected json, csv or text)");
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

std::string format_complex(Complex c) {
  const double im = c.imag();
  std::string out = format_real(c.real());
  out += (std::signbit(im) && !std::isnan(im)) ? "-" : "+";
  out += format_real(std::abs(im));
  return out + "i";
}

std::string format_matrix(const metric::Matrix& m) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out += i == 0 ? "[" : " [";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ", ";
      out += "\"" + format_complex(m(i, j)) + "\"";
    }
    out += i + 1 < m.rows() ? "],\n" : "]";
  }
  return out + "]";
}

Complex parse_complex(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ConfigError("empty complex literal");
  if (s.front() == '+') s.erase(0, 1);
  if (s.back() != 'i') return {parse_real(s, text), 0.0};

  s.pop_back();
  // split at the last sign that is not an exponent sign or the leading sign
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string re_part = split == std::string::npos ? "" : s.substr(0, split);
  std::string im_part = split == std::string::npos ? s : s.substr(split);
  if (!im_part.empty() && im_part.front() == '+') im_part.erase(0, 1);
  double im = 0.0;
  if (im_part.empty()) im = 1.0;
  else if (im_part == "-") im = -1.0;
  else im = parse_real(im_part, text);
  const double re = re_part.empty() ? 0.0 : parse_real(re_part, text);
  return {re, im};
}

Point parse_point(std::string_view text) {
  Point p;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    p.push_back(parse_complex(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return p;
}

std::string to_json(const std::vector<verify::CheckReport>& reports, const Options& opts) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json rec;
    rec["id"] = r.id;
    rec["pass"] = r.pass;
    rec["max_residual"] = r.max_residual;
    rec["mean_residual"] = r.mean_residual;
    rec["tolerance"] = r.tolerance;
    rec["samples"] = r.samples;
    rec["seed"] = r.seed;
    rec["wall_ms"] = wall_ms(r, opts);
    rec["claim_ref"] = r.claim_ref;
    arr.push_back(std::move(rec));
  }
  return arr.dump(2) + "\n";
}

std::string to_csv(const std::vector<verify::CheckReport>& reports, const Options& opts) {
  std::string out = "id,pass,max_residual,mean_residual,tolerance,samples,seed,wall_ms,claim_ref\n";
  for (const auto& r : reports) {
    out += csv_field(r.id) + "," + (r.pass ? "true" : "false") + "," + format_real(r.max_residual) + "," +
           format_real(r.mean_residual) + "," + format_real(r.tolerance) + "," + std::to_string(r.samples) + "," +
           std::to_string(r.seed) + "," + format_real(wall_ms(r, opts)) + "," + csv_field(r.claim_ref) + "\n";
  }
  return out;
}

std::string to_text(const std::vector<verify::CheckReport>& reports, const Options& opts) {
  std::ostringstream os;
  int passed = 0;
  for (const auto& r : reports) {
    passed += r.pass ? 1 : 0;
    os << (r.pass ? "PASS " : "FAIL ") << r.id << "  max=" << format_real(r.max_residual)
       << "  tol=" << format_real(r.tolerance) << "  samples=" << r.samples << "  seed=" << r.seed;
    if (opts.timing) os << "  wall_ms=" << format_real(r.wall_ms);
    os << "\n    " << r.claim_ref << "\n";
    for (const auto& c : r.conditions) {
      os << "    " << (c.pass ? "ok   " : "FAIL ") << c.name << ": " << format_real(c.value);
      if (c.cmp != verify::Compare::Record) os << " " << compare_name(c.cmp) << " " << format_real(c.threshold);
      os << "  (mean " << format_real(c.mean) << ", n=" << c.samples << ")\n";
    }
    if (!r.worst_point.empty()) {
      os << "    worst point:";
      for (Complex z : r.worst_point) os << " " << format_complex(z);
      os << "\n";
    }
  }
  os << passed << "/" << reports.size() << " checks passed\n";
  return os.str();
}

std::string render(const std::vector<verify::CheckReport>& reports, Format format, const Options& opts) {
  switch (format) {
    case Format::Json: return to_json(reports, opts);
    case Format::Csv: return to_csv(reports, opts);
    case Format::Text: return to_text(reports, opts);
  }
  return {};
}

}  // namespace kahler::report
