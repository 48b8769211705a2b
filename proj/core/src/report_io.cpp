#include "sttrace/report_io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "sttrace/error.hpp"

namespace sttrace {

using nlohmann::json;

ReportFormat parse_report_format(const std::string& text) {
  if (text == "csv") return ReportFormat::Csv;
  if (text == "json") return ReportFormat::Json;
  if (text == "svg") return ReportFormat::Svg;
  throw Error(ErrorCode::InvalidArgument, "unknown format '" + text + "' (expected csv, json or svg)");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

// JSON has no inf/nan; those are stored as strings.
json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

json num(const std::optional<double>& v) { return v ? num(*v) : json(nullptr); }

double get_num(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    return std::numeric_limits<double>::quiet_NaN();
  }
  return j.get<double>();
}

std::optional<double> get_opt_num(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return get_num(j.at(key));
}

json opt_bool(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

std::optional<bool> get_opt_bool(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<bool>();
}

}  // namespace

std::string report_to_csv(const ExperimentReport& report) {
  std::string out = "n,k_n,window_ok,delta_mid,delta_rad,tail_bound,proxy,bound,pass,reason\n";
  for (const auto& r : report.rows) {
    out += std::to_string(r.n) + ',' + std::to_string(r.k) + ',' + (r.window_ok ? "true" : "false") + ',' +
           opt(r.delta_mid) + ',' + opt(r.delta_rad) + ',' + opt(r.tail_bound) + ',' + opt(r.proxy) + ',' +
           opt(r.bound) + ',' + (r.pass ? (*r.pass ? "true" : "false") : "skip") + ',' + csv_field(r.reason) + '\n';
  }
  return out;
}

std::string report_to_json(const ExperimentReport& report) {
  const auto& m = report.meta;
  json meta = {{"experiment", m.experiment},
               {"p", m.p},
               {"N", m.N},
               {"n_max", m.n_max},
               {"precision_bits", m.precision_bits},
               {"max_k", m.max_k},
               {"truncation_policy", m.truncation_policy},
               {"version", m.version},
               {"timestamp", m.timestamp},
               {"proxy_constant", num(m.proxy_constant)},
               {"gap_constant", num(m.gap_constant)},
               {"head_constant", num(m.head_constant)},
               {"proxy_normalization", num(m.proxy_normalization)}};
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"n", r.n},
                    {"k_n", r.k},
                    {"window_ok", r.window_ok},
                    {"delta_mid", num(r.delta_mid)},
                    {"delta_rad", num(r.delta_rad)},
                    {"tail_bound", num(r.tail_bound)},
                    {"proxy", num(r.proxy)},
                    {"bound", num(r.bound)},
                    {"pass", opt_bool(r.pass)},
                    {"reason", r.reason},
                    {"certificate", r.certificate},
                    {"gap", num(r.gap)},
                    {"gap_ok", opt_bool(r.gap_ok)},
                    {"bound_alt", num(r.bound_alt)},
                    {"head", num(r.head)},
                    {"head_bound", num(r.head_bound)},
                    {"head_ok", opt_bool(r.head_ok)}});
  }
  json doc = {{"metadata", meta}, {"rows", rows}, {"all_pass", report.all_pass()}};
  return doc.dump(2) + "\n";
}

ExperimentReport report_from_json(const std::string& text) {
  ExperimentReport report;
  try {
    const json doc = json::parse(text);
    const json& m = doc.at("metadata");
    auto& meta = report.meta;
    meta.experiment = m.at("experiment").get<std::string>();
    meta.p = m.at("p").get<std::int64_t>();
    meta.N = m.at("N").get<std::int64_t>();
    meta.n_max = m.at("n_max").get<int>();
    meta.precision_bits = m.at("precision_bits").get<long>();
    meta.max_k = m.at("max_k").get<long>();
    meta.truncation_policy = m.at("truncation_policy").get<std::string>();
    meta.version = m.at("version").get<std::string>();
    meta.timestamp = m.at("timestamp").get<std::string>();
    meta.proxy_constant = get_num(m.at("proxy_constant"));
    meta.gap_constant = get_num(m.at("gap_constant"));
    meta.head_constant = get_num(m.at("head_constant"));
    meta.proxy_normalization = get_num(m.at("proxy_normalization"));
    for (const json& j : doc.at("rows")) {
      ExperimentRow r;
      r.n = j.at("n").get<int>();
      r.k = j.at("k_n").get<long>();
      r.window_ok = j.at("window_ok").get<bool>();
      r.delta_mid = get_opt_num(j, "delta_mid");
      r.delta_rad = get_opt_num(j, "delta_rad");
      r.tail_bound = get_opt_num(j, "tail_bound");
      r.proxy = get_opt_num(j, "proxy");
      r.bound = get_opt_num(j, "bound");
      r.pass = get_opt_bool(j, "pass");
      r.reason = j.value("reason", "");
      r.certificate = j.value("certificate", "");
      r.gap = get_opt_num(j, "gap");
      r.gap_ok = get_opt_bool(j, "gap_ok");
      r.bound_alt = get_opt_num(j, "bound_alt");
      r.head = get_opt_num(j, "head");
      r.head_bound = get_opt_num(j, "head_bound");
      r.head_ok = get_opt_bool(j, "head_ok");
      report.rows.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed report JSON: ") + e.what());
  }
  return report;
}

std::string report_to_svg(const ExperimentReport& report) {
  constexpr double W = 640, H = 400, L = 70, R = 20, T = 30, B = 50;
  struct Pt {
    double n, y;
  };
  std::vector<Pt> proxy, bound;
  for (const auto& r : report.rows) {
    if (r.proxy && *r.proxy > 0 && std::isfinite(*r.proxy)) proxy.push_back({double(r.n), std::log10(*r.proxy)});
    if (r.bound && *r.bound > 0 && std::isfinite(*r.bound)) bound.push_back({double(r.n), std::log10(*r.bound)});
  }
  double nlo = 0, nhi = 1, ylo = -1, yhi = 0;
  bool first = true;
  for (const auto* series : {&proxy, &bound}) {
    for (const auto& p : *series) {
      if (first) {
        nlo = nhi = p.n;
        ylo = yhi = p.y;
        first = false;
      }
      nlo = std::min(nlo, p.n);
      nhi = std::max(nhi, p.n);
      ylo = std::min(ylo, p.y);
      yhi = std::max(yhi, p.y);
    }
  }
  if (nhi <= nlo) nhi = nlo + 1;
  ylo = std::floor(ylo);
  yhi = std::ceil(yhi);
  if (yhi <= ylo) yhi = ylo + 1;
  auto sx = [&](double n) { return L + (n - nlo) / (nhi - nlo) * (W - L - R); };
  auto sy = [&](double y) { return H - B - (y - ylo) / (yhi - ylo) * (H - T - B); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << L << "\" y=\"18\">" << report.meta.experiment << " p=" << report.meta.p << " N=" << report.meta.N
     << " (log scale)</text>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  const int ystep = std::max(1, static_cast<int>((yhi - ylo) / 8));
  for (double y = ylo; y <= yhi; y += ystep) {
    os << "<line x1=\"" << L - 4 << "\" y1=\"" << sy(y) << "\" x2=\"" << L << "\" y2=\"" << sy(y) << "\" stroke=\"black\"/>";
    os << "<text x=\"" << L - 8 << "\" y=\"" << sy(y) + 4 << "\" text-anchor=\"end\">1e" << y << "</text>\n";
  }
  for (const auto& r : report.rows) {
    const double n = r.n;
    if (n < nlo || n > nhi) continue;
    os << "<text x=\"" << sx(n) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">" << r.n << "</text>\n";
  }
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">n</text>\n";
  auto polyline = [&](const std::vector<Pt>& pts, const char* color) {
    if (pts.empty()) return;
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const auto& p : pts) os << sx(p.n) << ',' << sy(p.y) << ' ';
    os << "\"/>\n";
    for (const auto& p : pts) os << "<circle cx=\"" << sx(p.n) << "\" cy=\"" << sy(p.y) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
  };
  polyline(proxy, "#1f77b4");
  polyline(bound, "#d62728");
  os << "<text x=\"" << W - R - 120 << "\" y=\"" << T + 12 << "\" fill=\"#1f77b4\">proxy</text>\n";
  os << "<text x=\"" << W - R - 120 << "\" y=\"" << T + 28 << "\" fill=\"#d62728\">bound</text>\n";
  os << "</svg>\n";
  return os.str();
}

std::string render_report(const ExperimentReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Csv: return report_to_csv(report);
    case ReportFormat::Json: return report_to_json(report);
    case ReportFormat::Svg: return report_to_svg(report);
  }
  return {};
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path + " for writing: " + std::strerror(errno));
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path + " for reading: " + std::strerror(errno));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit_report(const ExperimentReport& report, ReportFormat format, const std::string& path) {
  write_text(path, render_report(report, format));
}

}  // namespace sttrace
