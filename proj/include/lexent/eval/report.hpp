#ifndef LEXENT_EVAL_REPORT_HPP
#define LEXENT_EVAL_REPORT_HPP

#include <cstdio>
#include <map>
#include <optional>
#include <string>

#include "lexent/eval/metrics.hpp"
#include "lexent/util/text.hpp"

namespace lexent::eval {

namespace detail {
inline std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}
inline std::string opt(const std::optional<double>& v, int decimals) { return v ? fixed(*v, decimals) : "n/a"; }
}  // namespace detail

/// Aligned human-readable summary.
inline std::string format_report_table(const MetricsReport& r) {
  std::string out;
  auto row = [&](const std::string& k, const std::string& v) {
    std::string key = k;
    key.resize(14, ' ');
    out += key + v + '\n';
  };
  row("AP0", detail::opt(r.ap0, 3));
  row("AP1", detail::opt(r.ap1, 3));
  row("Precision", detail::fixed(r.pre, 3));
  row("Recall", detail::fixed(r.rec, 3));
  row("F-measure", detail::fixed(r.f, 3));
  row("Accuracy", detail::fixed(r.acc, 1) + "  (95% CI " + detail::fixed(100.0 * r.wilson_low, 1) + "-" +
                      detail::fixed(100.0 * r.wilson_high, 1) + ")");
  row("Confusion", "c00=" + std::to_string(r.confusion.c00) + " c01=" + std::to_string(r.confusion.c01) +
                       " c10=" + std::to_string(r.confusion.c10) + " c11=" + std::to_string(r.confusion.c11));
  row("Leaked terms", std::to_string(r.leaked_terms));
  return out;
}

/// One key=value per line, full precision; absent AP values read "na".
inline std::string format_report_values(const MetricsReport& r) {
  auto num = [](double v) { return util::format_double(v); };
  auto opt = [&](const std::optional<double>& v) { return v ? num(*v) : std::string("na"); };
  std::string out;
  out += "ap0=" + opt(r.ap0) + '\n';
  out += "ap1=" + opt(r.ap1) + '\n';
  out += "pre=" + num(r.pre) + '\n';
  out += "rec=" + num(r.rec) + '\n';
  out += "f=" + num(r.f) + '\n';
  out += "acc=" + num(r.acc) + '\n';
  out += "ci_low=" + num(r.wilson_low) + '\n';
  out += "ci_high=" + num(r.wilson_high) + '\n';
  out += "c00=" + std::to_string(r.confusion.c00) + '\n';
  out += "c01=" + std::to_string(r.confusion.c01) + '\n';
  out += "c10=" + std::to_string(r.confusion.c10) + '\n';
  out += "c11=" + std::to_string(r.confusion.c11) + '\n';
  out += "leaked_terms=" + std::to_string(r.leaked_terms) + '\n';
  return out;
}

/// Reads key=value lines back; blank and # lines skip.
inline std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> out;
  for (auto line : util::split(text, '\n')) {
    if (util::is_blank_or_comment(line)) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) continue;
    out[std::string(util::trim(line.substr(0, eq)))] = std::string(util::trim(line.substr(eq + 1)));
  }
  return out;
}

}  // namespace lexent::eval

#endif  // LEXENT_EVAL_REPORT_HPP
