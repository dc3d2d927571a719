#include "icv/report_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "icv/error.hpp"

namespace icv {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<double> parse_number(const std::string& field) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  if (line.find(',') != std::string::npos || line.find(';') != std::string::npos) {
    std::string cur;
    for (char ch : line) {
      if (ch == ',' || ch == ';') {
        out.push_back(trim(cur));
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    out.push_back(trim(cur));
  } else {
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
  }
  for (auto& f : out) {
    if (f.size() >= 2 && f.front() == '"' && f.back() == '"') f = f.substr(1, f.size() - 2);
  }
  return out;
}

std::string line_error(std::size_t line, const std::string& what) {
  return "line " + std::to_string(line) + ": " + what;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Dataset read_dataset(std::istream& in, const std::string& column, std::size_t min_values) {
  Dataset ds;
  std::optional<std::size_t> index;
  bool first_row = true;
  std::string raw;
  std::size_t line_no = 0;

  auto resolve_index = [&](const std::vector<std::string>* header) {
    if (column.empty()) {
      index = 0;
      ds.column = header ? (*header)[0] : "1";
      return;
    }
    if (header) {
      const auto it = std::find(header->begin(), header->end(), column);
      if (it != header->end()) {
        index = static_cast<std::size_t>(it - header->begin());
        ds.column = column;
        return;
      }
    }
    std::size_t k = 0;
    const auto [ptr, ec] = std::from_chars(column.data(), column.data() + column.size(), k);
    if (ec != std::errc() || ptr != column.data() + column.size() || k == 0)
      fail(Errc::parse_error, "column '" + column + "' not found");
    index = k - 1;
    ds.column = header && index < header->size() ? (*header)[*index] : column;
  };

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_fields(line);

    if (first_row) {
      first_row = false;
      const bool header = std::none_of(fields.begin(), fields.end(),
                                       [](const auto& f) { return parse_number(f).has_value(); });
      resolve_index(header ? &fields : nullptr);
      if (header) continue;
    }
    if (*index >= fields.size())
      fail(Errc::parse_error, line_error(line_no, "missing column " + ds.column));
    const auto v = parse_number(fields[*index]);
    if (!v) fail(Errc::parse_error, line_error(line_no, "non-numeric value '" + fields[*index] + "'"));
    ds.values.push_back(*v);
  }

  if (ds.values.size() < min_values) {
    fail(Errc::insufficient_data, "dataset has " + std::to_string(ds.values.size()) +
                                      " observation(s); at least " + std::to_string(min_values) +
                                      " required");
  }
  std::vector<double> sorted(ds.values);
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) ds.ties += sorted[i] == sorted[i - 1] ? 1 : 0;
  return ds;
}

Dataset read_dataset_file(const std::string& path, const std::string& column,
                          std::size_t min_values) {
  std::ifstream in(path);
  if (!in) fail(Errc::parse_error, "cannot open '" + path + "'");
  return read_dataset(in, column, min_values);
}

ParsedStudyConfig parse_study_config(std::istream& in) {
  ParsedStudyConfig parsed;
  auto& cfg = parsed.config;
  std::optional<double> alpha;
  std::optional<double> sigma;
  std::string raw;
  std::size_t line_no = 0;

  auto count = [&](const std::string& key, const std::string& value) {
    std::size_t k = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), k);
    if (ec != std::errc() || ptr != value.data() + value.size())
      fail(Errc::parse_error, line_error(line_no, key + ": expected a non-negative integer, got '" +
                                                      value + "'"));
    return k;
  };
  auto real = [&](const std::string& key, const std::string& value) {
    const auto v = parse_number(value);
    if (!v) fail(Errc::parse_error, line_error(line_no, key + ": expected a number, got '" + value + "'"));
    return *v;
  };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(Errc::parse_error, line_error(line_no, "expected key=value"));
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));

    if (key == "density") {
      try {
        (void)target_density(value);
      } catch (const Error& e) {
        fail(Errc::parse_error, line_error(line_no, std::string("density: ") + e.what()));
      }
      cfg.density = value;
    } else if (key == "n") {
      cfg.n = count(key, value);
    } else if (key == "replications" || key == "reps") {
      cfg.replications = count(key, value);
    } else if (key == "seed") {
      std::uint64_t s = 0;
      const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), s);
      if (ec != std::errc() || ptr != value.data() + value.size())
        fail(Errc::parse_error, line_error(line_no, "seed: expected a 64-bit unsigned integer"));
      cfg.seed = s;
      parsed.seed_given = true;
    } else if (key == "selectors") {
      cfg.selectors.clear();
      for (const auto& name : split_fields(value)) {
        if (name == "lscv" || name == "ucv") {
          cfg.selectors.push_back(Method::LSCV);
        } else if (name == "icv") {
          cfg.selectors.push_back(Method::ICV);
        } else if (name == "icv-star" || name == "icv*") {
          cfg.selectors.push_back(Method::ICVStar);
        } else {
          fail(Errc::parse_error,
               line_error(line_no, "selectors: unknown selector '" + name + "' (lscv, icv, icv-star)"));
        }
      }
    } else if (key == "alpha") {
      alpha = real(key, value);
    } else if (key == "sigma") {
      sigma = real(key, value);
    } else {
      fail(Errc::parse_error, line_error(line_no, "unknown key '" + key + "'"));
    }
  }

  if (alpha.has_value() != sigma.has_value())
    fail(Errc::parse_error, "alpha and sigma must be given together");
  if (alpha) {
    try {
      cfg.kernel = SelectionKernel(*alpha, *sigma);
    } catch (const Error& e) {
      fail(Errc::parse_error, std::string("alpha/sigma: ") + e.what());
    }
  }
  try {
    validate(cfg);
  } catch (const Error& e) {
    fail(Errc::parse_error, e.what());
  }
  return parsed;
}

void write_summary_csv(std::ostream& out, const SimulationSummary& s) {
  const auto& cfg = s.config;
  auto row = [&](const std::string& selector, const char* stat, double value) {
    out << cfg.density << ',' << cfg.n << ',' << selector << ',' << stat << ','
        << format_double(value) << '\n';
  };
  out << "density,n,selector,statistic,value\n";
  row("ise", "mean_h", s.mean_h0);
  row("ise", "sd_h", s.sd_h0);
  row("ise", "replications_used", static_cast<double>(s.used));
  row("ise", "replications_failed", static_cast<double>(s.failed));
  for (const auto& sel : s.selectors) {
    const std::string name = to_string(sel.method);
    row(name, "mean_h", sel.mean_h);
    row(name, "sd_h", sel.sd_h);
    row(name, "mse_vs_mean_h0", sel.mse_vs_mean_h0);
    row(name, "mean_ise_ratio", sel.mean_ise_ratio);
    row(name, "median_ise_ratio", sel.median_ise_ratio);
    row(name, "corr_h0", sel.corr_h0);
    row(name, "failures", static_cast<double>(sel.failures));
  }
}

void write_summary_json(std::ostream& out, const SimulationSummary& s) {
  using nlohmann::ordered_json;
  const auto& cfg = s.config;
  ordered_json j;
  ordered_json c;
  c["density"] = cfg.density;
  c["n"] = cfg.n;
  c["replications"] = cfg.replications;
  c["seed"] = cfg.seed;
  ordered_json sels = ordered_json::array();
  for (Method m : cfg.selectors) sels.push_back(to_string(m));
  c["selectors"] = sels;
  c["param_source"] = cfg.kernel ? "manual" : "model";
  c["alpha"] = s.alpha;
  c["sigma"] = s.sigma;
  j["config"] = c;
  j["replications_used"] = s.used;
  j["replications_failed"] = s.failed;
  j["h0"] = {{"mean", s.mean_h0}, {"sd", s.sd_h0}};
  ordered_json list = ordered_json::array();
  for (const auto& sel : s.selectors) {
    list.push_back({{"selector", to_string(sel.method)},
                    {"mean_h", sel.mean_h},
                    {"sd_h", sel.sd_h},
                    {"mse_vs_mean_h0", sel.mse_vs_mean_h0},
                    {"mean_ise_ratio", sel.mean_ise_ratio},
                    {"median_ise_ratio", sel.median_ise_ratio},
                    {"corr_h0", sel.corr_h0},
                    {"failures", sel.failures}});
  }
  j["selectors"] = list;
  out << j.dump(2) << '\n';
}

void write_distribution_csv(std::ostream& out, const StudyResult& result) {
  for (const auto& sel : result.summary.selectors) {
    out << "# corr(" << to_string(sel.method) << ",h0)=" << format_double(sel.corr_h0) << '\n';
  }
  out << "rep_index,selector,bandwidth,h0,ise_ratio,status\n";
  for (const auto& rec : result.records) {
    for (const auto& o : rec.outcomes) {
      out << rec.rep_index << ',' << to_string(o.method) << ',' << format_double(o.bandwidth) << ','
          << format_double(rec.h0) << ',' << format_double(o.ise_ratio) << ','
          << (rec.failed() ? "excluded" : "ok") << '\n';
    }
  }
}

std::string format_summary_table(const SimulationSummary& s) {
  const auto& cfg = s.config;
  std::ostringstream os;
  char buf[160];
  os << "density=" << cfg.density << " n=" << cfg.n << " replications=" << s.used << " used, "
     << s.failed << " excluded" << '\n';
  std::snprintf(buf, sizeof buf, "ICV kernel: alpha=%.4g sigma=%.4g (%s)\n", s.alpha, s.sigma,
                cfg.kernel ? "manual" : "model");
  os << buf;
  std::snprintf(buf, sizeof buf, "%-10s %10s %12s %16s %12s %12s %9s\n", "", "E(h)", "SD(h)*1e2",
                "E(h-E(h0))^2*1e4", "E(ratio)", "Med(ratio)", "corr(h0)");
  os << buf;
  std::snprintf(buf, sizeof buf, "%-10s %10.5f %12.4f %16s %12s %12s %9s\n", "ise", s.mean_h0,
                s.sd_h0 * 1e2, "", "", "", "");
  os << buf;
  for (const auto& sel : s.selectors) {
    std::snprintf(buf, sizeof buf, "%-10s %10.5f %12.4f %16.4f %12.4f %12.4f %9.3f\n",
                  to_string(sel.method), sel.mean_h, sel.sd_h * 1e2, sel.mse_vs_mean_h0 * 1e4,
                  sel.mean_ise_ratio, sel.median_ise_ratio, sel.corr_h0);
    os << buf;
  }
  return os.str();
}

}  // namespace icv
