#include "ricsel/io.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace ricsel {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

double parse_cell(const std::string& cell, std::size_t line_no,
                  const std::string& column) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  const auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc{} || result.ptr != end || !std::isfinite(value)) {
    throw parse_error("non-numeric cell \"" + cell + "\" at row " +
                      std::to_string(line_no) + ", column " + column);
  }
  return value;
}

std::vector<int> parse_index_list(const std::string& s) {
  std::vector<int> out;
  if (s.empty()) return out;
  for (const std::string& tok : split(s, ',')) {
    int v = 0;
    const auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (r.ec != std::errc{} || r.ptr != tok.data() + tok.size()) {
      throw parse_error("bad index: " + tok);
    }
    out.push_back(v);
  }
  return out;
}

std::vector<CriterionKind> parse_criteria_list(const std::string& s) {
  std::vector<CriterionKind> out;
  for (const std::string& tok : split(s, ',')) {
    if (!tok.empty()) out.push_back(criterion_from_name(tok));
  }
  if (out.empty()) throw parse_error("empty criteria list");
  return out;
}

Json vector_to_json(const Vector& v) {
  Json arr = Json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Vector vector_from_json(const Json& j) {
  Vector v(static_cast<Index>(j.size()));
  Index i = 0;
  for (const auto& x : j) v[i++] = x.get<double>();
  return v;
}

}  // namespace

Dataset parse_dataset(const std::string& text, const std::string& response) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    throw parse_error("missing header row");
  }
  const std::vector<std::string> header = split(strip_cr(line), ',');
  for (const std::string& name : header) {
    if (name.empty()) throw parse_error("empty column name in header");
    if (std::count(header.begin(), header.end(), name) > 1) {
      throw parse_error("duplicate header column: " + name);
    }
  }
  const auto it = std::find(header.begin(), header.end(), response);
  if (it == header.end()) {
    throw parse_error("response column \"" + response + "\" not found");
  }
  const std::size_t y_col = static_cast<std::size_t>(it - header.begin());
  if (header.size() < 2) {
    throw parse_error("dataset needs at least one covariate column");
  }

  std::vector<double> y_values;
  std::vector<std::vector<double>> x_rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line, ',');
    if (cells.size() != header.size()) {
      throw parse_error("row " + std::to_string(line_no) + " has " +
                        std::to_string(cells.size()) + " cells, expected " +
                        std::to_string(header.size()));
    }
    std::vector<double> x_row;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const double v = parse_cell(cells[c], line_no, header[c]);
      if (c == y_col) {
        y_values.push_back(v);
      } else {
        x_row.push_back(v);
      }
    }
    x_rows.push_back(std::move(x_row));
  }
  if (y_values.size() < 2) {
    throw parse_error("dataset needs at least 2 data rows");
  }

  const Index n = static_cast<Index>(y_values.size());
  const Index p = static_cast<Index>(header.size() - 1);
  Vector y(n);
  Matrix X(n, p);
  for (Index i = 0; i < n; ++i) {
    y[i] = y_values[static_cast<std::size_t>(i)];
    for (Index j = 0; j < p; ++j) {
      X(i, j) = x_rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  std::vector<std::string> names;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c != y_col) names.push_back(header[c]);
  }
  return Dataset(std::move(y), std::move(X), std::move(names));
}

Dataset read_dataset(const std::string& path, const std::string& response) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw parse_error("cannot open dataset file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_dataset(buffer.str(), response);
}

std::string content_digest(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char ch : bytes) {
    hash ^= ch;
    hash *= 0x100000001b3ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << hash;
  return os.str();
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw parse_error("cannot open file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return content_digest(buffer.str());
}

Json ReportDocument::to_json() const {
  Json j;
  j["schema"] = schema;
  j["command"] = command;
  j["input_digest"] = input_digest;
  j["payload"] = payload;
  j["timing_ms"] = timing_ms;
  return j;
}

ReportDocument ReportDocument::from_json(const Json& j) {
  ReportDocument doc;
  doc.schema = j.at("schema").get<std::string>();
  doc.command = j.at("command").get<std::string>();
  doc.input_digest = j.at("input_digest").get<std::string>();
  doc.payload = j.at("payload");
  doc.timing_ms = j.at("timing_ms").get<double>();
  return doc;
}

Json to_json(const FittedModel& fit) {
  Json j;
  j["model"] = fit.model.active;
  j["k"] = fit.model.k();
  j["n"] = fit.n;
  j["family"] = family_name(fit.family);
  j["beta_hat"] = vector_to_json(fit.beta_hat);
  j["theta_hat"] = vector_to_json(fit.theta_hat);
  j["sigma2_reml"] = fit.sigma2_reml;
  j["sigma2_mle"] = fit.sigma2_mle;
  j["q"] = fit.q;
  j["logdet_w"] = fit.logdet_w;
  j["logdet_xwx"] = fit.logdet_xwx;
  j["logdet_xx"] = fit.logdet_xx;
  j["resid_loglik"] = fit.resid_loglik;
  j["boundary_warning"] = fit.boundary_warning;
  return j;
}

Json to_json(const SelectionReport& report) {
  Json rows = Json::array();
  for (const SelectionRow& row : report.rows) {
    Json r;
    r["model"] = row.model.active;
    r["k"] = row.model.k();
    if (row.feasible()) {
      Json values;
      for (const auto& [kind, value] : row.values) {
        values[criterion_name(kind)] = value;
      }
      r["criteria"] = values;
      r["sigma2_reml"] = row.fit->sigma2_reml;
      r["sigma2_mle"] = row.fit->sigma2_mle;
      r["theta_hat"] = vector_to_json(row.fit->theta_hat);
      r["boundary_warning"] = row.fit->boundary_warning;
    } else {
      r["skip_reason"] = row.skip_reason;
    }
    rows.push_back(std::move(r));
  }
  Json winners = Json::array();
  for (const Winner& w : report.winners) {
    Json jw;
    jw["criterion"] = criterion_name(w.kind);
    jw["model"] = w.model.active;
    jw["value"] = w.value;
    winners.push_back(std::move(jw));
  }
  Json j;
  j["rows"] = std::move(rows);
  j["winners"] = std::move(winners);
  return j;
}

Json to_json(const ExperimentSummary& summary) {
  Json j;
  Json rates = Json::array();
  for (const RateRow& row : summary.rates) {
    Json r;
    r["n"] = row.n;
    r["criterion"] = criterion_name(row.kind);
    r["true_rate"] = row.true_rate;
    r["full_rate"] = row.full_rate;
    r["overfit_rate"] = row.overfit_rate;
    r["underfit_rate"] = row.underfit_rate;
    r["failed_rate"] = row.failed_rate;
    r["mean_selected_k"] = row.mean_selected_k;
    rates.push_back(std::move(r));
  }
  j["rates"] = std::move(rates);
  Json identities = Json::array();
  for (const IdentityRow& row : summary.identities) {
    Json r;
    r["name"] = row.name;
    r["target"] = row.target;
    r["mc_mean"] = row.mc_mean;
    r["std_error"] = row.std_error;
    r["flagged"] = row.flagged;
    identities.push_back(std::move(r));
  }
  j["identities"] = std::move(identities);
  Json ks = Json::array();
  for (const KsRow& row : summary.ks_checks) {
    Json r;
    r["name"] = row.name;
    r["statistic"] = row.statistic;
    r["p_value"] = row.p_value;
    ks.push_back(std::move(r));
  }
  j["ks_checks"] = std::move(ks);
  return j;
}

ExperimentConfig experiment_config_from_json(const Json& j) {
  ExperimentConfig config;
  config.truth.beta0 = vector_from_json(j.at("beta0"));
  config.truth.sigma0_sq = j.at("sigma0_sq").get<double>();
  if (j.contains("correlation")) {
    const Json& corr = j.at("correlation");
    const CorrelationFamily family =
        family_from_name(corr.at("family").get<std::string>());
    switch (family) {
      case CorrelationFamily::Identity:
        config.truth.correlation = CorrelationSpec::identity();
        break;
      case CorrelationFamily::Ar1:
        config.truth.correlation = CorrelationSpec::ar1(corr.at("theta").get<double>());
        break;
      case CorrelationFamily::Exchangeable:
        config.truth.correlation =
            CorrelationSpec::exchangeable(corr.at("theta").get<double>());
        break;
    }
  }
  config.truth.intercept = j.value("intercept", false);
  for (const auto& n : j.at("n_values")) {
    config.n_values.push_back(n.get<Index>());
  }
  config.replications = j.at("replications").get<int>();
  if (j.contains("criteria")) {
    for (const auto& name : j.at("criteria")) {
      config.criteria.push_back(criterion_from_name(name.get<std::string>()));
    }
  }
  config.fit_family = family_from_name(j.value("fit_family", std::string("identity")));
  config.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("forced")) {
    for (const auto& idx : j.at("forced")) {
      config.forced.push_back(idx.get<int>());
    }
  }
  config.max_k = j.value("max_k", 0);
  return config;
}

Json to_json(const ExperimentConfig& config) {
  Json j;
  j["beta0"] = vector_to_json(config.truth.beta0);
  j["sigma0_sq"] = config.truth.sigma0_sq;
  Json corr;
  corr["family"] = family_name(config.truth.correlation.family);
  if (config.truth.correlation.m() > 0) {
    corr["theta"] = config.truth.correlation.theta[0];
  }
  j["correlation"] = std::move(corr);
  j["intercept"] = config.truth.intercept;
  j["n_values"] = config.n_values;
  j["replications"] = config.replications;
  Json kinds = Json::array();
  for (CriterionKind kind : config.criteria) kinds.push_back(criterion_name(kind));
  j["criteria"] = std::move(kinds);
  j["fit_family"] = family_name(config.fit_family);
  j["seed"] = config.seed;
  j["forced"] = config.forced;
  j["max_k"] = config.max_k;
  return j;
}

namespace {

void render_pretty(const Json& payload, std::ostream& out) {
  if (payload.contains("rows")) {
    out << "model           k  criteria\n";
    for (const auto& row : payload.at("rows")) {
      std::ostringstream model;
      model << row.at("model").dump();
      out << std::left << std::setw(15) << model.str() << ' '
          << row.at("k").get<int>() << "  ";
      if (row.contains("skip_reason")) {
        out << "skipped: " << row.at("skip_reason").get<std::string>();
      } else {
        bool first = true;
        for (const auto& [name, value] : row.at("criteria").items()) {
          if (!first) out << "  ";
          out << name << '=' << std::setprecision(6) << value.get<double>();
          first = false;
        }
      }
      out << '\n';
    }
    out << "\nwinners:\n";
    for (const auto& w : payload.at("winners")) {
      out << "  " << w.at("criterion").get<std::string>() << " -> "
          << w.at("model").dump() << "  value=" << std::setprecision(6)
          << w.at("value").get<double>() << '\n';
    }
    return;
  }
  if (payload.contains("rates") && !payload.at("rates").empty()) {
    out << "n      criterion  true   full   overfit underfit mean_k\n";
    for (const auto& r : payload.at("rates")) {
      out << std::left << std::setw(6) << r.at("n").get<long>() << ' '
          << std::setw(10) << r.at("criterion").get<std::string>()
          << std::setprecision(4) << std::fixed << r.at("true_rate").get<double>()
          << ' ' << r.at("full_rate").get<double>() << ' '
          << r.at("overfit_rate").get<double>() << "  "
          << r.at("underfit_rate").get<double>() << "  "
          << r.at("mean_selected_k").get<double>() << '\n';
      out.unsetf(std::ios::fixed);
    }
  }
  if (payload.contains("identities")) {
    for (const auto& r : payload.at("identities")) {
      out << r.at("name").get<std::string>() << ": target="
          << r.at("target").get<double>() << " mc_mean="
          << r.at("mc_mean").get<double>() << " se="
          << r.at("std_error").get<double>()
          << (r.at("flagged").get<bool>() ? "  [FLAGGED]" : "") << '\n';
    }
  }
  if (payload.contains("ks_checks")) {
    for (const auto& r : payload.at("ks_checks")) {
      out << "ks " << r.at("name").get<std::string>() << ": D="
          << r.at("statistic").get<double>() << " p="
          << r.at("p_value").get<double>() << '\n';
    }
  }
  if (!payload.contains("rows") && !payload.contains("rates") &&
      !payload.contains("identities")) {
    out << payload.dump(2) << '\n';
  }
}

std::string join_argv(int argc, const char* const* argv) {
  std::string cmd;
  for (int i = 0; i < argc; ++i) {
    if (i > 0) cmd += ' ';
    cmd += argv[i];
  }
  return cmd;
}

}  // namespace

int run_command(int argc, const char* const* argv, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"Variable selection under correlated Gaussian errors"};
  app.name("ric-select");
  app.require_subcommand(1);
  // let global flags (--pretty, --seed, ...) appear after the subcommand too
  app.fallthrough();

  std::uint64_t seed = 12345;
  std::string family_str = "identity";
  double theta = 0.0;
  bool force_intercept = false;
  bool pretty = false;
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--family", family_str, "correlation family")
      ->check(CLI::IsMember({"identity", "ar1", "exchangeable"}));
  app.add_option("--theta", theta, "correlation parameter");
  app.add_flag("--force-intercept", force_intercept,
               "treat the first design column as an all-ones intercept");
  app.add_flag("--pretty", pretty, "human-readable tables instead of JSON");

  std::string data_path, response, columns_arg, criteria_arg = "ric,ric_star,ricc,aic,aicc,bic";
  std::string forced_arg, config_path;
  int max_k = 0;
  long verify_n = 0, verify_k = 0, verify_reps = 0;

  CLI::App* fit_cmd = app.add_subcommand("fit", "fit one model by profile REML");
  fit_cmd->add_option("--data", data_path, "CSV dataset")->required();
  fit_cmd->add_option("--response", response, "response column name")->required();
  fit_cmd->add_option("--columns", columns_arg,
                      "comma-separated covariate names (default: all)");

  CLI::App* select_cmd =
      app.add_subcommand("select", "exhaustive best-subset selection");
  select_cmd->add_option("--data", data_path, "CSV dataset")->required();
  select_cmd->add_option("--response", response, "response column name")->required();
  select_cmd->add_option("--criteria", criteria_arg, "comma-separated criteria");
  select_cmd->add_option("--max-k", max_k, "largest subset size (0 = p)");
  select_cmd->add_option("--forced", forced_arg,
                         "comma-separated 1-based indices always included");

  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "Monte-Carlo selection-rate experiment");
  simulate_cmd->add_option("--config", config_path, "experiment config JSON")
      ->required();

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Monte-Carlo check of the moment identities");
  verify_cmd->add_option("--n", verify_n, "sample size")->required();
  verify_cmd->add_option("--k", verify_k, "fitted covariate count")->required();
  verify_cmd->add_option("--reps", verify_reps, "replications")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << '\n' << app.help();
    return 1;
  }

  const auto started = std::chrono::steady_clock::now();
  ReportDocument doc;
  doc.command = join_argv(argc, argv);

  try {
    const CorrelationFamily family = family_from_name(family_str);
    const auto make_spec = [&]() {
      switch (family) {
        case CorrelationFamily::Identity: return CorrelationSpec::identity();
        case CorrelationFamily::Ar1: return CorrelationSpec::ar1(theta);
        case CorrelationFamily::Exchangeable:
          return CorrelationSpec::exchangeable(theta);
      }
      return CorrelationSpec::identity();
    };

    if (fit_cmd->parsed()) {
      doc.input_digest = file_digest(data_path);
      Dataset data = read_dataset(data_path, response);
      if (!columns_arg.empty()) {
        std::vector<std::string> wanted = split(columns_arg, ',');
        Matrix X(data.n(), static_cast<Index>(wanted.size()));
        for (std::size_t c = 0; c < wanted.size(); ++c) {
          const auto it = std::find(data.names.begin(), data.names.end(), wanted[c]);
          if (it == data.names.end()) {
            throw parse_error("column \"" + wanted[c] + "\" not found");
          }
          X.col(static_cast<Index>(c)) =
              data.X.col(it - data.names.begin());
        }
        data = Dataset(data.y, std::move(X), wanted);
      }
      std::vector<int> all(static_cast<std::size_t>(data.p()));
      for (Index j = 0; j < data.p(); ++j) {
        all[static_cast<std::size_t>(j)] = static_cast<int>(j) + 1;
      }
      const FittedModel fit = profile_reml(data, CandidateModel(all), family);
      doc.payload = to_json(fit);
    } else if (select_cmd->parsed()) {
      doc.input_digest = file_digest(data_path);
      const Dataset data = read_dataset(data_path, response);
      const std::vector<CriterionKind> kinds = parse_criteria_list(criteria_arg);
      const std::vector<int> forced = parse_index_list(forced_arg);
      const int effective_max_k = max_k == 0 ? static_cast<int>(data.p()) : max_k;
      const std::vector<CandidateModel> candidates =
          enumerate_candidates(static_cast<int>(data.p()), forced, effective_max_k);
      doc.payload = to_json(select(data, family, candidates, kinds));
    } else if (simulate_cmd->parsed()) {
      doc.input_digest = file_digest(config_path);
      std::ifstream in(config_path);
      if (!in) throw parse_error("cannot open config file: " + config_path);
      Json config_json;
      try {
        in >> config_json;
      } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("bad config JSON: ") + e.what());
      }
      ExperimentConfig config = experiment_config_from_json(config_json);
      config.validate();
      doc.payload = to_json(run_experiment(config));
    } else if (verify_cmd->parsed()) {
      if (verify_n < 1 || verify_k < 1 || verify_reps < 1) {
        throw domain_error("verify requires positive --n, --k, --reps");
      }
      ExperimentConfig config;
      config.truth.beta0 = Vector::Ones(verify_k);
      config.truth.sigma0_sq = 1.0;
      config.truth.correlation = make_spec();
      config.truth.intercept = force_intercept;
      config.n_values = {static_cast<Index>(verify_n)};
      config.replications = static_cast<int>(verify_reps);
      config.seed = seed;
      config.validate();
      doc.input_digest = content_digest(to_json(config).dump());
      doc.payload = to_json(verify_identities(config));
    }
  } catch (const domain_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  const auto elapsed = std::chrono::steady_clock::now() - started;
  doc.timing_ms =
      std::chrono::duration<double, std::milli>(elapsed).count();

  if (pretty) {
    render_pretty(doc.payload, out);
  } else {
    out << doc.to_json().dump() << '\n';
  }
  return 0;
}

}  // namespace ricsel
