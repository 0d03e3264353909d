#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bessel_lab/betti.hpp"
#include "bessel_lab/derham.hpp"
#include "bessel_lab/errors.hpp"
#include "bessel_lab/exact_matrix.hpp"
#include "bessel_lab/moment_cache.hpp"
#include "bessel_lab/moments.hpp"
#include "bessel_lab/periods.hpp"
#include "bessel_lab/verifier.hpp"

namespace bessel_lab::cli {

namespace {

using nlohmann::json;

int parse_int(const std::string& s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw CLI::ValidationError("--k", "not an integer: " + s);
  return v;
}

std::vector<int> range_of(int a, int b) {
  std::vector<int> v;
  for (int k = a; k <= b; ++k) v.push_back(k);
  return v;
}

void print_grid(std::ostream& out, const std::vector<std::vector<std::string>>& cells) {
  size_t width = 0;
  for (const auto& row : cells)
    for (const auto& c : row) width = std::max(width, c.size());
  for (const auto& row : cells) {
    for (size_t j = 0; j < row.size(); ++j) out << (j ? "  " : "") << std::setw(static_cast<int>(width)) << row[j];
    out << '\n';
  }
}

void print_exact(std::ostream& out, const ExactMatrix& m) {
  std::vector<std::vector<std::string>> cells(m.rows());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) cells[i].push_back(m(i, j).to_string());
  print_grid(out, cells);
}

std::string join(const std::vector<int>& v) {
  std::ostringstream s;
  for (size_t n = 0; n < v.size(); ++n) s << (n ? " " : "") << v[n];
  return s.str();
}

std::vector<int> iota_from(int a, int b) { return range_of(a, b); }

void emit_json(std::ostream& out, const std::vector<json>& items) {
  if (items.size() == 1) {
    out << items.front().dump(2) << '\n';
  } else {
    out << json(items).dump(2) << '\n';
  }
}

// Installs the persistent cache for the lifetime of a numeric command.
class CacheScope {
 public:
  CacheScope(const CliConfig& cfg, std::ostream& err) {
    if (cfg.no_cache) return;
    std::filesystem::path dir = cfg.cache_dir.empty() ? default_cache_dir() : std::filesystem::path(cfg.cache_dir);
    try {
      cache_ = std::make_unique<MomentCache>(dir);
      set_moment_cache(cache_.get());
    } catch (const std::exception& e) {
      err << "warning: moment cache disabled: " << e.what() << '\n';
    }
  }
  ~CacheScope() {
    if (cache_) set_moment_cache(nullptr);
  }
  CacheScope(const CacheScope&) = delete;
  CacheScope& operator=(const CacheScope&) = delete;

 private:
  std::unique_ptr<MomentCache> cache_;
};

int cmd_derham(const CliConfig& cfg, std::ostream& out) {
  std::vector<json> items;
  for (int k : cfg.ks) {
    ExactMatrix s = cfg.full ? sfull_matrix(k) : smid_matrix(k);
    std::vector<int> idx = cfg.full ? iota_from(0, k_prime(k)) : middle_indices(k);
    if (cfg.out == OutFormat::kJson) {
      items.push_back({{"k", k},
                       {"matrix", cfg.full ? "S" : "S_mid"},
                       {"indices", idx},
                       {"entries", exact_matrix_to_json(s)},
                       {"det", det_exact(s).to_string()}});
      continue;
    }
    out << "# k=" << k << (cfg.full ? " S" : " S_mid") << " indices: " << join(idx) << '\n';
    print_exact(out, s);
  }
  if (cfg.out == OutFormat::kJson) emit_json(out, items);
  return kExitOk;
}

int cmd_betti(const CliConfig& cfg, std::ostream& out) {
  std::vector<json> items;
  for (int k : cfg.ks) {
    std::vector<int> rows = cfg.full ? iota_from(0, k_prime(k)) : betti_middle_indices(k);
    std::vector<int> cols = cfg.full ? iota_from(0, k / 2) : rows;
    ExactMatrix b = cfg.full ? bfull_matrix(k, cols) : bmid_matrix(k);
    if (cfg.out == OutFormat::kJson) {
      items.push_back({{"k", k},
                       {"matrix", cfg.full ? "B" : "B_mid"},
                       {"rows", rows},
                       {"cols", cols},
                       {"entries", exact_matrix_to_json(b)}});
      continue;
    }
    out << "# k=" << k << (cfg.full ? " B" : " B_mid") << " rows: " << join(rows) << " cols: " << join(cols) << '\n';
    print_exact(out, b);
  }
  if (cfg.out == OutFormat::kJson) emit_json(out, items);
  return kExitOk;
}

int require(const std::optional<int>& v, const char* flag) {
  if (!v) throw CLI::RequiredError(flag);
  return *v;
}

int cmd_moments(const CliConfig& cfg, std::ostream& out) {
  const MomentKind kind = moment_kind_from_string(cfg.kind);
  std::vector<json> items;
  for (int k : cfg.ks) {
    MomentIntegrand m;
    json key = {{"kind", cfg.kind}, {"k", k}};
    switch (kind) {
      case MomentKind::kIkm:
        m = ikm_integrand(k, require(cfg.i, "--i"), require(cfg.c, "--c"));
        key["i"] = *cfg.i;
        key["c"] = *cfg.c;
        break;
      case MomentKind::kRegMinus1:
        m = reg_minus1_integrand(k, require(cfg.i, "--i"));
        key["i"] = *cfg.i;
        break;
      case MomentKind::kRegHalf:
        m = reg_half_integrand(k, require(cfg.j, "--j"));
        key["j"] = *cfg.j;
        break;
      case MomentKind::kCp:
        m = cp_integrand(k, require(cfg.i, "--i"), require(cfg.j, "--j"));
        key["i"] = *cfg.i;
        key["j"] = *cfg.j;
        break;
    }
    MomentValue v = evaluate_moments({m}, cfg.digits).front();
    if (cfg.out == OutFormat::kJson) {
      json item = key;
      item["digits"] = cfg.digits;
      item["value"] = v.value.to_string(cfg.digits);
      item["certified_digits"] = v.certified_digits;
      items.push_back(item);
      continue;
    }
    out << v.value.to_string(cfg.digits) << "  (certified " << v.certified_digits << " digits)\n";
  }
  if (cfg.out == OutFormat::kJson) emit_json(out, items);
  return kExitOk;
}

std::string phased_text(const PhasedReal& p, int digits) {
  std::string s = p.magnitude.to_string(digits);
  if (p.pi_i_power != 0) s += "*(pi i)^" + std::to_string(p.pi_i_power);
  return s;
}

void print_period(std::ostream& out, const std::string& title, const PeriodMatrix& m, int digits) {
  out << "# k=" << m.k << ' ' << title << " rows: " << join(m.row_labels) << " cols: " << join(m.col_labels) << '\n';
  std::vector<std::vector<std::string>> cells(m.entries.rows());
  for (size_t i = 0; i < m.entries.rows(); ++i)
    for (size_t j = 0; j < m.entries.cols(); ++j) cells[i].push_back(phased_text(m.entries(i, j), digits));
  print_grid(out, cells);
}

int cmd_periods(const CliConfig& cfg, std::ostream& out) {
  std::vector<json> items;
  for (int k : cfg.ks) {
    PeriodMatrix mid = pmid_matrix(k, cfg.digits);
    PeriodMatrix rdmod = pfull_rdmod(k, cfg.digits);
    PeriodMatrix modrd = pmodrd_matrix(k, cfg.digits);
    if (cfg.out == OutFormat::kJson) {
      items.push_back({{"k", k},
                       {"pmid", to_json_value(mid)},
                       {"prdmod", to_json_value(rdmod)},
                       {"pmodrd", to_json_value(modrd)}});
      continue;
    }
    print_period(out, "P_mid", mid, cfg.digits);
    print_period(out, "P_rd_mod", rdmod, cfg.digits);
    print_period(out, "P_mod_rd", modrd, cfg.digits);
  }
  if (cfg.out == OutFormat::kJson) emit_json(out, items);
  return kExitOk;
}

int cmd_verify(const CliConfig& cfg, std::ostream& out) {
  std::vector<std::string> names = cfg.checks.empty() ? verification_names() : cfg.checks;
  auto reports = run_verifications(cfg.ks, cfg.digits, names, cfg.jobs);
  bool all = std::all_of(reports.begin(), reports.end(), [](const VerificationReport& r) { return r.passed; });
  if (cfg.out == OutFormat::kJson) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(to_json_value(r));
    out << arr.dump(2) << '\n';
  } else {
    for (const auto& r : reports) {
      out << (r.passed ? "PASS " : "FAIL ") << std::left << std::setw(15) << r.name << std::right
          << " k=" << std::setw(2) << r.k << "  residual " << r.residual.to_string(3) << "  tol "
          << r.tolerance.to_string(1);
      if (r.details.contains("error")) out << "  error: " << r.details["error"].get<std::string>();
      out << '\n';
    }
  }
  return all ? kExitOk : kExitVerificationFailed;
}

int cmd_br(const CliConfig& cfg, std::ostream& out) {
  std::vector<json> items;
  bool all = true;
  for (int k : cfg.ks) {
    VerificationReport rep = verify_br(k, cfg.digits);
    all = all && rep.passed;
    ExactMatrix d = br_d_matrix(k);
    if (cfg.out == OutFormat::kJson) {
      json item = {{"k", k}, {"D", exact_matrix_to_json(d)}, {"report", to_json_value(rep)}};
      if (d.rows() > 0) {
        BrMatrices br = br_matrices(k, cfg.digits);
        item["primed"] = br.primed;
        item["P_BR"] = to_json_value(br.p_br, cfg.digits);
        item["B_BR"] = to_json_value(br.b_br, cfg.digits);
      }
      items.push_back(item);
      continue;
    }
    out << "# k=" << k << " D" << (k % 4 == 0 ? "'" : "") << '\n';
    print_exact(out, d);
    out << "relation residual " << rep.residual.to_string(3) << ", k! S_mid^-1 integral: "
        << (rep.details["kfact_smid_inverse_integral"].get<bool>() ? "yes" : "no") << ", "
        << (rep.passed ? "PASS" : "FAIL") << '\n';
  }
  if (cfg.out == OutFormat::kJson) emit_json(out, items);
  return all ? kExitOk : kExitVerificationFailed;
}

int cmd_deligne(const CliConfig& cfg, std::ostream& out) {
  std::vector<json> items;
  for (int k : cfg.ks) {
    DeligneReport rep = deligne_report(k, cfg.digits);
    if (cfg.out == OutFormat::kJson) {
      items.push_back(to_json_value(rep));
      continue;
    }
    out << "# k=" << k << " rank " << rep.rank << '\n';
    for (const auto& v : rep.values) {
      out << "n=" << std::setw(3) << v.n << "  pi^" << v.pi_power << " * " << v.determinant_name << "  c_n = "
          << v.c_n.to_string(cfg.digits) << '\n';
    }
  }
  if (cfg.out == OutFormat::kJson) emit_json(out, items);
  return kExitOk;
}

}  // namespace

std::vector<int> parse_k_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) return {parse_int(text)};
  int a = parse_int(text.substr(0, dots));
  int b = parse_int(text.substr(dots + 2));
  if (b < a) throw CLI::ValidationError("--k", "empty range " + text);
  return range_of(a, b);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact pairings and Bessel moment periods of symmetric powers of the Kloosterman connection",
               "bessel_lab"};
  app.require_subcommand(1, 1);

  CliConfig cfg;
  std::string k_text;
  std::string out_text = "table";
  std::string checks_text;

  auto add_common = [&](CLI::App* sub, bool numeric) {
    sub->add_option("--k", k_text, "k or a range a..b")->required();
    sub->add_option("--out", out_text, "table or json")->check(CLI::IsMember({"table", "json"}));
    if (!numeric) return;
    sub->add_option("--digits", cfg.digits, "requested decimal digits")->check(CLI::Range(15, 100000));
    sub->add_option("--cache-dir", cfg.cache_dir, "moment cache directory (default $BESSEL_LAB_CACHE)");
    sub->add_flag("--no-cache", cfg.no_cache, "do not read or write the moment cache");
    sub->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::Range(1, 256));
  };

  CLI::App* derham = app.add_subcommand("derham", "de Rham intersection matrix S_mid (or S with --full)");
  add_common(derham, false);
  derham->add_flag("--full", cfg.full, "full matrix including index 0");

  CLI::App* betti = app.add_subcommand("betti", "Betti intersection matrix B_mid (or B with --full)");
  add_common(betti, false);
  betti->add_flag("--full", cfg.full, "rows 0..k', columns 0..k/2");

  CLI::App* moments = app.add_subcommand("moments", "one Bessel moment");
  add_common(moments, true);
  moments->add_option("--kind", cfg.kind, "ikm, ikm_reg_minus1, ikm_reg_half or ikm_cp")
      ->check(CLI::IsMember({"ikm", "ikm_reg_minus1", "ikm_reg_half", "ikm_cp"}));
  moments->add_option("--i", cfg.i, "power of I0");
  moments->add_option("--c", cfg.c, "power of t");
  moments->add_option("--j", cfg.j, "moment index j (power 2j-1)");

  CLI::App* periods = app.add_subcommand("periods", "period matrices");
  add_common(periods, true);

  CLI::App* verify = app.add_subcommand("verify", "run the identity checks");
  add_common(verify, true);
  verify->add_option("--checks", checks_text, "comma separated subset of the checks");

  CLI::App* br = app.add_subcommand("br", "normalized relation P D tP = B");
  add_common(br, true);

  CLI::App* deligne = app.add_subcommand("deligne", "period determinants c_n at the critical integers");
  add_common(deligne, true);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.ks = parse_k_range(k_text);
    for (int k : cfg.ks)
      if (k < 1) throw CLI::ValidationError("--k", "k must be positive");
    cfg.out = out_text == "json" ? OutFormat::kJson : OutFormat::kTable;
    if (!checks_text.empty()) {
      std::stringstream ss(checks_text);
      std::vector<std::string> known = verification_names();
      for (std::string item; std::getline(ss, item, ',');) {
        if (std::find(known.begin(), known.end(), item) == known.end())
          throw CLI::ValidationError("--checks", "unknown check " + item);
        cfg.checks.push_back(item);
      }
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (cfg.command == "derham") return cmd_derham(cfg, out);
    if (cfg.command == "betti") return cmd_betti(cfg, out);
    CacheScope cache(cfg, err);
    if (cfg.command == "moments") return cmd_moments(cfg, out);
    if (cfg.command == "periods") return cmd_periods(cfg, out);
    if (cfg.command == "verify") return cmd_verify(cfg, out);
    if (cfg.command == "br") return cmd_br(cfg, out);
    if (cfg.command == "deligne") return cmd_deligne(cfg, out);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace bessel_lab::cli
