#include "abelsup/cli.hpp"

#include <CLI11.hpp>
#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

#include "abelsup/arith.hpp"
#include "abelsup/certify.hpp"
#include "abelsup/field.hpp"
#include "abelsup/outgroup.hpp"
#include "json.hpp"

namespace abelsup {

namespace {

using json = nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CliConfig {
  std::string family;
  int n = 0;
  std::int64_t q = 0;
  std::string t = "0";
  std::string format = "human";
  int max_n = 0;
  std::vector<std::int64_t> q_list;
  std::vector<std::string> families;
  int jobs = 1;
  std::int64_t table_bound = kDefaultTableBound;
  std::string file;
};

OutModel checked_model(const CliConfig& cfg) {
  if (cfg.family.empty()) throw UsageError("--family is required");
  if (cfg.q <= 0) throw UsageError("-q is required");
  Family fam;
  try {
    fam = parse_family(cfg.family, cfg.n);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  const std::int64_t need = fam == Family::Psu ? cfg.q * cfg.q : cfg.q;
  if (need > cfg.table_bound)
    throw UsageError("field of order " + std::to_string(need) + " exceeds --field-table-bound");
  try {
    return out_model(fam, cfg.n, cfg.q);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

std::vector<OutElement> select_t(const OutModel& om, const std::string& sel) {
  const bool index = !sel.empty() && std::all_of(sel.begin(), sel.end(), [](unsigned char ch) {
    return std::isdigit(ch) != 0;
  });
  if (index) {
    auto Ts = enumerate_maximal_abelian(om);
    const auto i = std::stoull(sel);
    if (i >= Ts.size())
      throw UsageError("--t index " + sel + " out of range (" + std::to_string(Ts.size()) +
                       " maximal abelian subgroups)");
    return Ts[i].gens;
  }
  try {
    auto gens = parse_generators(om, sel);
    if (!is_abelian(om, gens)) throw UsageError("T = <" + sel + "> is not abelian");
    return gens;
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

std::string names(const OutModel& om, const std::vector<OutElement>& es) {
  std::string s;
  for (std::size_t i = 0; i < es.size(); ++i) s += (i ? ", " : "") + om.name(es[i]);
  return s.empty() ? "1" : s;
}

int cmd_enumerate(const CliConfig& cfg, std::ostream& out) {
  const OutModel om = checked_model(cfg);
  auto Ts = enumerate_maximal_abelian(om);
  if (cfg.format == "json") {
    json j;
    j["family"] = family_name(om.family);
    j["n"] = om.n;
    j["q"] = om.q;
    j["d"] = om.d;
    j["order"] = om.size();
    j["presentation"] = om.presentation();
    json list = json::array();
    for (std::size_t i = 0; i < Ts.size(); ++i) {
      json g = json::array();
      for (const auto& e : Ts[i].gens) g.push_back(om.name(e));
      list.push_back(json{{"index", i}, {"generators", g}, {"order", Ts[i].elements.size()}});
    }
    j["maximal_abelian"] = list;
    out << j.dump(2) << "\n";
    return 0;
  }
  out << family_name(om.family) << "(n=" << om.n << ", q=" << om.q << ")\n";
  out << "d = " << om.d << "\n|Out| = " << om.size() << "\n" << om.presentation() << "\n";
  out << Ts.size() << " maximal abelian subgroups\n";
  for (std::size_t i = 0; i < Ts.size(); ++i)
    out << "  [" << i << "] <" << names(om, Ts[i].gens) << ">  order " << Ts[i].elements.size()
        << "\n";
  return 0;
}

void print_human(const Certificate& c, std::ostream& out) {
  const OutModel om = out_model(parse_family(c.family, c.n), c.n, c.q);
  out << c.family << "(n=" << c.n << ", q=" << c.q << ")  T = <" << names(om, c.T) << ">\n";
  out << "route: " << c.route << " (" << cert_kind_name(c.kind) << (c.partial ? ", partial" : "")
      << ")\n";
  if (!(c.conjugator == om.identity())) out << "conjugator: " << om.name(c.conjugator) << "\n";
  if (c.base != c.T) out << "base: <" << names(om, c.base) << ">\n";
  for (const auto& [k, v] : c.params) out << "  " << k << " = " << v << "\n";
  if (!c.rho.empty()) out << "rho images: <" << names(om, c.rho) << ">\n";
  for (const auto& e : c.checks) out << "  [" << (e.ok ? "ok" : "FAILED") << "] " << e.name << "\n";
  out << (c.pass ? "PASS" : "FAIL");
  if (!c.pass) out << ": " << c.reason;
  out << "\ndigest " << c.digest << "\n";
}

int cmd_certify(const CliConfig& cfg, std::ostream& out) {
  const OutModel om = checked_model(cfg);
  auto T = select_t(om, cfg.t);
  Certificate c;
  try {
    c = certify_supplement(cfg.family, cfg.n, cfg.q, T);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (cfg.format == "json")
    out << certificate_to_json(c, 2) << "\n";
  else
    print_human(c, out);
  return c.pass ? 0 : 1;
}

int cmd_replay(const CliConfig& cfg, std::ostream& out) {
  std::ifstream in(cfg.file);
  if (!in) throw UsageError("cannot read " + cfg.file);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
  // Certificates are sealed over their compact form; re-dump pretty-printed files.
  try {
    text = json::parse(text).dump();
  } catch (const json::exception&) {
  }
  auto r = replay_certificate(text);
  if (cfg.format == "json") {
    out << json{{"verdict", r.pass ? "PASS" : "FAIL"}, {"reason", r.reason}}.dump(2) << "\n";
  } else {
    out << (r.pass ? "PASS" : "FAIL");
    if (!r.pass) out << ": " << r.reason;
    out << "\n";
  }
  return r.pass ? 0 : 1;
}

SweepReport merge(std::vector<SweepReport> parts) {
  SweepReport r;
  for (auto& p : parts) {
    r.cells += p.cells;
    r.pass += p.pass;
    r.fail += p.fail;
    r.error += p.error;
    r.partial += p.partial;
    for (auto& e : p.entries) r.entries.push_back(std::move(e));
  }
  return r;
}

std::vector<int> n_range(int lo, int hi) {
  std::vector<int> v;
  for (int n = lo; n <= hi; ++n) v.push_back(n);
  return v;
}

int cmd_sweep(const CliConfig& cfg, std::ostream& out) {
  if (cfg.jobs < 1 || cfg.jobs > 256) throw UsageError("--jobs must be in [1, 256]");
  std::vector<SweepSpec> specs;
  const bool preset = cfg.families.empty() && cfg.q_list.empty() && cfg.max_n == 0;
  if (preset) {
    // Desk-scale default: the linear, unitary and orthogonal ranges.
    specs.push_back({{"psl"}, n_range(2, 6), {4, 5, 7, 8, 9, 11, 13, 16, 25, 27}, cfg.jobs, 1024});
    specs.push_back({{"psu"}, n_range(3, 5), {3, 5, 7, 9}, cfg.jobs, 1024});
    specs.push_back({{"dn"}, n_range(3, 6), {9, 25}, cfg.jobs, 1024});
  } else {
    if (cfg.max_n > 64) throw UsageError("--max-n must be at most 64");
    for (auto q : cfg.q_list) {
      std::int64_t p = 0, m = 0;
      if (!prime_power(q, p, m)) throw UsageError(std::to_string(q) + " is not a prime power");
      if (q * q > cfg.table_bound) throw UsageError("q = " + std::to_string(q) + " exceeds --field-table-bound");
    }
    for (const auto& f : cfg.families) {
      bool ok = false;
      for (int n : {4, 5}) {
        try {
          parse_family(f, n);
          ok = true;
        } catch (const std::exception&) {
        }
      }
      if (!ok) throw UsageError("unsupported family: " + f);
    }
    std::vector<int> ns = cfg.n > 0 ? std::vector<int>{cfg.n} : n_range(2, cfg.max_n);
    specs.push_back({cfg.families, ns, cfg.q_list, cfg.jobs, 1024});
  }
  std::vector<SweepReport> parts;
  for (const auto& s : specs) parts.push_back(sweep(s));
  const SweepReport r = merge(std::move(parts));
  if (cfg.format == "json") {
    out << sweep_report_json(r, 2) << "\n";
  } else {
    for (const auto& e : r.entries) {
      out << e.verdict << "  " << e.family << " n=" << e.n << " q=" << e.q;
      if (e.t_index >= 0) out << " T[" << e.t_index << "]=<" << e.t_names << "> " << e.route;
      if (e.partial) out << " (partial)";
      if (!e.reason.empty()) out << "  " << e.reason;
      out << "\n";
    }
    out << "cells " << r.cells << ", certificates " << r.entries.size() << ": " << r.pass
        << " pass, " << r.fail << " fail, " << r.error << " error, " << r.partial << " partial\n";
  }
  return (r.fail || r.error) ? 1 : 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"abelsup: abelian supplements for groups of Lie type"};
  app.require_subcommand(1);
  CliConfig cfg;

  auto add_cell = [&](CLI::App* sub) {
    sub->add_option("--family", cfg.family, "psl, psu, bn, cn, e6, e7, 2e6, dn, d4, 2dn");
    sub->add_option("-n", cfg.n, "rank parameter");
    sub->add_option("-q", cfg.q, "field order");
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "human or json")
        ->check(CLI::IsMember({"human", "json"}));
    sub->add_option("--field-table-bound", cfg.table_bound, "largest field to tabulate")
        ->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 24));
  };

  auto* en = app.add_subcommand("enumerate", "list Out and its maximal abelian subgroups");
  add_cell(en);
  add_common(en);
  auto* ce = app.add_subcommand("certify", "construct and verify a T-abelian supplement");
  add_cell(ce);
  add_common(ce);
  ce->add_option("--t", cfg.t, "index into the enumeration, or generators like \"d^2,f*g\"");
  auto* sw = app.add_subcommand("sweep", "certify every maximal abelian T over a range");
  add_common(sw);
  sw->add_option("--family", cfg.families, "families to sweep")->delimiter(',');
  sw->add_option("-n", cfg.n, "a single rank");
  sw->add_option("--max-n", cfg.max_n, "largest rank");
  sw->add_option("--q-list", cfg.q_list, "comma-separated field orders")->delimiter(',');
  sw->add_option("--jobs", cfg.jobs, "worker threads");
  auto* rp = app.add_subcommand("replay", "re-verify a serialized certificate");
  add_common(rp);
  rp->add_option("file", cfg.file, "certificate JSON")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*en) return cmd_enumerate(cfg, out);
    if (*ce) return cmd_certify(cfg, out);
    if (*sw) return cmd_sweep(cfg, out);
    if (*rp) return cmd_replay(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace abelsup
