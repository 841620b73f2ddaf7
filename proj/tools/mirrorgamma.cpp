// mirrorgamma: Gamma-sequences, periods and the Gamma/period identity for
// Calabi-Yau hypersurfaces in smooth toric Fano varieties.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "mirrorgamma/bigfloat.hpp"
#include "mirrorgamma/errors.hpp"
#include "mirrorgamma/fixture_io.hpp"
#include "mirrorgamma/gammaseq.hpp"
#include "mirrorgamma/periods.hpp"
#include "mirrorgamma/series_json.hpp"
#include "mirrorgamma/verify.hpp"

using namespace mirrorgamma;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

// Bad flag values discovered after parsing.
struct UsageError : Error {
  using Error::Error;
};

struct RunConfig {
  std::string input;
  int order = -1;
  std::string format = "json";
  int digits = 30;
  int standalone = 0;
  bool cy = false;
  bool regen = false;
  int pd = 0;
};

void emit(const RunConfig& cfg, const json& j, const std::string& table) {
  if (cfg.format == "json")
    std::cout << pretty_json(j) << "\n";
  else
    std::cout << table;
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s + " " : s + std::string(w - s.size(), ' '); }

json validation_json(const ValidationReport& rep) {
  json conds = json::array();
  for (const auto& c : rep.conditions)
    conds.push_back({{"id", c.id}, {"description", c.description}, {"passed", c.passed}, {"witnesses", c.witnesses}});
  return {{"ok", rep.ok()}, {"convention", rep.convention}, {"conditions", conds}};
}

std::string validation_table(const ValidationReport& rep) {
  std::ostringstream os;
  os << "validation: " << (rep.ok() ? "ok" : "FAILED") << "\n";
  std::size_t width = 0;
  for (const auto& c : rep.conditions) width = std::max(width, c.id.size() + c.description.size() + 4);
  for (const auto& c : rep.conditions) {
    os << "  " << pad("(" + c.id + ") " + c.description, width) << (c.passed ? "pass" : "FAIL") << "\n";
    for (const auto& w : c.witnesses) os << "      " << w << "\n";
  }
  return os.str();
}

int cmd_inspect(const RunConfig& cfg) {
  const Fixture fx = load_fixture(cfg.input);
  const ValidationReport rep = validate_fano(fx.polytope);
  json out;
  out["name"] = fx.name;
  out["validation"] = validation_json(rep);
  std::string table = (fx.name.empty() ? "" : fx.name + "\n") + validation_table(rep);
  if (!rep.ok()) {
    emit(cfg, out, table);
    return kExitFailed;
  }
  const FanData fan = fan_from_polytope(fx.polytope);
  out["rays"] = fan.rays;
  out["cones"] = fan.cones;
  std::vector<std::vector<long>> lattice;
  for (const auto& row : relation_lattice(fan)) {
    std::vector<long> v;
    for (const auto& x : row) v.push_back(x.get_si());
    lattice.push_back(v);
  }
  out["relation_lattice"] = lattice;
  const FanContext ctx = FanContext::build(fan, fx.mori_override, cfg.order);
  out["mori_basis"] = ctx.basis.vectors;
  const json goldens = compute_goldens(ctx);
  out["couplings"] = goldens["couplings"];
  out["chern_integrals"] = goldens["chern_integrals"];
  json betti = json::array();
  for (int k = 0; k <= fan.dimension; ++k) betti.push_back(ctx.ring->betti(k));
  out["betti"] = betti;

  std::ostringstream os;
  os << table << "rays (" << fan.num_rays() << "):\n";
  for (std::size_t i = 0; i < fan.rays.size(); ++i) os << "  D" << i + 1 << "  " << point_to_string(fan.rays[i]) << "\n";
  os << "maximal cones: " << fan.cones.size() << "\n";
  os << "relation lattice:\n";
  for (const auto& v : lattice) os << "  " << point_to_string(v) << "\n";
  os << "Mori basis:\n";
  for (const auto& v : ctx.basis.vectors) os << "  " << point_to_string(v) << "\n";
  os << "couplings (integral over V of J-monomials):\n";
  for (const auto& [k, v] : goldens["couplings"].items()) os << "  K[" << k << "] = " << v.get<std::string>() << "\n";
  os << "Chern integrals over V:\n";
  for (const auto& [k, v] : goldens["chern_integrals"].items()) os << "  " << pad(k, 16) << v.get<std::string>() << "\n";
  emit(cfg, out, os.str());
  return kExitOk;
}

int cmd_gamma(const RunConfig& cfg) {
  json out;
  std::ostringstream os;
  if (cfg.standalone > 0) {
    json polys = json::array();
    for (int k = 1; k <= cfg.standalone; ++k) {
      if (cfg.cy && k == 1) continue;
      const auto q = cfg.cy ? gamma_seq_calabi_yau(k) : mult_seq(inverse_gamma_series(k), k);
      json p = to_json(q);
      polys.push_back(p);
      os << "Q" << k << " = " << q.to_string() << "\n";
    }
    out["calabi_yau"] = cfg.cy;
    out["polynomials"] = polys;
    emit(cfg, out, os.str());
    return kExitOk;
  }
  const Fixture fx = load_fixture(cfg.input);
  const FanContext ctx = FanContext::build(fan_from_polytope(fx.polytope), fx.mori_override, cfg.order);
  const int n = ctx.cy_dimension();
  json polys = json::array();
  json integrals = json::object();
  for (int k = 1; k <= n; ++k) {
    const auto q = mult_seq(inverse_gamma_series(k), k);
    polys.push_back(to_json(q));
    os << "Q" << k << " = " << q.to_string() << "\n";
  }
  os << "integrals over V:\n";
  const CohClass one = CohClass::one(ctx.ring);
  for (int k = 2; k <= n; ++k) {
    const CohClass qk = apply_mult_seq(mult_seq(inverse_gamma_series(k), k), ctx.chern);
    // all J-monomials of degree n - k
    std::vector<std::vector<std::size_t>> monos{{}};
    for (int step = 0; step < n - k; ++step) {
      std::vector<std::vector<std::size_t>> next;
      for (const auto& m : monos)
        for (std::size_t j = m.empty() ? 1 : m.back(); j <= ctx.rank(); ++j) {
          auto e = m;
          e.push_back(j);
          next.push_back(e);
        }
      monos = std::move(next);
    }
    for (const auto& m : monos) {
      CohClass cls = qk;
      std::string key = "Q" + std::to_string(k);
      for (std::size_t j : m) {
        cls = cls * ctx.js[j - 1];
        key += "*J" + std::to_string(j);
      }
      const TransScalar v = integrate_over_V(cls);
      integrals[key] = {{"exact", v.to_string()}, {"numeric", trans_eval(v, cfg.digits)}};
      os << "  " << pad(key, 14) << pad(v.to_string(), 40) << trans_eval(v, cfg.digits) << "\n";
    }
  }
  out["name"] = fx.name;
  out["polynomials"] = polys;
  out["integrals"] = integrals;
  emit(cfg, out, os.str());
  return kExitOk;
}

int cmd_period(const RunConfig& cfg) {
  const Fixture fx = load_fixture(cfg.input);
  const FanData fan = fan_from_polytope(fx.polytope);
  MoriBasis mb;
  if (fx.mori_override) {
    check_mori_basis(fan, *fx.mori_override);
    mb = *fx.mori_override;
  } else {
    mb = mori_basis(fan);
  }
  const int order = cfg.order < 0 ? fan.dimension + 2 : cfg.order;
  const PeriodSeries ps = period_series(mb, order);
  const GammaCoeffSeries gs = gamma_coeff_series(mb, order);
  json out;
  out["name"] = fx.name;
  out["mori_basis"] = mb.vectors;
  out["period"] = series_to_json(ps.series);
  out["gamma_coefficients"] = series_to_json(gs.series);
  std::ostringstream os;
  os << "period coefficients (order " << order << "):\n";
  for (const auto& [e, c] : ps.series.terms()) os << "  x^" << point_to_string({e.begin(), e.end()}) << "  " << c.to_string() << "\n";
  os << "Gamma coefficient series:\n";
  for (const auto& [e, c] : gs.series.terms()) os << "  rho^" << point_to_string({e.begin(), e.end()}) << "  " << c.to_string() << "\n";
  json box = json::array();
  for (const auto& l : mb.vectors) {
    json b{{"relation", l}};
    try {
      const auto rep = gkz_box_check(ps, l, fan);
      b["annihilated"] = rep.annihilated;
      b["certified_order"] = rep.certified_order;
      b["checked_terms"] = rep.checked_terms;
      b["failures"] = rep.failures;
      os << "box operator " << point_to_string(l) << ": " << (rep.annihilated ? "annihilated" : "NOT annihilated")
         << " (" << rep.checked_terms << " coefficients, certified to order " << rep.certified_order << ")\n";
    } catch (const InsufficientOrder& e) {
      b["warning"] = e.what();
      os << "box operator " << point_to_string(l) << ": warning: " << e.what() << "\n";
    }
    box.push_back(b);
  }
  out["box_check"] = box;
  emit(cfg, out, os.str());
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
  if (cfg.pd > 0) {
    const auto rep = check_pd_example(cfg.pd, cfg.order < 0 ? 6 : cfg.order);
    emit(cfg, rep.to_json(), rep.to_table());
    return rep.all_exact() ? kExitOk : kExitFailed;
  }
  if (cfg.input.empty()) throw UsageError("verify needs an input file or --pd");
  const Fixture fx = load_fixture(cfg.input);
  const ValidationReport val = validate_fano(fx.polytope);
  if (!val.ok()) {
    emit(cfg, json{{"validation", validation_json(val)}}, validation_table(val));
    return kExitFailed;
  }
  const FanData fan = fan_from_polytope(fx.polytope);
  if (cfg.order >= 0 && cfg.order < fan.dimension)
    throw UsageError("--order must be at least the dimension " + std::to_string(fan.dimension));
  const FanContext ctx = FanContext::build(fan, fx.mori_override, cfg.order);
  if (cfg.regen) {
    if (std::getenv("CI") != nullptr) throw UsageError("--regen-goldens refuses to run under CI");
    write_goldens(cfg.input, fx, compute_goldens(ctx));
    std::cerr << "goldens written to " << cfg.input << "\n";
    return kExitOk;
  }
  VerificationReport rep = verify_fan(ctx, fx.expected ? &*fx.expected : nullptr);
  if (!fx.name.empty()) rep.subject = fx.name;
  emit(cfg, rep.to_json(), rep.to_table());
  return rep.all_exact() ? kExitOk : kExitFailed;
}

int cmd_grassmannian(const RunConfig& cfg) {
  const auto rep = grassmannian_ratio_check(cfg.order < 0 ? 10 : cfg.order);
  emit(cfg, rep.to_json(), rep.to_table());
  return rep.all_exact() ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gamma-sequences and periods of Calabi-Yau hypersurfaces in toric Fano varieties", "mirrorgamma"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&cfg](CLI::App* sub) {
    sub->add_option("--order", cfg.order, "truncation order")->check(CLI::Range(0, 64));
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "table"}));
    sub->add_option("--digits", cfg.digits, "digits for numeric values")->check(CLI::Range(10, 100));
  };

  auto* inspect = app.add_subcommand("inspect", "validate a polytope and print its fan, Mori basis and intersections");
  inspect->add_option("input", cfg.input, "polytope JSON file")->required();
  common(inspect);

  auto* gamma = app.add_subcommand("gamma", "Gamma-sequence polynomials, optionally integrated over V");
  gamma->add_option("input", cfg.input, "polytope JSON file");
  gamma->add_option("--standalone", cfg.standalone, "print Q_1..Q_D symbolically")->check(CLI::Range(1, 12));
  gamma->add_flag("--cy", cfg.cy, "set c_1 = 0");
  common(gamma);

  auto* period = app.add_subcommand("period", "period series, Gamma-coefficient series and box-operator check");
  period->add_option("input", cfg.input, "polytope JSON file")->required();
  common(period);

  auto* verify = app.add_subcommand("verify", "run every check for a fan; exit 0 iff all are exact");
  verify->add_option("input", cfg.input, "polytope JSON file");
  verify->add_option("--pd", cfg.pd, "check the hypersurface of degree D+1 in P^D instead")->check(CLI::Range(3, 12));
  verify->add_flag("--regen-goldens", cfg.regen, "rewrite the file's expected block (refused when CI is set)");
  common(verify);

  auto* grass = app.add_subcommand("grassmannian", "coefficient ratio of the two Grassmannian periods");
  common(grass);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gamma && cfg.standalone == 0 && cfg.input.empty()) throw UsageError("gamma needs an input file or --standalone");
    if (*grass && cfg.order > 25) throw UsageError("grassmannian supports --order up to 25");
    if (*verify && cfg.pd > 0 && cfg.order > 12) throw UsageError("--pd supports --order up to 12");
    if (*inspect) return cmd_inspect(cfg);
    if (*gamma) return cmd_gamma(cfg);
    if (*period) return cmd_period(cfg);
    if (*verify) return cmd_verify(cfg);
    return cmd_grassmannian(cfg);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailed;
  }
}
