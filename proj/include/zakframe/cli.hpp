#pragma once

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zakframe/instances.hpp"

namespace zakframe::cli {

using io::ordered_json;

struct Options {
  std::string spec;
  std::string out;
  bool oracle = false;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::optional<double> supp_tol;
  std::string relation = "dual";
  std::size_t adversarial = 0;
};

/// Text plus the exit code it implies: 0 holds / success, 1 fails.
struct Output {
  std::string text;
  int code = 0;
};

struct Loaded {
  io::InstanceSpec spec;
  io::Instance in;
};

inline Loaded load(const Options& o) {
  if (o.spec.empty()) throw Error(ErrorKind::invalid_argument, "--spec FILE is required");
  const std::filesystem::path path(o.spec);
  Loaded l;
  l.spec = io::parse_instance_text(io::read_file(path), path.string());
  if (o.tol) {
    l.spec.tolerances.dual = *o.tol;
    l.spec.tolerances.oracle = *o.tol;
  }
  if (o.supp_tol) l.spec.tolerances.support = *o.supp_tol;
  l.in = io::resolve(l.spec, path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
  return l;
}

inline void require_family(const GeneratorFamily& f, const char* what) {
  if (f.empty()) throw Error(ErrorKind::empty_family, std::string("spec has no ") + what);
}

inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline Output verdict(const ordered_json& j, bool holds) { return {io::dump(j), holds ? 0 : 1}; }

inline ordered_json oracle_json(const oracle::Result& r, bool fiber_holds) {
  ordered_json j;
  j["verdict"] = r.holds ? "holds" : "fails";
  j["residual"] = r.residual;
  j["agree"] = r.holds == fiber_holds;
  return j;
}

inline Output cmd_analyze(const Options& o) {
  const auto l = load(o);
  require_family(l.in.family, "family");
  const auto dom = make_zak_domain(l.in.sub);
  const ZakFamily zf = zak_family(l.in.family, dom);
  ordered_json j;
  j["command"] = "analyze";
  j["group_order"] = l.in.group->order();
  j["subgroup_order"] = l.in.sub.size();
  j["fibers"] = dom->rows();
  j["cosets"] = dom->cols();
  ordered_json gens = ordered_json::array();
  for (std::size_t t = 0; t < zf.size(); ++t) {
    const BracketFunction b = bracket(zf[t], zf[t]);
    const SupportSet s = support_set(b, l.in.tol.support);
    ordered_json g;
    g["index"] = t;
    g["norm"] = l.in.family[t].values.norm();
    std::vector<double> self;
    for (Eigen::Index a = 0; a < b.values.size(); ++a) self.push_back(b.values(a).real());
    g["self_bracket"] = self;
    std::vector<int> mask;
    for (bool m : s.mask) mask.push_back(m ? 1 : 0);
    g["support"] = mask;
    g["support_count"] = s.count();
    gens.push_back(g);
  }
  j["generators"] = gens;
  j["frame_bounds"] = io::to_json(frame_bounds(zf, l.in.tol));
  return {io::dump(j), 0};
}

inline Output cmd_check(const Options& o, bool dual) {
  const auto l = load(o);
  require_family(l.in.family, "family");
  require_family(l.in.dual, "dual family");
  const auto dom = make_zak_domain(l.in.sub);
  const ZakFamily za = zak_family(l.in.family, dom), zb = zak_family(l.in.dual, dom);
  const VerificationReport r =
      dual ? verify_subspace_dual(za, zb, l.in.tol) : verify_subspace_orthogonal(za, zb, l.in.tol);
  ordered_json j = io::to_json(r);
  if (o.oracle) {
    const oracle::Result orc = dual ? oracle::check_reproducing(l.in.family, l.in.dual, l.in.sub, l.in.tol)
                                    : oracle::check_orthogonal_oracle(l.in.family, l.in.dual, l.in.sub, l.in.tol);
    j["oracle"] = oracle_json(orc, r.holds);
  }
  return verdict(j, r.holds);
}

inline void write_signal_output(const Loaded& l, const Signal& f) {
  if (l.spec.output) io::write_file(*l.spec.output, io::dump(io::signal_json(f)));
}

inline Output cmd_make_dual(const Options& o) {
  const auto l = load(o);
  require_family(l.in.family, "family");
  const Signal& phi = l.in.family.front();
  const Signal& psi = l.in.dual.empty() ? phi : l.in.dual.front();
  const auto dom = make_zak_domain(l.in.sub);
  const DualConstruction d = construct_dual(phi, psi, dom, l.in.tol);
  const VerificationReport r = verify_dual_single(zak_forward(phi, dom), zak_forward(d.dual, dom), l.in.tol);
  ordered_json j = io::to_json(r);
  j["unique"] = d.unique;
  j["signal"] = io::signal_json(d.dual);
  write_signal_output(l, d.dual);
  return verdict(j, r.holds);
}

inline Output cmd_make_biortho(const Options& o) {
  const auto l = load(o);
  require_family(l.in.family, "family");
  const Signal& phi = l.in.family.front();
  const auto dom = make_zak_domain(l.in.sub);
  const Signal psi = construct_biorthogonal(phi, dom, l.in.tol);
  const VerificationReport r = verify_biorthogonal(phi, psi, dom, l.in.tol);
  ordered_json j = io::to_json(r);
  j["signal"] = io::signal_json(psi);
  write_signal_output(l, psi);
  return verdict(j, r.holds);
}

inline Output cmd_gabor(const Options& o) {
  const auto l = load(o);
  require_family(l.in.family, "family");
  if (!l.in.lambda) throw Error(ErrorKind::invalid_argument, "gabor needs \"lambda\" in the spec");
  const bool ortho = l.spec.check && *l.spec.check == "orthogonal";
  if (ortho) require_family(l.in.dual, "dual family");
  const GeneratorFamily b = l.in.dual.empty() ? gabor_dual_family(l.in.family, *l.in.lambda, l.in.tol) : l.in.dual;
  const VerificationReport r = ortho ? verify_gabor_orthogonal(l.in.family, b, *l.in.lambda, l.in.tol)
                                     : verify_gabor_dual(l.in.family, b, *l.in.lambda, l.in.tol);
  ordered_json j = io::to_json(r);
  if (l.in.dual.empty()) {
    ordered_json fam = ordered_json::array();
    for (const auto& f : b) fam.push_back(io::signal_json(f));
    j["dual_family"] = fam;
  }
  if (o.oracle) {
    const GaborSystem ga = gabor_expand(l.in.family, *l.in.lambda), gb = gabor_expand(b, *l.in.lambda);
    const oracle::Result orc = ortho ? oracle::check_orthogonal_oracle(ga.expanded, gb.expanded, *l.in.lambda, l.in.tol)
                                     : oracle::check_reproducing(ga.expanded, gb.expanded, *l.in.lambda, l.in.tol);
    j["oracle"] = oracle_json(orc, r.holds);
  }
  return verdict(j, r.holds);
}

inline Output cmd_super(const Options& o) {
  const auto l = load(o);
  if (l.in.components.empty() || l.in.dual_components.empty())
    throw Error(ErrorKind::invalid_argument, "super needs \"components\" and \"dual_components\"");
  if (l.spec.n && static_cast<std::size_t>(*l.spec.n) != l.in.components.size())
    throw Error(ErrorKind::structure_mismatch, "N does not match the number of components");
  const SuperFamily f = super_pack(l.in.components, l.in.sub);
  const SuperFamily g = super_pack(l.in.dual_components, l.in.sub);
  const VerificationReport r = verify_super_dual(f, g, l.in.sub, l.in.tol);
  return verdict(io::to_json(r), r.holds);
}

inline Output cmd_oracle_compare(const Options& o) {
  const auto l = load(o);
  require_family(l.in.family, "family");
  const auto dom = make_zak_domain(l.in.sub);
  const ZakFamily za = zak_family(l.in.family, dom);
  ordered_json j;
  j["command"] = "oracle-compare";
  bool agree = true;
  auto side = [](bool holds, double residual) {
    ordered_json s;
    s["verdict"] = holds ? "holds" : "fails";
    s["residual"] = residual;
    return s;
  };
  if (!l.in.dual.empty()) {
    const ZakFamily zb = zak_family(l.in.dual, dom);
    const auto d = verify_subspace_dual(za, zb, l.in.tol);
    const auto od = oracle::check_reproducing(l.in.family, l.in.dual, l.in.sub, l.in.tol);
    const auto r = verify_subspace_orthogonal(za, zb, l.in.tol);
    const auto orr = oracle::check_orthogonal_oracle(l.in.family, l.in.dual, l.in.sub, l.in.tol);
    ordered_json dj, oj;
    dj["fiber"] = side(d.holds, d.max_residual);
    dj["oracle"] = side(od.holds, od.residual);
    dj["agree"] = d.holds == od.holds;
    oj["fiber"] = side(r.holds, r.max_residual);
    oj["oracle"] = side(orr.holds, orr.residual);
    oj["agree"] = r.holds == orr.holds;
    agree = agree && d.holds == od.holds && r.holds == orr.holds;
    j["dual"] = dj;
    j["orthogonal"] = oj;
  }
  const FrameBounds fb = frame_bounds(za, l.in.tol);
  const oracle::Bounds ob = oracle::frame_bounds_oracle(l.in.family, l.in.sub, l.in.tol.rank);
  ordered_json bj, fj, oj;
  fj["lower"] = fb.lower_bound;
  fj["upper"] = fb.bessel_bound;
  Eigen::Index rank = 0;
  for (auto r : fb.ranks) rank += r;
  fj["rank"] = rank;
  oj["lower"] = ob.lower;
  oj["upper"] = ob.upper;
  oj["rank"] = ob.rank;
  bj["fiber"] = fj;
  bj["oracle"] = oj;
  const double diff = std::max(std::abs(fb.lower_bound - ob.lower), std::abs(fb.bessel_bound - ob.upper));
  bj["max_difference"] = diff;
  bj["agree"] = diff <= l.in.tol.oracle * (1.0 + ob.upper) && rank == ob.rank;
  agree = agree && bj["agree"].get<bool>();
  j["frame_bounds"] = bj;
  j["agree"] = agree;
  return verdict(j, agree);
}

inline Output cmd_random(const Options& o) {
  using instances::Relation;
  instances::RandomInstance r;
  if (o.relation == "adversarial") {
    r = instances::adversarial_instance(o.seed, o.adversarial);
  } else {
    const Relation rel = o.relation == "generic"    ? Relation::generic
                         : o.relation == "orthogonal" ? Relation::orthogonal
                                                      : Relation::dual;
    r = instances::random_instance(o.seed, rel);
  }
  return {io::dump(io::to_json(r.spec(o.seed))), 0};
}

inline std::pair<Signal, Signal> dump_pair(const Loaded& l) {
  require_family(l.in.family, "family");
  return {l.in.family.front(), l.in.dual.empty() ? l.in.family.front() : l.in.dual.front()};
}

inline Output cmd_bracket_dump(const Options& o) {
  const auto l = load(o);
  const auto [phi, psi] = dump_pair(l);
  const BracketFunction b = bracket(psi, phi, make_zak_domain(l.in.sub));
  std::string text = "alpha,re,im\n";
  for (Eigen::Index a = 0; a < b.values.size(); ++a)
    text += std::to_string(a) + "," + num(b.values(a).real()) + "," + num(b.values(a).imag()) + "\n";
  return {text, 0};
}

inline Output cmd_zak_dump(const Options& o) {
  const auto l = load(o);
  require_family(l.in.family, "family");
  const ZakArray z = zak_forward(l.in.family.front(), make_zak_domain(l.in.sub));
  std::string text = "alpha,coset,re,im\n";
  for (Eigen::Index a = 0; a < z.values.rows(); ++a)
    for (Eigen::Index c = 0; c < z.values.cols(); ++c)
      text += std::to_string(a) + "," + std::to_string(c) + "," + num(z.values(a, c).real()) + "," +
              num(z.values(a, c).imag()) + "\n";
  return {text, 0};
}

/// Entry point. `args` excludes the program name. Returns 0 when the checked
/// property holds (or the command succeeded), 1 when it fails, 2 on errors.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zak-transform frames, duals and orthogonality on finite groups", "zakframe"};
  app.require_subcommand(1);
  Options o;
  auto common = [&o](CLI::App* sub, bool needs_spec = true) {
    auto* s = sub->add_option("--spec", o.spec, "instance spec (JSON)");
    if (needs_spec) s->required();
    sub->add_option("--out", o.out, "write the report here instead of stdout");
    sub->add_flag("--oracle", o.oracle, "cross-check against the signal-domain oracle");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--tol", o.tol, "verdict tolerance (dual and oracle)");
    sub->add_option("--supp-tol", o.supp_tol, "support-set tolerance");
  };
  struct Cmd {
    const char* name;
    const char* help;
    Output (*fn)(const Options&);
  };
  static const Cmd cmds[] = {
      {"analyze", "brackets, supports and frame bounds of one family", cmd_analyze},
      {"dual-check", "subspace-dual verdict for (family, dual)", [](const Options& x) { return cmd_check(x, true); }},
      {"ortho-check", "subspace-orthogonal verdict for (family, dual)",
       [](const Options& x) { return cmd_check(x, false); }},
      {"make-dual", "construct a dual generator", cmd_make_dual},
      {"make-biortho", "construct the biorthogonal generator", cmd_make_biortho},
      {"gabor", "Gabor dual or orthogonality check", cmd_gabor},
      {"super", "super dual-frame check", cmd_super},
      {"oracle-compare", "fiber and oracle pipelines side by side", cmd_oracle_compare},
      {"bracket-dump", "bracket as CSV (alpha, re, im)", cmd_bracket_dump},
  };
  std::vector<std::pair<CLI::App*, Output (*)(const Options&)>> subs;
  for (const auto& c : cmds) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    common(sub);
    subs.emplace_back(sub, c.fn);
  }
  CLI::App* random = app.add_subcommand("random", "emit a seeded random instance spec");
  common(random, false);
  random->add_option("--relation", o.relation, "generic | dual | orthogonal | adversarial")
      ->check(CLI::IsMember({"generic", "dual", "orthogonal", "adversarial"}));
  random->add_option("--recipe", o.adversarial, "adversarial recipe index");
  subs.emplace_back(random, cmd_random);
  CLI::App* zak = app.add_subcommand("zak", "Zak transform tools");
  zak->require_subcommand(1);
  CLI::App* zak_dump = zak->add_subcommand("dump", "Zak transform of the first generator as CSV");
  common(zak_dump);
  subs.emplace_back(zak_dump, cmd_zak_dump);

  std::vector<const char*> argv{"zakframe"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    for (const auto& [sub, fn] : subs)
      if (sub->parsed()) {
        if (o.tol && !(*o.tol > 0)) throw Error(ErrorKind::invalid_argument, "--tol must be positive");
        if (o.supp_tol && !(*o.supp_tol > 0 && *o.supp_tol < 1))
          throw Error(ErrorKind::invalid_argument, "--supp-tol must lie in (0, 1)");
        const Output result = fn(o);
        if (o.out.empty()) {
          out << result.text;
        } else {
          io::write_file(o.out, result.text);
        }
        return result.code;
      }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace zakframe::cli
