// dacscanon: command-line front end.
//
//   dacscanon <command> <input> [--out path] [--stage-dump]
//   dacscanon verify --left a.json --right b.json --cert t.json
//   dacscanon roundtrip [--seed N] [--cases N]
//
// Exit codes: 0 ok, 1 verification failure or internal error, 2 input error.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dacscanon/harness.hpp"
#include "dacscanon/io.hpp"

using namespace dacs;

namespace {

struct InputError : Error {
  using Error::Error;
};

struct Options {
  std::string command, input, out, left, right, cert;
  std::uint64_t seed = 7;
  std::size_t cases = 50;
  bool stage_dump = false;
};

json subspace_json(const Subspace& S) {
  return json{{"dim", S.dim()}, {"basis", matrix_to_json(S.basis())}};
}

json dims_list(const std::vector<Subspace>& seq) {
  json a = json::array();
  for (const Subspace& S : seq) a.push_back(S.dim());
  return a;
}

// Report for a system result: the system's own fields plus the extras.
json system_report(const json& system) {
  json r = system;
  r["indices"] = json::object();
  r["certificates"] = json::object();
  r["verified"] = true;
  return r;
}

Odecs2 as_odecs(const SystemVariant& v) {
  if (const auto* o = std::get_if<Odecs2>(&v)) return *o;
  return explicitate(std::get<Dacs>(v)).first;
}

Dacs as_dacs(const SystemVariant& v, const std::string& cmd) {
  if (const auto* d = std::get_if<Dacs>(&v)) return *d;
  throw InputError(cmd + " needs a DACS input");
}

json stage_json(const Odecs2& sys, const EmTransform& t, bool ok) {
  return json{{"system", system_to_json(sys)}, {"transform", transform_to_json(t)}, {"verified", ok}};
}

json cmd_explicitate(const Options& o) {
  const Dacs d = as_dacs(parse_system(o.input), "explicitate");
  const auto [sys, rec] = explicitate(d);
  json r = system_report(system_to_json(sys));
  r["indices"] = {{"rank_E", rec.q}, {"n", sys.n()}, {"m", sys.m()}, {"s", sys.s()}, {"p", sys.p()}};
  // ker E = Im Bv and the algebraic rows reproduce C, Du.
  r["verified"] = image(sys.Bv) == kernel_basis(d.E) && sys.C.rows() == d.l() - rec.q;
  return r;
}

json cmd_wong(const Options& o) {
  const Dacs d = as_dacs(parse_system(o.input), "wong");
  const WongResult w = wong_sequences(d);
  json r = system_report(system_to_json(d));
  r["indices"] = {{"V", dims_list(w.V_seq)}, {"W", dims_list(w.W_seq)}, {"W_hat", dims_list(w.What_seq)}};
  r["subspaces"] = {{"V_star", subspace_json(w.V_star)}, {"W_star", subspace_json(w.W_star)}};
  // Cross-check against the sequences of the explicitation.
  const InvariantResult inv = invariant_subspaces(explicitate(d).first);
  r["verified"] = inv.V_seq == w.V_seq && inv.W_seq == w.W_seq && inv.What_seq == w.What_seq;
  return r;
}

json cmd_invariants(const Options& o) {
  const Odecs2 sys = as_odecs(parse_system(o.input));
  const InvariantResult inv = invariant_subspaces(sys);
  json r = system_report(system_to_json(sys));
  r["indices"] = {{"n1", inv.n1}, {"n2", inv.n2}, {"n3", inv.n3}, {"n4", inv.n4}, {"m1", inv.m1},
                  {"m3", inv.m3}, {"p3", inv.p3}, {"p4", inv.p4}};
  r["subspaces"] = {{"V_star", subspace_json(inv.V_star)}, {"U_star", subspace_json(inv.U_star)},
                    {"W_star", subspace_json(inv.W_star)}, {"Y_star", subspace_json(inv.Y_star)}};
  // Dual system: the roles of V*, W* and U*, Y* swap under orthogonal complement.
  const InvariantResult dual = invariant_subspaces(dualize(merged(sys)));
  r["verified"] = inv.V_star == orth_complement(dual.W_star) && inv.W_star == orth_complement(dual.V_star) &&
                  inv.U_star == orth_complement(dual.Y_star) && inv.Y_star == orth_complement(dual.U_star);
  return r;
}

// Plain Morse forms treat u and v as one input kind.
json cmd_morse(const Options& o, bool normal) {
  const Odecs2 sys = as_odecs(parse_system(o.input));
  const StateSpace ss = merged(sys);
  const MtfSystem t = mtf(ss);
  const MtfSystem res = normal ? mnf(t) : t;
  const StateSpace out = merged(res.system);
  const MorseTransform mt = to_w(res.transform);
  const StateSpace blk = block_ordered(res.system, res.dims);
  const bool pattern = normal ? is_mnf_pattern(blk, res.dims) : is_mtf_pattern(blk, res.dims);
  json r = system_report(system_to_json(res.system));
  r["indices"] = dims_to_json(res.dims);
  r["certificates"] = {{"morse", transform_to_json(mt)}};
  r["verified"] = verify_morse(ss, out, mt) && pattern;
  return r;
}

json cmd_em(const Options& o, int level) {
  const Odecs2 sys = as_odecs(parse_system(o.input));
  const MtfSystem t = emtf(sys);
  json stages = json::object();
  if (o.stage_dump) stages["emtf"] = stage_json(t.system, t.transform, verify_em(sys, t.system, t.transform));
  if (level == 0) {
    json r = system_report(system_to_json(t.system));
    r["indices"] = dims_to_json(t.dims);
    r["certificates"] = {{"em", transform_to_json(t.transform)}};
    r["verified"] =
        verify_em(sys, t.system, t.transform) && is_mtf_pattern(block_ordered(t.system, t.dims), t.dims);
    if (o.stage_dump) r["stages"] = stages;
    return r;
  }
  const MnfSystem nf = emnf(t);
  if (o.stage_dump) stages["emnf"] = stage_json(nf.system, nf.transform, verify_em(sys, nf.system, nf.transform));
  if (level == 1) {
    json r = system_report(system_to_json(nf.system));
    r["indices"] = dims_to_json(nf.dims);
    r["certificates"] = {{"em", transform_to_json(nf.transform)}};
    r["verified"] =
        verify_em(sys, nf.system, nf.transform) && is_mnf_pattern(block_ordered(nf.system, nf.dims), nf.dims);
    if (o.stage_dump) r["stages"] = stages;
    return r;
  }
  const EmcfResult ec = emcf(nf);
  json r = system_report(system_to_json(ec.system));
  r["indices"] = indices_to_json(ec.indices);
  r["certificates"] = {{"em", transform_to_json(ec.transform)}};
  r["verified"] = verify_em(sys, ec.system, ec.transform) && build_emcf(ec.indices) == ec.system;
  if (o.stage_dump) {
    stages["emcf"] = stage_json(ec.system, ec.stage, verify_em(nf.system, ec.system, ec.stage));
    r["stages"] = stages;
  }
  return r;
}

json cmd_fbcf(const Options& o) {
  const Dacs d = as_dacs(parse_system(o.input), "fbcf");
  const FbcfResult res = fbcf(d);
  const auto [lam, rec] = explicitate(d);
  const auto [lam_c, rec_c] = explicitate(res.canonical);
  json r = system_report(system_to_json(res.canonical));
  r["indices"] = indices_to_json(res.indices);
  r["emcf_indices"] = indices_to_json(res.emcf_indices);
  r["certificates"] = {{"exfb", transform_to_json(res.certificate)}, {"em", transform_to_json(res.em_transform)}};
  const bool ok_exfb = verify_exfb(d, res.canonical, res.certificate);
  const bool ok_em = verify_em(lam, lam_c, res.em_transform);
  r["verified"] = ok_exfb && ok_em;
  if (o.stage_dump) {
    json stages = json::object();
    stages["explicitation"] = {{"system", system_to_json(lam)}, {"rank_E", rec.q}};
    const MtfSystem t = emtf(lam);
    stages["emtf"] = stage_json(t.system, t.transform, verify_em(lam, t.system, t.transform));
    stages["emtf"]["dims"] = dims_to_json(t.dims);
    const MnfSystem nf = emnf(t);
    stages["emnf"] = stage_json(nf.system, nf.transform, verify_em(lam, nf.system, nf.transform));
    const EmcfResult ec = emcf(nf);
    stages["emcf"] = stage_json(ec.system, ec.transform, verify_em(lam, ec.system, ec.transform));
    stages["emcf"]["indices"] = indices_to_json(ec.indices);
    stages["canonical_explicitation"] = stage_json(lam_c, res.em_transform, ok_em);
    r["stages"] = stages;
  }
  return r;
}

json cmd_verify(const Options& o) {
  const SystemVariant a = parse_system(o.left), b = parse_system(o.right);
  const auto t = transform_from_json(load_json(o.cert));
  bool ok = false;
  if (std::holds_alternative<Dacs>(a) && std::holds_alternative<Dacs>(b)) {
    const auto* c = std::get_if<ExFbTransform>(&t);
    if (!c) throw InputError("DACS pair needs an exfb certificate");
    const Dacs& da = std::get<Dacs>(a);
    const Dacs& db = std::get<Dacs>(b);
    if (c->Q.rows() != da.l() || c->P.rows() != da.n() || c->G.rows() != da.m() || c->F.cols() != da.n())
      throw DimensionError("certificate does not fit the systems");
    ok = verify_exfb(da, db, *c);
  } else if (std::holds_alternative<Odecs2>(a) && std::holds_alternative<Odecs2>(b)) {
    const auto* c = std::get_if<EmTransform>(&t);
    if (!c) throw InputError("ODECS pair needs an em certificate");
    const Odecs2& oa = std::get<Odecs2>(a);
    if (c->Tx.rows() != oa.n() || c->Tu.rows() != oa.m() || c->Tv.rows() != oa.s() || c->Ty.rows() != oa.p())
      throw DimensionError("certificate does not fit the systems");
    ok = verify_em(oa, std::get<Odecs2>(b), *c);
  } else {
    throw InputError("left and right must be of the same kind");
  }
  return json{{"indices", json::object()}, {"certificates", json::object()}, {"verified", ok}};
}

json cmd_roundtrip(const Options& o) {
  json cases = json::array();
  std::size_t matched = 0;
  bool all = true;
  for (std::size_t i = 0; i < o.cases; ++i) {
    const std::uint64_t seed = o.seed + i;
    const auto t0 = std::chrono::steady_clock::now();
    const RoundTripCase rc = roundtrip_case(seed);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    matched += rc.indices_match;
    all = all && rc.ok();
    json c{{"seed", seed},
           {"match", rc.indices_match},
           {"certificates_verified", rc.scramble_verified && rc.certificate_verified && rc.em_verified},
           {"ms", ms}};
    if (!rc.error.empty()) c["error"] = rc.error;
    if (!rc.indices_match) {
      c["expected"] = indices_to_json(rc.expected);
      c["recovered"] = indices_to_json(rc.recovered);
    }
    cases.push_back(std::move(c));
  }
  return json{{"indices", {{"cases", o.cases}, {"matched", matched}}},
              {"certificates", json::object()},
              {"cases", cases},
              {"verified", all}};
}

json run(const Options& o) {
  const std::string& c = o.command;
  if (c == "explicitate") return cmd_explicitate(o);
  if (c == "wong") return cmd_wong(o);
  if (c == "invariants") return cmd_invariants(o);
  if (c == "mtf") return cmd_morse(o, false);
  if (c == "mnf") return cmd_morse(o, true);
  if (c == "emtf") return cmd_em(o, 0);
  if (c == "emnf") return cmd_em(o, 1);
  if (c == "emcf") return cmd_em(o, 2);
  if (c == "fbcf") return cmd_fbcf(o);
  if (c == "verify") return cmd_verify(o);
  return cmd_roundtrip(o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Feedback canonical form of linear DAE control systems, in exact arithmetic"};
  app.require_subcommand(1);
  Options opt;

  const std::vector<std::pair<std::string, std::string>> file_cmds = {
      {"explicitate", "explicit system with driving variables"},
      {"wong", "augmented Wong sequences of a DACS"},
      {"invariants", "invariant subspaces of an explicit system"},
      {"mtf", "Morse triangular form (single input kind)"},
      {"mnf", "Morse normal form (single input kind)"},
      {"emtf", "extended Morse triangular form"},
      {"emnf", "extended Morse normal form"},
      {"emcf", "extended Morse canonical form"},
      {"fbcf", "feedback canonical form of a DACS"}};
  for (const auto& [name, desc] : file_cmds) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("input", opt.input, "system file (JSON)")->required();
    sub->add_option("--out", opt.out, "write the report here instead of stdout");
    sub->add_flag("--stage-dump", opt.stage_dump, "include intermediate stages");
  }
  CLI::App* ver = app.add_subcommand("verify", "check a certificate between two systems");
  ver->add_option("--left", opt.left)->required();
  ver->add_option("--right", opt.right)->required();
  ver->add_option("--cert", opt.cert)->required();
  ver->add_option("--out", opt.out);
  CLI::App* rt = app.add_subcommand("roundtrip", "random canonical forms, scrambled and recovered");
  rt->add_option("--seed", opt.seed);
  rt->add_option("--cases", opt.cases);
  rt->add_option("--out", opt.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  opt.command = app.get_subcommands().front()->get_name();

  try {
    const json report = run(opt);
    const std::string text = report.dump(2) + "\n";
    if (opt.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(opt.out);
      if (!out) throw InputError("cannot write '" + opt.out + "'");
      out << text;
    }
    return report.value("verified", false) ? 0 : 1;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ZeroDenominator& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
