#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "omloq/equivalence.hpp"
#include "omloq/error.hpp"
#include "omloq/hilbert3.hpp"
#include "omloq/linmap.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace omloq;

namespace {

enum Exit { kPass = 0, kFail = 1, kInput = 2, kCap = 3 };

struct RunConfig {
  std::string command;
  std::string input;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t lin_cap = kDefaultLinCap;
  std::uint64_t monoid_cap = kDefaultMonoidCap;
  std::size_t exhaustive_threshold = 12;
  std::size_t samples = 200;
  std::size_t max_elements = kDefaultMaxElements;
  bool json_out = false;
  bool serial = false;

  Exec exec() const { return serial ? Exec::serial : Exec::parallel; }
  SamplePolicy policy() const {
    SamplePolicy p;
    p.seed = seed;
    p.random = samples;
    p.exhaustive_threshold = exhaustive_threshold;
    return p;
  }
  GammaOptions gamma() const { return {monoid_cap, policy(), exec()}; }
  ParseOptions parse() const { return {max_elements}; }

  json to_json() const {
    return {{"seed", seed},
            {"lin_cap", lin_cap},
            {"monoid_cap", monoid_cap},
            {"exhaustive_threshold", exhaustive_threshold},
            {"samples", samples},
            {"max_elements", max_elements},
            {"exec", serial ? "serial" : "parallel"}};
  }
};

// Everything a command prints. Fields are merged into the JSON object
// after the common header; `lines` go to text output before the report.
struct Outcome {
  int code = kPass;
  json fields = json::object();
  std::vector<std::string> lines;
  std::optional<Report> report;
};

std::string verdict_of(int code) {
  switch (code) {
    case kPass: return "PASS";
    case kFail: return "FAIL";
    default: return "ERROR";
  }
}

int emit(const RunConfig& cfg, const Outcome& out) {
  if (cfg.json_out) {
    json j;
    j["tool"] = "omloq";
    j["command"] = cfg.command;
    j["input"] = cfg.input;
    j["config"] = cfg.to_json();
    j["verdict"] = verdict_of(out.code);
    j["exit_code"] = out.code;
    for (const auto& [k, v] : out.fields.items()) j[k] = v;
    if (out.report) j["report"] = out.report->to_json();
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "omloq " << cfg.command;
    if (!cfg.input.empty()) std::cout << " " << cfg.input;
    std::cout << " (seed " << cfg.seed << ")\n";
    for (const std::string& l : out.lines) std::cout << l << "\n";
    if (out.report) std::cout << out.report->to_text();
    std::cout << "verdict: " << verdict_of(out.code) << "\n";
  }
  return out.code;
}

Outcome from_report(Report r) {
  Outcome o;
  o.code = r.passed() ? kPass : kFail;
  o.report = std::move(r);
  return o;
}

Outcome error(int code, const std::string& kind, const std::string& msg,
              std::optional<std::pair<std::size_t, std::size_t>> pos = {}) {
  Outcome o;
  o.code = code;
  json e{{"kind", kind}, {"message", msg}};
  if (pos) {
    e["line"] = pos->first;
    e["column"] = pos->second;
  }
  o.fields["error"] = std::move(e);
  o.lines.push_back("error (" + kind + "): " + msg);
  return o;
}

OmlPtr load(const RunConfig& cfg, const std::string& path) {
  return std::make_shared<const Oml>(load_lattice(path, cfg.parse()));
}

Elem label(const Oml& l, const std::string& s) {
  auto e = l.find(s);
  if (!e) throw std::invalid_argument("unknown label '" + s + "'");
  return *e;
}

json labels(const Oml& l, std::span<const Elem> xs) {
  json a = json::array();
  for (Elem x : xs) a.push_back(l.label(x));
  return a;
}

// ---- commands --------------------------------------------------------------

Outcome cmd_check(const RunConfig& cfg) {
  const OmlPtr l = load(cfg, cfg.input);
  Outcome o = from_report(validate_oml(*l, cfg.exec()));
  o.fields["lattice"] = l->name();
  o.fields["elements"] = l->size();
  o.lines.push_back(l->name() + ": " + std::to_string(l->size()) +
                    " elements");
  if (o.code == kPass) {
    if (auto w = find_nonmonotone(*l)) {
      o.fields["nonmonotone"] = labels(*l, *w);
      o.lines.push_back("sasaki projections not monotone at u=" +
                        l->label((*w)[0]) + " v=" + l->label((*w)[1]) +
                        " x=" + l->label((*w)[2]));
    } else {
      o.fields["nonmonotone"] = nullptr;
    }
  }
  return o;
}

Outcome cmd_sasaki(const RunConfig& cfg, const std::string& ms,
                   const std::string& ns) {
  const OmlPtr l = load(cfg, cfg.input);
  const Elem m = label(*l, ms), n = label(*l, ns);
  const std::string pi = l->label(sasaki_projection(*l, m, n));
  const std::string hook = l->label(sasaki_hook(*l, m, n));
  Outcome o;
  o.fields["m"] = ms;
  o.fields["n"] = ns;
  o.fields["pi"] = pi;
  o.fields["hook"] = hook;
  o.lines.push_back("pi=" + pi + " hook=" + hook);
  return o;
}

Outcome cmd_linmaps(const RunConfig& cfg, bool list) {
  const OmlPtr l = load(cfg, cfg.input);
  Report r("Lin(" + l->name() + ")");
  const Report valid = validate_oml(*l, cfg.exec());
  r.append(valid, "oml");
  if (!valid.passed()) return from_report(std::move(r));
  const std::vector<LinMap> maps = enumerate_lin(l, cfg.lin_cap, cfg.exec());
  r.append(verify_foulis(l, maps, cfg.exec()), "foulis");
  r.append(verify_left_module_on_M(l, maps, cfg.exec()), "module");
  r.append(verify_sasaki_characterization(l, cfg.exec()), "sasaki");
  r.append(verify_galois(l, cfg.exec()), "galois");
  r.append(sasaki_lattice(l, maps, cfg.exec()).report, "projection-lattice");
  Outcome o = from_report(std::move(r));
  o.fields["count"] = maps.size();
  o.lines.push_back(std::to_string(maps.size()) + " linear maps");
  if (list) {
    json a = json::array();
    for (const LinMap& f : maps) {
      a.push_back({{"map", describe(f)}, {"adjoint", describe(f.adj)}});
      o.lines.push_back("  " + describe(f) + "  adjoint " + describe(f.adj));
    }
    o.fields["maps"] = std::move(a);
  }
  return o;
}

Outcome cmd_tmonoid(const RunConfig& cfg, const std::string& cayley,
                    bool list) {
  const OmlPtr l = load(cfg, cfg.input);
  const InvMonoid m = generate_T(l, cfg.monoid_cap, cfg.exec());
  Outcome o = from_report(audit_minimality(m, cfg.exec()));
  o.fields["size"] = m.size();
  o.lines.push_back("|T(Lin(" + l->name() + "))| = " +
                    std::to_string(m.size()));
  json a = json::array();
  for (const MonoidElem& e : m.elems()) {
    a.push_back({{"id", e.id},
                 {"word", labels(*l, e.word)},
                 {"star", e.star},
                 {"table", labels(*l, e.tbl)}});
    if (list) {
      o.lines.push_back("  " + std::to_string(e.id) + " " + m.name(e.id) +
                        " star " + std::to_string(e.star));
    }
  }
  o.fields["elements"] = std::move(a);
  if (!cayley.empty()) {
    std::ofstream os(cayley);
    if (!os) throw Error("cannot write '" + cayley + "'");
    write_cayley_csv(os, m);
    o.lines.push_back("cayley table written to " + cayley);
  }
  return o;
}

Outcome cmd_toda(const RunConfig& cfg) {
  const OmlPtr l = load(cfg, cfg.input);
  const TodaPtr h = gamma_object(l, cfg.gamma());
  Outcome o = from_report(h->report());
  o.fields["monoid_size"] = h->monoid->size();
  o.fields["tests"] = h->tests.elems.size();
  o.fields["exhaustive"] = is_exhaustive(*h->alg, cfg.policy());
  o.lines.push_back("|T| = " + std::to_string(h->monoid->size()) + ", " +
                    std::to_string(h->tests.elems.size()) + " tests, " +
                    (is_exhaustive(*h->alg, cfg.policy()) ? "exhaustive"
                                                          : "sampled"));
  return o;
}

// src/dst in the document are resolved against the document's directory;
// an absent src means the input lattice and an absent dst means src.
OrthoIso read_morphism(const RunConfig& cfg, const OmlPtr& m,
                       const std::string& path) {
  const MorphismDoc doc = load_morphism(path);
  const fs::path dir = fs::path(path).parent_path();
  if (doc.src && !(*load(cfg, (dir / *doc.src).string()) == *m)) {
    throw std::invalid_argument("morphism '" + path + "' does not start at " +
                                m->name());
  }
  const OmlPtr dst = doc.dst ? load(cfg, (dir / *doc.dst).string()) : m;
  OrthoIso k = resolve_morphism(doc, m, dst);
  const Report iso = check_ortho_iso(k, cfg.exec());
  if (!iso.passed()) {
    std::string why;
    for (const Check& c : iso.checks()) {
      if (c.ok()) continue;
      why = c.name;
      for (const std::string& w : c.witness) why += " " + w;
      break;
    }
    throw PreconditionError("morphism '" + path +
                            "' is not an ortholattice isomorphism (" + why +
                            ")");
  }
  return k;
}

Outcome cmd_equiv(const RunConfig& cfg, const std::vector<std::string>& files,
                  bool autos) {
  const OmlPtr m = load(cfg, cfg.input);
  std::vector<OrthoIso> ks;
  json names = json::array();
  for (const std::string& f : files) {
    ks.push_back(read_morphism(cfg, m, f));
    names.push_back(f);
  }
  if (autos) {
    for (const OrthoIso& k : find_automorphisms(m)) {
      if (k.map == identity_iso(m).map) continue;
      ks.push_back(k);
      names.push_back("automorphism " + labels(*m, k.map).dump());
    }
  }
  Outcome o = from_report(round_trip_report(m, ks, cfg.gamma()));
  o.fields["morphisms"] = names;
  o.lines.push_back("identity plus " + std::to_string(ks.size()) +
                    " morphism(s)");
  return o;
}

Vec3 parse_vec(const std::string& s) {
  std::vector<long> xs;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    try {
      xs.push_back(std::stol(tok, &used));
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) {
      throw std::invalid_argument("--x expects three integers, got '" + s +
                                  "'");
    }
  }
  if (xs.size() != 3) {
    throw std::invalid_argument("--x expects three integers, got '" + s + "'");
  }
  return vec3(xs[0], xs[1], xs[2]);
}

Outcome cmd_witness(const std::string& x) {
  const WitnessReport w = witness_report(parse_vec(x));
  Outcome o = from_report(w.report);
  const json wj = w.to_json();
  for (const auto& [k, v] : wj.items()) o.fields[k] = v;
  o.lines.push_back("u = " + w.u.to_string() + ", v = " + w.v.to_string() +
                    ", x = " + w.x.to_string());
  o.lines.push_back("u' = " + w.orth_u.to_string() +
                    ", x v u' = " + w.x_join_orth_u.to_string());
  o.lines.push_back("v' = " + w.orth_v.to_string() +
                    ", x v v' = " + w.x_join_orth_v.to_string());
  o.lines.push_back("pi_u(x) = " + w.pi_u_x.to_string() +
                    ", pi_v(x) = " + w.pi_v_x.to_string());
  o.lines.push_back(std::string("monotone violation: ") +
                    (w.monotone_violation ? "yes" : "no"));
  return o;
}

template <class F>
int run(const RunConfig& cfg, F&& body) {
  try {
    return emit(cfg, body());
  } catch (const ParseError& e) {
    return emit(cfg, error(kInput, "parse", e.what(),
                           std::pair{e.line(), e.column()}));
  } catch (const LatticeError& e) {
    return emit(cfg, error(kInput, "lattice", e.what()));
  } catch (const SizeExceeded& e) {
    Outcome o = error(kCap, "cap", e.what());
    o.fields["error"]["count"] = e.count();
    return emit(cfg, o);
  } catch (const PreconditionError& e) {
    return emit(cfg, error(kFail, "precondition", e.what()));
  } catch (const std::invalid_argument& e) {
    return emit(cfg, error(kInput, "argument", e.what()));
  } catch (const Error& e) {
    return emit(cfg, error(kInput, "io", e.what()));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite orthomodular lattices and their dynamic algebras"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::optional<std::uint64_t> seed_flag;
  app.add_flag("--json", cfg.json_out, "Emit one JSON object");
  app.add_option("--seed", seed_flag, "Sampling seed (default 3405691582)");
  app.add_option("--lin-cap", cfg.lin_cap, "Lin(M) enumeration cap")
      ->check(CLI::PositiveNumber);
  app.add_option("--monoid-cap", cfg.monoid_cap, "Test monoid size cap")
      ->check(CLI::PositiveNumber);
  app.add_option("--exhaustive-threshold", cfg.exhaustive_threshold,
                 "Carriers up to this size are checked on every subset")
      ->check(CLI::PositiveNumber);
  app.add_option("--samples", cfg.samples, "Random subsets per suite")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-elements", cfg.max_elements,
                 "Largest lattice accepted by the parser")
      ->check(CLI::PositiveNumber);
  app.add_flag("--serial", cfg.serial, "Use the serial reference kernels");

  std::string file, m, n, cayley, x = "1,1,1";
  std::vector<std::string> morphs;
  bool list = false, autos = false;

  auto* check = app.add_subcommand("check", "Validate the OML axioms");
  check->add_option("file", file)->required();
  auto* sasaki = app.add_subcommand("sasaki", "Print pi_m(n) and the hook");
  sasaki->add_option("file", file)->required();
  sasaki->add_option("m", m)->required();
  sasaki->add_option("n", n)->required();
  auto* linmaps = app.add_subcommand("linmaps", "Enumerate and audit Lin(M)");
  linmaps->add_option("file", file)->required();
  linmaps->add_flag("--list", list, "Print every map");
  auto* tmonoid = app.add_subcommand("tmonoid", "Generate T(Lin(M))");
  tmonoid->add_option("file", file)->required();
  tmonoid->add_option("--cayley", cayley, "Write the Cayley table as CSV");
  tmonoid->add_flag("--list", list, "Print every element");
  auto* toda = app.add_subcommand("toda", "Run the IDA, module and TODA suites");
  toda->add_option("file", file)->required();
  auto* equiv = app.add_subcommand("equiv", "Round trip through the equivalence");
  equiv->add_option("file", file)->required();
  equiv->add_option("morphisms", morphs, "Morphism files starting at file");
  equiv->add_flag("--automorphisms", autos, "Add every automorphism of file");
  auto* witness = app.add_subcommand("witness", "Non-monotone projections in Q^3");
  witness->add_option("--x", x, "Spanning vector of x, e.g. 1,1,1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kInput;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  cfg.input = file;
  if (seed_flag) {
    cfg.seed = *seed_flag;
  } else if (const char* env = std::getenv("OMLOQ_SEED")) {
    try {
      std::size_t used = 0;
      cfg.seed = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      return emit(cfg, error(kInput, "argument",
                             std::string("OMLOQ_SEED is not an integer: ") +
                                 env));
    }
  }

  if (*check) return run(cfg, [&] { return cmd_check(cfg); });
  if (*sasaki) return run(cfg, [&] { return cmd_sasaki(cfg, m, n); });
  if (*linmaps) return run(cfg, [&] { return cmd_linmaps(cfg, list); });
  if (*tmonoid) return run(cfg, [&] { return cmd_tmonoid(cfg, cayley, list); });
  if (*toda) return run(cfg, [&] { return cmd_toda(cfg); });
  if (*equiv) return run(cfg, [&] { return cmd_equiv(cfg, morphs, autos); });
  return run(cfg, [&] { return cmd_witness(x); });
}
