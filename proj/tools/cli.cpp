#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "loops/analysis.hpp"
#include "loops/error.hpp"
#include "loops/extensions.hpp"
#include "loops/greedy.hpp"
#include "loops/iso.hpp"
#include "loops/modification.hpp"
#include "loops/report.hpp"

namespace loops::cli {

std::atomic<bool>& interrupted() {
  static std::atomic<bool> flag{false};
  return flag;
}

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string hex64(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << v;
  return s.str();
}

/// "class:K", "s1,s2,s3" or a squaring-vector index 0..511.
Group64 parse_h(const std::string& spec) {
  if (spec.rfind("class:", 0) == 0) {
    unsigned k = 0;
    try {
      k = static_cast<unsigned>(std::stoul(spec.substr(6)));
    } catch (const std::exception&) {
      throw UsageError("bad --h '" + spec + "'");
    }
    return suitable_group(k);
  }
  if (spec.find(',') != std::string::npos) {
    std::array<std::uint8_t, 3> s{};
    std::istringstream in(spec);
    std::string part;
    unsigned i = 0;
    while (std::getline(in, part, ',')) {
      if (i >= 3) throw UsageError("--h needs three comma-separated entries");
      try {
        const unsigned long v = std::stoul(part);
        if (v > 7) throw UsageError("squaring vector entries must be 0..7");
        s[i++] = static_cast<std::uint8_t>(v);
      } catch (const std::invalid_argument&) {
        throw UsageError("bad --h entry '" + part + "'");
      }
    }
    if (i != 3) throw UsageError("--h needs three comma-separated entries");
    return group64(s);
  }
  try {
    return group64(static_cast<unsigned>(std::stoul(spec)));
  } catch (const std::invalid_argument&) {
    throw UsageError("bad --h '" + spec + "'");
  }
}

void write_json(const json& j, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << j.dump(2) << "\n";
}

// ---------------------------------------------------------------- commands

struct BuildArgs {
  std::string target;
  int t = -1;
  std::string h = "class:1";
  std::string delta = "0";
  std::string mu = "0";
  std::string form = "det";
  std::string output;
};

int cmd_build(const BuildArgs& a, std::ostream& out) {
  LoopTable q;
  if (a.target == "c") {
    q = build_C();
  } else if (a.target == "cbar") {
    q = build_Cbar();
  } else if (a.target == "gbar") {
    q = build_Gbar();
  } else if (a.target == "theta") {
    if (a.t < 0 || a.t > 127) throw UsageError("theta needs t in 0..127");
    q = build_theta_t(static_cast<unsigned>(a.t));
  } else if (a.target == "theta2prime") {
    q = build_theta_doubleprime();
  } else if (a.target == "pa64") {
    q = build_pa64();
  } else if (a.target == "chmu") {
    const Group64 h = parse_h(a.h);
    const auto p = DeltaMuParams::from_hex(a.delta, a.mu);
    const auto f = a.form == "trivial" ? TrilinearForm::determinant(false) : TrilinearForm::determinant();
    q = build_CHmu(h, f, p);
  }
  save_looptab(a.output, q);
  out << "wrote " << a.output << " (order " << q.order() << ")\n";
  return kOk;
}

int cmd_analyze(const std::string& file, bool mlt, bool fp, const std::string& output,
                std::ostream& out) {
  const LoopTable q = load_looptab(file);
  json j = to_json(analyze(q, mlt || fp));
  if (fp) j["mlt_fingerprint"] = to_json(fingerprint(multiplication_group(q)));
  j["digest"] = hex64(canonical_fingerprint(q));
  write_json(j, output, out);
  return kOk;
}

int cmd_greedy(const std::string& file, const std::string& subloop, const std::string& hspec,
               const std::string& output, const std::string& history, std::ostream& out) {
  const LoopTable q = load_looptab(file);
  const auto nu = nuclei(q);
  const SubloopMask z = center(q, nu.nucleus);
  const SubloopMask& n = subloop == "center" ? z : nu.nucleus;
  Elem h = 0;
  if (hspec == "auto") {
    for (Elem x : z.elements())
      if (x != 0 && q.mul(x, x) == 0) {
        h = x;
        break;
      }
    if (h == 0) throw Error(Errc::NotCentralInvolution, "no central involution found");
  } else {
    try {
      h = static_cast<Elem>(std::stoul(hspec));
    } catch (const std::exception&) {
      throw UsageError("bad --h '" + hspec + "'");
    }
  }
  const auto r = greedy_minimize(q, n, h);
  save_looptab(output, r.result);
  json j;
  j["input"] = file;
  j["subloop"] = subloop;
  j["h"] = h;
  j["baseline_mu_count"] = r.baseline;
  j["coset_min"] = r.coset_min;
  auto& hist = j["history"] = json::array();
  for (const auto& s : r.history)
    hist.push_back({{"s", s.s}, {"t", s.t}, {"mu_before", s.mu_before}, {"mu_after", s.mu_after}});
  j["final_mu_count"] = r.history.empty() ? r.baseline : r.history.back().mu_after;
  j["output"] = output;
  write_json(j, history, out);
  return kOk;
}

int cmd_iso(const std::string& f1, const std::string& f2, bool witness, std::ostream& out) {
  const LoopTable a = load_looptab(f1), b = load_looptab(f2);
  IsoStats st;
  const auto m = are_isomorphic(a, b, {}, &st);
  json j;
  j["isomorphic"] = m.has_value();
  j["rejected_by_invariants"] = st.rejected_by_invariants;
  j["search_nodes"] = st.nodes;
  if (witness && m) j["witness"] = *m;
  out << j.dump(2) << "\n";
  return m ? kOk : kNegative;
}

int cmd_groups64(bool dedup, const std::string& dir, const std::string& output, std::ostream& out) {
  json j;
  j["tool"] = "loops";
  j["version"] = kToolVersion;
  auto svec = [](unsigned idx) {
    return json::array({idx & 7u, (idx >> 3) & 7u, (idx >> 6) & 7u});
  };
  if (!dedup) {
    auto& all = j["groups"] = json::array();
    for (unsigned s = 0; s < 512; ++s)
      all.push_back({{"index", s}, {"squaring_vector", svec(s)},
                     {"digest", hex64(canonical_fingerprint(group64(s).table))}});
    write_json(j, output, out);
    return kOk;
  }
  if (!dir.empty()) std::filesystem::create_directories(dir);
  auto& cls = j["classes"] = json::array();
  for (const auto& c : suitable_group_classes()) {
    const Group64 h = group64(c.representative);
    json e;
    e["class"] = c.class_index;
    e["squaring_vector"] = svec(c.representative);
    e["members"] = c.members.size();
    e["digest"] = hex64(canonical_fingerprint(h.table));
    if (!dir.empty()) {
      const std::string path = (std::filesystem::path(dir) /
                                ("class_" + std::to_string(c.class_index) + ".tab")).string();
      save_looptab(path, h.table);
      e["file"] = path;
    }
    cls.push_back(std::move(e));
  }
  j["class_count"] = cls.size();
  if (!dir.empty() && output.empty()) {
    write_json(j, (std::filesystem::path(dir) / "manifest.json").string(), out);
    out << "wrote " << cls.size() << " classes to " << dir << "\n";
  } else {
    write_json(j, output, out);
  }
  return kOk;
}

int cmd_experiment(const ExperimentSpec& spec, const std::string& output, std::ostream& out) {
  const json j = run_experiment(spec);
  write_json(j, output, out);
  return j.value("interrupted", false) ? kInterrupted : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite loops of nilpotency class three with abelian inner mapping groups", "loops"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  BuildArgs ba;
  auto* build = app.add_subcommand("build", "Build a named loop and write it as LOOPTAB");
  build->add_option("target", ba.target, "c, cbar, gbar, theta, theta2prime, pa64 or chmu")
      ->required()
      ->check(CLI::IsMember({"c", "cbar", "gbar", "theta", "theta2prime", "pa64", "chmu"}));
  build->add_option("t", ba.t, "theta index 0..127");
  build->add_option("--h", ba.h, "class:1..10, s1,s2,s3 or a squaring-vector index");
  build->add_option("--delta", ba.delta, "21-bit hex");
  build->add_option("--mu", ba.mu, "7-bit hex");
  build->add_option("--form", ba.form, "det or trivial")->check(CLI::IsMember({"det", "trivial"}));
  build->add_option("-o,--output", ba.output, "output LOOPTAB file")->required();

  std::string an_file, an_out;
  bool an_mlt = false, an_fp = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "Structural invariants as JSON");
  analyze_cmd->add_option("file", an_file)->required();
  analyze_cmd->add_flag("--mlt", an_mlt, "also compute Mlt and Inn");
  analyze_cmd->add_flag("--fingerprint", an_fp, "also fingerprint Mlt");
  analyze_cmd->add_option("-o,--output", an_out, "JSON output (default stdout)");

  std::string gr_file, gr_sub = "nucleus", gr_h = "auto", gr_out, gr_hist;
  auto* greedy = app.add_subcommand("greedy", "Greedy block-flip descent");
  greedy->add_option("file", gr_file)->required();
  greedy->add_option("--subloop", gr_sub)->check(CLI::IsMember({"nucleus", "center"}));
  greedy->add_option("--h", gr_h, "auto or an element index");
  greedy->add_option("-o,--output", gr_out, "output LOOPTAB file")->required();
  greedy->add_option("--history", gr_hist, "JSON history (default stdout)");

  std::string iso_a, iso_b;
  bool iso_w = false;
  auto* iso = app.add_subcommand("iso", "Decide isomorphism; exit 0 if isomorphic, 10 if not");
  iso->add_option("file1", iso_a)->required();
  iso->add_option("file2", iso_b)->required();
  iso->add_flag("--witness", iso_w, "print the bijection");

  bool g_dedup = false;
  std::string g_dir, g_out;
  auto* g64 = app.add_subcommand("groups64", "The 512 class-two groups of order 64");
  g64->add_flag("--dedup", g_dedup, "sort into isomorphism classes");
  g64->add_option("--out-dir", g_dir, "write class representatives and manifest.json here");
  g64->add_option("-o,--output", g_out, "JSON output (default stdout)");

  ExperimentSpec es;
  std::string e_out;
  auto* exp = app.add_subcommand("experiment", "Run a named experiment");
  exp->add_option("name", es.name)
      ->required()
      ->check(CLI::IsMember({"theta-family", "single-delta-params", "random-mu-pairs",
                             "greedy-descent", "groups64-census"}));
  exp->add_option("--seed", es.seed, "64-bit seed for mt19937_64");
  exp->add_option("--pairs", es.pairs, "random pairs")->check(CLI::Range(1u, 1000000u));
  exp->add_option("--h", es.h_class, "suitable group class")->check(CLI::Range(1u, 10u));
  exp->add_option("--workers", es.workers)->check(CLI::Range(1u, 256u));
  exp->add_flag("--mlt", es.mlt, "include multiplication group orders");
  exp->add_option("-o,--output", e_out, "JSON report (default stdout)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*build) return cmd_build(ba, out);
    if (*analyze_cmd) return cmd_analyze(an_file, an_mlt, an_fp, an_out, out);
    if (*greedy) return cmd_greedy(gr_file, gr_sub, gr_h, gr_out, gr_hist, out);
    if (*iso) return cmd_iso(iso_a, iso_b, iso_w, out);
    if (*g64) return cmd_groups64(g_dedup, g_dir, g_out, out);
    if (*exp) return cmd_experiment(es, e_out, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
    switch (e.code()) {
      case Errc::ParseError:
      case Errc::InvalidArgument:
        return kUsage;
      case Errc::TooLarge:
        return kResource;
      default:
        return kInvariant;
    }
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kResource;
  }
  return kUsage;
}

}  // namespace loops::cli
