// causaltopo: batch front-end for the causal-site / framework / finite
// topology engine. One operation per invocation; compose with pipes.
//
// Exit codes: 0 success, 1 validation or axiom failure, 2 usage or schema
// error, 3 size cap exceeded.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "causaltopo/approximation.hpp"
#include "causaltopo/causal_site.hpp"
#include "causaltopo/generators.hpp"
#include "causaltopo/io.hpp"
#include "causaltopo/minkowski.hpp"
#include "paper_suite.hpp"

using namespace causaltopo;
using nlohmann::json;

namespace {

struct Options {
  std::string format = "text";
  std::string output = "-";
};

void emit(const Options& opt, const std::string& text) {
  if (opt.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.output);
  if (!out) throw SchemaError("cannot open output '" + opt.output + "'");
  out << text;
}

std::string kv(const std::string& key, const std::string& value) { return key + "=" + value + "\n"; }

std::string site_report(const AxiomReport& report, const Options& opt) {
  if (opt.format == "json") return io::dump(io::axiom_report_to_json(report));
  std::string text = kv("passed", report.passed ? "true" : "false");
  for (const auto& v : report.violations) {
    text += kv("violation.axiom", v.axiom);
    text += kv("violation.witness", set_literal(v.witness));
  }
  return text;
}

CausalSite load_site(const std::string& path) {
  const auto d = io::site_from_json(io::load_json(path));
  return CausalSite::make(d.inclusion, d.causal);
}

int run_check_axioms(const std::string& path, const Options& opt) {
  const auto d = io::site_from_json(io::load_json(path));
  const auto report = check_axioms(d.inclusion, d.causal);
  emit(opt, site_report(report, opt));
  return report.passed ? 0 : 1;
}

int run_paper_suite_cmd(std::uint64_t seed, const Options& opt) {
  std::ostringstream out;
  const int failures = suite::run_paper_suite(seed, out);
  emit(opt, out.str());
  return failures == 0 ? 0 : 1;
}

json point_corr_json(const MinkowskiSite& ms, const PointCorrespondence& pc) {
  json j;
  json map = json::object();
  for (std::size_t p = 0; p < ms.events.size(); ++p)
    map[ms.events.name(p)] = pc.weakly.name(pc.event_to_family[p]);
  j["event_to_point"] = std::move(map);
  j["bijective"] = true;
  j["weakly_causal_topology"] = io::topology_to_json(pc.weakly);
  j["homeomorphic_to_discrete"] = pc.discrete_homeo.homeomorphic;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact finite engine for causal sites, frameworks, and finite topologies"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--format", opt.format, "report format")->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--output", opt.output, "output path ('-' = stdout)")->capture_default_str();

  int rc = 0;

  // check-axioms
  std::string ca_path;
  auto* ca = app.add_subcommand("check-axioms", "verify the causal-site axioms of a site file");
  ca->add_option("site", ca_path, "site file or '-'")->required();
  ca->callback([&] { rc = run_check_axioms(ca_path, opt); });

  // weakest-causal
  std::string wc_path;
  auto* wc = app.add_subcommand("weakest-causal", "equip a poset with the weakest causal relation");
  wc->add_option("poset", wc_path)->required();
  wc->callback([&] {
    const auto site = weakest_causal(io::poset_from_json(io::load_json(wc_path)));
    emit(opt, io::dump(io::site_to_json(site)));
  });

  // from-poset
  std::string fp_path;
  std::size_t fp_cap = caps::default_carrier_cap();
  auto* fp = app.add_subcommand("from-poset", "finite-subset causal site of a poset");
  fp->add_option("poset", fp_path)->required();
  fp->add_option("--cap", fp_cap, "max poset size (carrier is 2^n)")->capture_default_str();
  fp->callback([&] {
    const auto site = from_poset(io::poset_from_json(io::load_json(fp_path)), fp_cap);
    emit(opt, io::dump(io::site_to_json(site)));
  });

  // cutting
  std::string cut_path, cut_b, cut_a;
  auto* cut = app.add_subcommand("cutting", "greatest region inside b causally below a");
  cut->add_option("site", cut_path)->required();
  cut->add_option("--b", cut_b, "the bounding region")->required();
  cut->add_option("--a", cut_a, "the region to precede")->required();
  cut->callback([&] {
    const auto site = load_site(cut_path);
    const auto c = cutting(site, cut_b, cut_a);
    emit(opt, opt.format == "json" ? io::dump(json{{"cutting", c}}) : kv("cutting", c));
  });

  // n-set
  std::string ns_path, ns_x;
  auto* ns = app.add_subcommand("n-set", "regions causally incomparable with x");
  ns->add_option("site", ns_path)->required();
  ns->add_option("--x", ns_x)->required();
  ns->callback([&] {
    const auto site = load_site(ns_path);
    const auto n = n_set(site, ns_x);
    emit(opt, opt.format == "json" ? io::dump(json{{"n_set", n}}) : kv("n_set", set_literal(n)));
  });

  // centered
  std::string ce_path;
  auto* ce = app.add_subcommand("centered", "maximal centered families of a site");
  ce->add_option("site", ce_path)->required();
  ce->callback([&] {
    const auto site = load_site(ce_path);
    const auto families = maximal_centered(site);
    if (opt.format == "json") {
      json j = json::array();
      for (const auto& f : families) j.push_back(site.inclusion().names_of(f.members));
      emit(opt, io::dump(json{{"families", j}}));
      return;
    }
    std::string text = kv("families", std::to_string(families.size()));
    for (std::size_t k = 0; k < families.size(); ++k)
      text += kv("family." + std::to_string(k),
                 set_literal(site.inclusion().names_of(families[k].members)));
    emit(opt, text);
  });

  // weakly-causal
  std::string wcp_path;
  auto* wcp = app.add_subcommand("weakly-causal", "the weakly causal topology of a site");
  wcp->add_option("site", wcp_path)->required();
  wcp->callback([&] {
    emit(opt, io::dump(io::topology_to_json(weakly_causal_topology(load_site(wcp_path)))));
  });

  // framework-dual
  std::string fd_path;
  auto* fd = app.add_subcommand("framework-dual", "dual framework (abstract points)");
  fd->add_option("framework", fd_path)->required();
  fd->callback([&] {
    emit(opt, io::dump(io::framework_to_json(dual(io::framework_from_json(io::load_json(fd_path))))));
  });

  // framework-quotient
  std::string fq_path;
  auto* fq = app.add_subcommand("framework-quotient", "T0 quotient with the class map");
  fq->add_option("framework", fq_path)->required();
  fq->callback([&] {
    const auto f = io::framework_from_json(io::load_json(fq_path));
    const auto q = t0_quotient(f);
    json j;
    j["quotient"] = io::framework_to_json(q.quotient);
    json cls = json::object();
    for (std::size_t x = 0; x < f.places_count(); ++x) cls[f.place(x)] = q.class_of[x];
    j["class_of"] = std::move(cls);
    emit(opt, io::dump(j));
  });

  // is-model
  std::string im_fw, im_topo, im_mode = "open";
  auto* im = app.add_subcommand("is-model", "does a space model the framework?");
  im->add_option("framework", im_fw)->required();
  im->add_option("topology", im_topo)->required();
  im->add_option("--mode", im_mode)->check(CLI::IsMember({"open", "closed"}))->capture_default_str();
  im->callback([&] {
    const bool model = is_topological_model(
        io::framework_from_json(io::load_json(im_fw)),
        io::topology_from_json(io::load_json(im_topo)),
        im_mode == "open" ? ModelMode::open : ModelMode::closed);
    emit(opt, opt.format == "json" ? io::dump(json{{"model", model}, {"mode", im_mode}})
                                   : kv("model", model ? "true" : "false"));
  });

  // topo-gen
  std::string tg_path;
  auto* tg = app.add_subcommand("topo-gen", "materialize a topology (full closed lattice)");
  tg->add_option("topology", tg_path)->required();
  tg->callback([&] {
    const auto s = io::topology_from_json(io::load_json(tg_path));
    const auto full = FiniteTopSpace::from_closed_sets(s.points(), s.closed_sets(), false);
    emit(opt, io::dump(io::topology_to_json(full)));
  });

  // degroot
  std::string dg_path;
  auto* dg = app.add_subcommand("degroot", "de Groot (co-compact) dual of a topology");
  dg->add_option("topology", dg_path)->required();
  dg->callback([&] {
    emit(opt, io::dump(io::topology_to_json(
                  degroot_dual(io::topology_from_json(io::load_json(dg_path))))));
  });

  // dual-seq
  std::string ds_path;
  auto* ds = app.add_subcommand("dual-seq", "iterated de Groot duals until repetition");
  ds->add_option("topology", ds_path)->required();
  ds->callback([&] {
    const auto seq = dual_sequence(io::topology_from_json(io::load_json(ds_path)));
    if (opt.format == "json") {
      json j;
      json counts = json::array();
      for (const auto& t : seq.topologies) counts.push_back(t.closed_sets().size());
      j["closed_counts"] = std::move(counts);
      j["cycle_start"] = seq.cycle_start;
      j["distinct"] = seq.distinct_count;
      emit(opt, io::dump(j));
      return;
    }
    std::string text = kv("length", std::to_string(seq.topologies.size()));
    text += kv("distinct", std::to_string(seq.distinct_count));
    text += kv("cycle_start", std::to_string(seq.cycle_start));
    for (std::size_t i = 0; i < seq.topologies.size(); ++i)
      text += kv("topology." + std::to_string(i) + ".closed_count",
                 std::to_string(seq.topologies[i].closed_sets().size()));
    emit(opt, text);
  });

  // homeo
  std::string ho_a, ho_b;
  auto* ho = app.add_subcommand("homeo", "exhaustive homeomorphism search");
  ho->add_option("first", ho_a)->required();
  ho->add_option("second", ho_b)->required();
  ho->callback([&] {
    const auto a = io::topology_from_json(io::load_json(ho_a));
    const auto b = io::topology_from_json(io::load_json(ho_b));
    const auto r = is_homeomorphic(a, b);
    if (opt.format == "json") {
      json j;
      j["homeomorphic"] = r.homeomorphic;
      if (r.homeomorphic) {
        json w = json::object();
        for (std::size_t i = 0; i < a.size(); ++i) w[a.name(i)] = b.name(r.witness[i]);
        j["witness"] = std::move(w);
      }
      emit(opt, io::dump(j));
      return;
    }
    std::string text = kv("homeomorphic", r.homeomorphic ? "true" : "false");
    if (r.homeomorphic)
      for (std::size_t i = 0; i < a.size(); ++i)
        text += kv("map." + a.name(i), b.name(r.witness[i]));
    emit(opt, text);
  });

  // minkowski-gen
  std::string mg_path;
  std::size_t mg_f = 1, mg_g = 1, mg_u = 2;
  auto* mg = app.add_subcommand("minkowski-gen", "causal site of an integer event set");
  mg->add_option("events", mg_path)->required();
  mg->add_option("--maxF", mg_f, "future-generator size cap")->capture_default_str();
  mg->add_option("--maxG", mg_g, "past-generator size cap")->capture_default_str();
  mg->add_option("--maxUnion", mg_u, "union size cap")->capture_default_str();
  mg->callback([&] {
    const auto events = io::events_from_json(io::load_json(mg_path));
    const auto ms = build_causal_site(events, mg_f, mg_g, mg_u);
    emit(opt, io::dump(io::site_to_json(ms.site)));
  });

  // point-corr
  std::string pcr_path;
  std::size_t pc_f = 0, pc_g = 0, pc_u = 0;  // 0 = event count
  auto* pcr = app.add_subcommand("point-corr", "events vs maximal centered families");
  pcr->add_option("events", pcr_path)->required();
  pcr->add_option("--maxF", pc_f, "future-generator size cap (0 = all)");
  pcr->add_option("--maxG", pc_g, "past-generator size cap (0 = all)");
  pcr->add_option("--maxUnion", pc_u, "union size cap (0 = all)");
  pcr->callback([&] {
    const auto events = io::events_from_json(io::load_json(pcr_path));
    const std::size_t n = events.size();
    const auto ms = build_causal_site(events, pc_f ? pc_f : n, pc_g ? pc_g : n, pc_u ? pc_u : n);
    const auto pc = point_correspondence(ms);
    if (opt.format == "json") {
      emit(opt, io::dump(point_corr_json(ms, pc)));
      return;
    }
    std::string text = kv("bijective", "true");
    for (std::size_t p = 0; p < events.size(); ++p)
      text += kv("event." + events.name(p), pc.weakly.name(pc.event_to_family[p]));
    text += kv("homeomorphic_to_discrete", pc.discrete_homeo.homeomorphic ? "true" : "false");
    emit(opt, text);
  });

  // approx
  std::string ap_path;
  auto* ap = app.add_subcommand("approx", "sigma/mu/eta and the Wallman verdict");
  ap->add_option("input", ap_path, "framework or topology file")->required();
  ap->callback([&] {
    const json j = io::load_json(ap_path);
    std::string text;
    json out;
    if (j.contains("places")) {
      const auto f = io::framework_from_json(j);
      const auto sig = sigma(f);
      const auto m = mu(f);
      out["sigma_size"] = sig.size();
      out["mu"] = json::array();
      for (const auto& w : m) out["mu"].push_back(f.names_of(w));
      text += kv("kind", "framework");
      text += kv("sigma_size", std::to_string(sig.size()));
      text += kv("mu_size", std::to_string(m.size()));
      for (std::size_t k = 0; k < m.size(); ++k)
        text += kv("mu." + std::to_string(k), set_literal(f.names_of(m[k])));
    } else {
      const auto space = io::topology_from_json(j);
      const auto eta = ultra_closed_filters(space);
      out["eta_size"] = eta.size();
      text += kv("kind", "topology");
      text += kv("eta_size", std::to_string(eta.size()));
      if (is_T1(space)) {
        const auto w = wallman_space(space);
        const bool same = is_homeomorphic(w.space, space).homeomorphic;
        out["mu_size"] = w.mu_members.size();
        out["mu_equals_eta"] = w.mu_members == eta;
        out["wallman_homeomorphic_to_input"] = same;
        text += kv("mu_size", std::to_string(w.mu_members.size()));
        text += kv("mu_equals_eta", w.mu_members == eta ? "true" : "false");
        text += kv("wallman_homeomorphic_to_input", same ? "true" : "false");
      } else {
        out["t1"] = false;
        text += kv("t1", "false");
      }
    }
    emit(opt, opt.format == "json" ? io::dump(out) : text);
  });

  // wallman
  std::string wm_path;
  auto* wm = app.add_subcommand("wallman", "Wallman compactification of a T1 topology");
  wm->add_option("topology", wm_path)->required();
  wm->callback([&] {
    const auto space = io::topology_from_json(io::load_json(wm_path));
    const auto w = wallman_space(space);
    json j;
    j["space"] = io::topology_to_json(w.space);
    json emb = json::object();
    for (std::size_t x = 0; x < space.size(); ++x) emb[space.name(x)] = w.space.name(w.embedding[x]);
    j["embedding"] = std::move(emb);
    emit(opt, io::dump(j));
  });

  // paper-suite
  std::uint64_t seed = 20240813;
  auto* ps = app.add_subcommand("paper-suite", "reproduction checks, one PASS/FAIL line each");
  ps->add_option("--seed", seed, "seed for the randomized checks")->capture_default_str();
  ps->callback([&] { rc = run_paper_suite_cmd(seed, opt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
