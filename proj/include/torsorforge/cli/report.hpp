#pragma once

#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "torsorforge/cli/scenario.hpp"

namespace torsorforge::cli {

using Json = nlohmann::ordered_json;

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"classify-torsors", "classify-coverings", "cech",           "compare",
                                          "oracle",           "holonomy-roundtrip", "frame-roundtrip", "gauge"};
  return c;
}

/// Which classify requests a command consumes.
inline std::string request_kind(const std::string& command) {
  if (command == "classify-torsors" || command == "oracle") return "torsors";
  if (command == "classify-coverings") return "coverings";
  if (command == "cech" || command == "compare") return "cech";
  if (command == "holonomy-roundtrip" || command == "gauge") return "bundle";
  if (command == "frame-roundtrip") return "frame";
  return "";
}

struct Computation {
  Json data;            ///< machine-readable result
  std::string summary;  ///< one line for the text report
  bool mismatch = false;
};

struct Report {
  std::string command;
  std::uint64_t hash = 0;
  std::uint64_t budget = 0;
  std::vector<Computation> computations;
  std::optional<double> seconds;  ///< only with --timing

  bool mismatch() const {
    for (const auto& c : computations)
      if (c.mismatch) return true;
    return false;
  }
};

namespace detail {

inline std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline Json tuples(const std::vector<CrossedValues>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(v);
  return a;
}

inline Json representatives(const ClassificationResult& r) {
  Json a = Json::array();
  for (std::size_t o = 0; o < r.class_count(); ++o) a.push_back(r.representative(o));
  return a;
}

inline Json orbit_sizes(const ClassificationResult& r) {
  Json a = Json::array();
  for (const auto& o : r.orbits) a.push_back(o.size());
  return a;
}

inline std::string format_tuple(const std::vector<Elem>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

inline CechCoefficients cech_coefficients(const Scenario& sc, const Request& r) {
  const auto& n = *Scenario::find(sc.nerves, r.refs[0]);
  const auto& g = *Scenario::find(sc.groups, r.refs[1]);
  std::vector<Permutation> twist;
  if (!n.twists.empty()) {
    twist.assign(n.nerve.overlap_count(), Permutation::identity(g.group->order()));
    for (const auto& t : n.twists) {
      const Permutation k = t.aut.evaluate(g.group);
      twist[n.nerve.edge(t.i, t.j)] = t.i < t.j ? k : k.inverse();
    }
  }
  return CechCoefficients(n.nerve, g.group, std::move(twist));
}

/// phi is given on deck elements that must generate the deck group; with
/// no phi clause the action is trivial.
inline std::shared_ptr<const GroupCoveringModel> zeta_of(const Scenario& sc, const Request& r) {
  const auto& cv = *Scenario::find(sc.covers, r.refs[0]);
  const auto& g = *Scenario::find(sc.groups, r.refs[1]);
  const FiniteGroup& deck = cv.covering->deck();
  std::vector<Permutation> phi(deck.order(), Permutation::identity(g.group->order()));
  if (!r.phi.empty()) {
    std::vector<Elem> gens;
    std::vector<Permutation> images;
    for (const auto& [f, a] : r.phi) {
      if (f >= deck.order())
        throw ScenarioError(Diag::invalid_value, a.at.line, a.at.column, "phi names an element outside the deck group");
      gens.push_back(f);
      images.push_back(a.evaluate(g.group));
    }
    phi = phi_from_generators(deck, *g.group, gens, images);
  }
  return std::make_shared<const GroupCoveringModel>(build_group_covering(cv.covering, g.group, std::move(phi)));
}

inline Computation run_torsors(const Scenario& sc, const Request& r, const SearchOptions& o) {
  const auto& a = *Scenario::find(sc.actions, r.refs[0]);
  const auto h = h1_classes(*a.coefficients, o);
  Computation c;
  c.data = {{"kind", "h1"},
            {"action", a.name},
            {"group", a.group},
            {"presentation", a.presentation},
            {"crossed_morphisms", h.cocycles.size()},
            {"classes", h.class_count()},
            {"representatives", representatives(h)},
            {"orbit_sizes", orbit_sizes(h)}};
  c.summary = "h1 " + a.name + ": " + std::to_string(h.class_count()) + " classes from " +
              std::to_string(h.cocycles.size()) + " crossed morphisms";
  return c;
}

/// Default quotient for the oracle: the image of the action in Aut(Gamma).
inline Computation run_oracle(const Scenario& sc, const Request& r, const SearchOptions& o) {
  const auto& a = *Scenario::find(sc.actions, r.refs[0]);
  const PiGroup& pg = *a.coefficients;
  const AutomorphismGroup aut = enumerate_automorphisms(pg.m_ptr(), o);
  std::vector<Elem> images;
  for (const auto& p : pg.gen_action()) images.push_back(*aut.index_of(p));
  const Subgroup q = generated_subgroup(aut.as_group_ptr(), images);
  QuotientAction qa;
  qa.quotient = q.group;
  for (Elem x : images)
    qa.generator_images.push_back(static_cast<Elem>(std::find(q.elements.begin(), q.elements.end(), x) - q.elements.begin()));
  for (Elem x : q.elements) qa.phi.push_back(aut[x]);
  const auto direct = h1_classes(pg, o);
  const auto semi = h1_via_semidirect(pg.pi(), pg.m_ptr(), qa, o);
  bool same = direct.cocycles == semi.cocycles && direct.orbits == semi.orbits;
  Computation c;
  c.mismatch = !same;
  c.data = {{"kind", "semidirect-oracle"},
            {"action", a.name},
            {"quotient_order", q.group->order()},
            {"direct", direct.class_count()},
            {"semidirect", semi.class_count()},
            {"direct_representatives", representatives(direct)},
            {"semidirect_representatives", representatives(semi)},
            {"matched", same}};
  c.summary = "oracle " + a.name + ": semidirect " + std::to_string(semi.class_count()) + " = direct " +
              std::to_string(direct.class_count()) + (same ? ", matched" : ", MISMATCH");
  if (!same && semi.class_count() != direct.class_count())
    c.summary = "oracle " + a.name + ": semidirect " + std::to_string(semi.class_count()) + " != direct " +
                std::to_string(direct.class_count()) + ", MISMATCH";
  return c;
}

inline Computation run_coverings(const Scenario& sc, const Request& r, const SearchOptions& o) {
  const auto& p = *Scenario::find(sc.presentations, r.refs[0]);
  const auto& g = *Scenario::find(sc.groups, r.refs[1]);
  const auto h = classify_group_coverings(p.presentation, g.group, o);
  Computation c;
  c.data = {{"kind", "group-coverings"},
            {"presentation", p.name},
            {"group", g.name},
            {"automorphisms", enumerate_automorphisms(g.group, o).size()},
            {"homomorphisms", h.cocycles.size()},
            {"classes", h.class_count()},
            {"representatives", representatives(h)}};
  c.summary = "coverings " + p.name + " -> Aut(" + g.name + "): " + std::to_string(h.class_count()) + " classes from " +
              std::to_string(h.cocycles.size()) + " homomorphisms";
  return c;
}

inline Computation run_cech(const Scenario& sc, const Request& r, const SearchOptions& o) {
  const auto cc = cech_coefficients(sc, r);
  const auto h = cech_h1(cc, o);
  Computation c;
  c.data = {{"kind", "cech-h1"},
            {"nerve", r.refs[0]},
            {"group", r.refs[1]},
            {"twisted", cc.twisted()},
            {"cocycles", h.cocycles.size()},
            {"classes", h.class_count()},
            {"representatives", representatives(h)}};
  c.summary = "cech " + r.refs[0] + " with " + r.refs[1] + ": " + std::to_string(h.class_count()) + " classes from " +
              std::to_string(h.cocycles.size()) + " cocycles";
  return c;
}

inline Computation run_compare(const Scenario& sc, const Request& r, const SearchOptions& o) {
  const auto cmp = compare_cech_group_cohomology(cech_coefficients(sc, r), o);
  Computation c;
  c.mismatch = !cmp.matched;
  Json map = Json::array();
  for (auto x : cmp.class_map) map.push_back(x);
  c.data = {{"kind", "cech-compare"},
            {"nerve", r.refs[0]},
            {"group", r.refs[1]},
            {"cech", cmp.cech.class_count()},
            {"group_cohomology", cmp.group.class_count()},
            {"class_map", map},
            {"matched", cmp.matched}};
  if (!cmp.matched) c.data["failure"] = cmp.failure;
  c.summary = "compare " + r.refs[0] + " with " + r.refs[1] + ": " + std::to_string(cmp.cech.class_count()) +
              (cmp.cech.class_count() == cmp.group.class_count() ? " = " : " != ") +
              std::to_string(cmp.group.class_count()) + (cmp.matched ? ", matched" : ", MISMATCH: " + cmp.failure);
  return c;
}

inline Computation run_holonomy(const Scenario& sc, const Request& r, const SearchOptions& o) {
  const auto zeta = zeta_of(sc, r);
  const auto dc = deck_coefficients(*zeta);
  const auto h = h1_classes(dc.coefficients, o);
  std::vector<TorsorModel> built;
  std::vector<std::vector<Elem>> tables;
  for (const auto& v : h.cocycles) {
    tables.push_back(dc.table(v));
    built.push_back(build_torsor(zeta, tables.back()));
  }
  bool roundtrip = true, partition = true;
  std::optional<ClassificationResult> loops;
  Json hol = Json::array();
  for (std::size_t i = 0; i < built.size(); ++i) {
    const auto hl = holonomy(built[i]);
    if (!loops) loops = h1_classes(hl.coefficients, o);
    const auto pulled = pull_back_deck_crossed(*zeta, tables[i]);
    roundtrip = roundtrip && loops->class_of(hl.values) == loops->class_of(pulled) &&
                !torsor_isomorphisms(torsor_from_holonomy(zeta, hl.values), built[i], o).empty();
    hol.push_back(hl.values);
    for (std::size_t j = i + 1; j < built.size(); ++j)
      partition = partition && (torsor_isomorphisms(built[i], built[j], o).empty() != (h.orbit_of[i] == h.orbit_of[j]));
  }
  Computation c;
  c.mismatch = !(roundtrip && partition);
  c.data = {{"kind", "holonomy-roundtrip"},
            {"cover", r.refs[0]},
            {"group", r.refs[1]},
            {"deck_crossed_morphisms", h.cocycles.size()},
            {"classes", h.class_count()},
            {"holonomy", hol},
            {"roundtrip", roundtrip},
            {"partition_matches", partition}};
  c.summary = "holonomy " + r.refs[0] + " with " + r.refs[1] + ": " + std::to_string(built.size()) + " torsors in " +
              std::to_string(h.class_count()) + " classes, round trip " + (roundtrip ? "ok" : "FAILED") +
              ", partition " + (partition ? "matches" : "DIFFERS");
  return c;
}

inline Computation run_gauge(const Scenario& sc, const Request& r, const SearchOptions& o) {
  const auto zeta = zeta_of(sc, r);
  const auto dc = deck_coefficients(*zeta);
  const auto h = h1_classes(dc.coefficients, o);
  Json rows = Json::array();
  bool all = true;
  std::string orders;
  for (std::size_t k = 0; k < h.class_count(); ++k) {
    const auto p = build_torsor(zeta, dc.table(h.representative(k)));
    const auto gauge = gauge_group(p, o);
    const auto aut = automorphism_group(p, o);
    bool iso = gauge.group->order() == aut.group->order();
    if (iso) iso = gauge_to_automorphism(p, gauge, aut).is_bijective();
    all = all && iso;
    rows.push_back({{"representative", h.representative(k)},
                    {"gauge_order", gauge.group->order()},
                    {"automorphisms", aut.group->order()},
                    {"isomorphic", iso}});
    orders += (k ? " " : "") + std::to_string(gauge.group->order());
  }
  Computation c;
  c.mismatch = !all;
  c.data = {{"kind", "gauge"}, {"cover", r.refs[0]}, {"group", r.refs[1]}, {"torsors", rows}, {"isomorphic", all}};
  c.summary = "gauge " + r.refs[0] + " with " + r.refs[1] + ": orders [" + orders + "], " +
              (all ? "gauge = Aut(P) for every class" : "MISMATCH");
  return c;
}

inline Computation run_frame(const Scenario& sc, const Request& r, const SearchOptions& o) {
  const auto& e = Scenario::find(sc.bundles, r.refs[0])->bundle;
  const auto& e2 = Scenario::find(sc.bundles, r.refs[1])->bundle;
  const auto aut = automorphism_bundle(e);
  const auto fr = frame_bundle(e, e2, aut);
  const auto back = associated_bundle(fr, e);
  const bool first = find_fibre_bundle_isomorphism(back, e2, o).has_value();
  const bool second = !torsor_isomorphisms(frame_bundle(e, back, aut), fr, o).empty();
  const bool trivial = !global_sections(fr, o).empty();
  Json constants = Json::array();
  for (Elem x : fr.edge_constants()) constants.push_back(lex_unrank(e.fibre_size, x).images());
  Computation c;
  c.mismatch = !(first && second);
  c.data = {{"kind", "frame-roundtrip"},
            {"bundle", r.refs[0]},
            {"other", r.refs[1]},
            {"frame_constants", constants},
            {"frame_trivial", trivial},
            {"associated_of_frame_isomorphic", first},
            {"frame_of_associated_isomorphic", second}};
  c.summary = "frame " + r.refs[0] + " -> " + r.refs[1] + ": Fr " + (trivial ? "trivial" : "nontrivial") +
              ", Fr(E')[E] ~ E' " + (first ? "yes" : "NO") + ", Fr(P[E]) ~ P " + (second ? "yes" : "NO");
  return c;
}

}  // namespace detail

/// Runs every request the command applies to, in declaration order.
inline Report run(const Scenario& sc, const std::string& command, const SearchOptions& options = {}) {
  if (std::find(commands().begin(), commands().end(), command) == commands().end())
    throw Error(ErrorKind::invalid_argument, "unknown command '" + command + "'");
  Report rep;
  rep.command = command;
  rep.hash = sc.hash;
  rep.budget = options.budget;
  const std::string kind = request_kind(command);
  for (const auto& r : sc.requests) {
    if (r.kind != kind) continue;
    try {
      if (command == "classify-torsors") rep.computations.push_back(detail::run_torsors(sc, r, options));
      else if (command == "oracle") rep.computations.push_back(detail::run_oracle(sc, r, options));
      else if (command == "classify-coverings") rep.computations.push_back(detail::run_coverings(sc, r, options));
      else if (command == "cech") rep.computations.push_back(detail::run_cech(sc, r, options));
      else if (command == "compare") rep.computations.push_back(detail::run_compare(sc, r, options));
      else if (command == "holonomy-roundtrip") rep.computations.push_back(detail::run_holonomy(sc, r, options));
      else if (command == "gauge") rep.computations.push_back(detail::run_gauge(sc, r, options));
      else rep.computations.push_back(detail::run_frame(sc, r, options));
    } catch (const ScenarioError&) {
      throw;
    } catch (const CapacityError& e) {
      throw ScenarioError(Diag::capacity, r.at.line, r.at.column, e.what());
    } catch (const InvariantError& e) {
      throw ScenarioError(Diag::invariant, r.at.line, r.at.column, e.what());
    } catch (const Error& e) {
      throw ScenarioError(Diag::invalid_value, r.at.line, r.at.column, e.what());
    }
  }
  return rep;
}

inline std::string emit_report(const Report& r, const std::string& format) {
  if (format == "json") {
    Json j;
    j["schema"] = "torsorforge-report/1";
    j["command"] = r.command;
    j["scenario_hash"] = "fnv1a64:" + detail::hex64(r.hash);
    j["budget"] = r.budget;
    j["computations"] = Json::array();
    for (const auto& c : r.computations) j["computations"].push_back(c.data);
    if (r.seconds) j["seconds"] = *r.seconds;
    return j.dump(2) + "\n";
  }
  require(format == "text", "format must be text or json");
  std::ostringstream out;
  out << "torsorforge report v1\n";
  out << "command " << r.command << "\n";
  out << "scenario fnv1a64:" << detail::hex64(r.hash) << "\n";
  out << "budget " << r.budget << "\n";
  if (r.computations.empty()) out << "no computations\n";
  for (const auto& c : r.computations) {
    out << c.summary << "\n";
    for (const char* key : {"representatives", "direct_representatives"})
      if (c.data.contains(key))
        for (const auto& v : c.data[key]) out << "  rep " << detail::format_tuple(v.get<std::vector<Elem>>()) << "\n";
  }
  if (r.seconds) out << "seconds " << *r.seconds << "\n";
  return out.str();
}

}  // namespace torsorforge::cli
