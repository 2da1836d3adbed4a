// Command-line front end. Exit status: 0 all checks passed, 1 a verification
// failed, 2 the input was malformed or exceeded a cap.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "symstab/exactlin/group_action.hpp"
#include "symstab/io/json_io.hpp"
#include "symstab/monodromy/monodromy.hpp"
#include "symstab/partitions/partition.hpp"
#include "symstab/ranges/ranges.hpp"
#include "symstab/spectral/pages.hpp"
#include "symstab/spectral/semisimplicial.hpp"
#include "symstab/strata/strata.hpp"
#include "symstab/suite/suite.hpp"
#include "symstab/transfer/transfer.hpp"

using namespace symstab;
using Json = nlohmann::json;

namespace {

struct Output {
  std::string text;                                        // stdout
  std::vector<std::pair<std::string, std::string>> files;  // written under --output
  int status = 0;

  void file(const std::string& name, const std::string& body) { files.emplace_back(name, body); }
  void json(const std::string& name, const Json& j) { file(name, j.dump(2) + "\n"); }
};

struct Malformed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Partition lambda_arg(const std::string& s, const Caps& caps) {
  const Partition l = Partition::parse(s);
  if (l.weight() > caps.partition_weight)
    throw ResourceLimit("partition weight " + std::to_string(l.weight()) + " exceeds the cap");
  return l;
}

ManifoldClass class_arg(const std::string& path) {
  if (path.empty() || path == "plane") return ManifoldClass::plane();
  return manifold_class_from_json(io::read_json_file(path));
}

std::shared_ptr<const BettiOracle> oracle_arg(const std::string& choice, const Caps& caps) {
  auto builtin = std::make_shared<PlaneOracle>(caps.plane_points);
  if (choice.empty() || choice == "builtin") return builtin;
  auto table = std::make_shared<TableOracle>(TableOracle::from_json(io::read_json_file(choice)));
  auto both = std::make_shared<CompositeOracle>();
  both->add(table);
  both->add(builtin);
  return both;
}

RangeCase case_arg(const std::string& s) {
  static const std::map<std::string, RangeCase> names{{"dim_gt_2", RangeCase::dim_gt_2},
                                                      {"dim2_orientable", RangeCase::dim2_orientable},
                                                      {"dim2_nonorientable", RangeCase::dim2_nonorientable},
                                                      {"star_a", RangeCase::star_a}};
  if (auto it = names.find(s); it != names.end()) return it->second;
  for (const auto& [name, c] : names)
    if (s == to_string(c)) return c;
  throw Malformed("unknown range case '" + s + "'");
}

std::string join(const std::vector<Partition>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i].str();
  return out;
}

// --- partitions, ranges ------------------------------------------------------

Output cmd_collapses(const std::string& lam, int j, const std::string& format, const Caps& caps) {
  const Partition l = add_ones(lambda_arg(lam, caps), static_cast<std::size_t>(std::max(j, 0)));
  if (l.weight() > caps.partition_weight) throw ResourceLimit("partition weight exceeds the cap");
  const auto rep = filtration_report(l);
  Output o;
  Json layers = Json::array();
  std::string csv = "p,members\n";
  for (const auto& layer : rep.layers) {
    csv += fmt::format("{},{}\n", layer.p, join(layer.members, " "));
    std::vector<std::string> names;
    for (const auto& m : layer.members) names.push_back(m.str());
    layers.push_back({{"p", layer.p}, {"members", names}});
  }
  const Json j_out{{"anchor", "column sets col_p of the collapse filtration"},
                   {"lambda", l.str()},
                   {"layers", layers},
                   {"empty_space", rep.layers.empty()},
                   {"within_bound", rep.within_bound}};
  o.text = format == "json" ? j_out.dump(2) + "\n" : csv;
  o.file("collapses.csv", csv);
  o.json("collapses.json", j_out);
  return o;
}

Output cmd_ranges(ManifoldClass mc, int k, int jmax) {
  mc.validate();
  if (k < 1 || jmax < 0) throw Malformed("need k >= 1 and jmax >= 0");
  Output o;
  std::string csv = "j,f,case\n";
  Json rows = Json::array();
  bool defined = true;
  for (int j = 0; j <= jmax; ++j) {
    const auto rep = stability_range_report(mc, k, j);
    defined = rep.stabilization_defined;
    csv += fmt::format("{},{},{}\n", j, to_string(rep.value), to_string(rep.chosen));
    rows.push_back({{"j", j}, {"f", to_string(rep.value)}, {"case", to_string(rep.chosen)}});
  }
  if (!defined) csv += "# closed manifold: no stabilization map; the values bound the transfer range\n";
  o.text = csv;
  o.file("ranges.csv", csv);
  o.json("ranges.json", {{"anchor", "piecewise stability range"}, {"class", to_json(mc)}, {"k", k}, {"rows", rows},
                         {"stabilization_defined", defined}});
  return o;
}

// --- exactlin, spectral ------------------------------------------------------

Output cmd_homology(const std::string& path) {
  const auto c = io::complex_from_json(io::read_json_file(path));
  c.validate();
  const auto b = homology(c);
  Output o;
  std::string csv = "n,betti\n";
  Json betti = Json::object();
  for (int n = c.lo(); n <= c.hi(); ++n) {
    csv += fmt::format("{},{}\n", n, b.at(n));
    betti[std::to_string(n)] = b.at(n);
  }
  o.text = csv;
  o.file("homology.csv", csv);
  o.json("homology.json", {{"anchor", "rational homology"}, {"betti", betti}, {"euler", euler_characteristic(b)}});
  return o;
}

Output cmd_ss(const std::string& path) {
  const auto fc = io::filtered_from_json(io::read_json_file(path));
  const auto ss = compute_pages(fc);
  const auto problems = check_pages(ss);
  Output o;
  o.text = ss.csv();
  for (const auto& p : problems) o.text += "FAIL " + p + "\n";
  o.status = problems.empty() ? 0 : 1;
  o.file("pages.csv", ss.csv());
  o.json("ss.json", {{"anchor", "spectral sequence of a finite filtration"}, {"problems", problems}});
  return o;
}

Json cells_json(const std::vector<CellMap>& cells) {
  Json out = Json::array();
  for (const auto& c : cells)
    out.push_back({{"p", c.p}, {"q", c.q}, {"src", c.src_dim}, {"tgt", c.tgt_dim}, {"rank", c.rank}});
  return out;
}

Output cmd_compare(const std::string& path) {
  const Json j = io::read_json_file(path);
  if (!j.is_object() || !j.contains("source") || !j.contains("target") || !j.contains("map") ||
      !j.contains("threshold"))
    throw io::MalformedInput("compare input needs source, target, map and threshold");
  const auto src = io::filtered_from_json(j.at("source"));
  const auto tgt = io::filtered_from_json(j.at("target"));
  std::vector<QMatrix> f;
  for (const auto& m : j.at("map")) f.push_back(io::matrix_from_json(m));
  const auto rep = compare_pages(src, tgt, f, j.at("threshold").get<int>());
  Output o;
  o.text = fmt::format("hypothesis {}\nconclusion {}\n{}\n", rep.hypothesis, rep.conclusion,
                       rep.consistent() ? "PASS comparison" : "FAIL comparison");
  o.status = rep.consistent() ? 0 : 1;
  o.json("compare.json", {{"anchor", "comparison criterion for maps of spectral sequences"},
                          {"threshold", rep.threshold},
                          {"hypothesis", rep.hypothesis},
                          {"conclusion", rep.conclusion},
                          {"e1", cells_json(rep.pages.front())},
                          {"infinity", cells_json(rep.infinity)}});
  return o;
}

Output cmd_totalize(const std::string& path) {
  const auto ss = io::semisimplicial_from_json(io::read_json_file(path));
  validate(ss);
  const auto pages = realization_ss(ss);
  const auto problems = check_pages(pages);
  Output o;
  o.text = pages.csv();
  Json rep{{"anchor", "realization spectral sequence of a semisimplicial complex"}, {"problems", problems}};
  if (ss.augmented_to) {
    const auto a = augmentation_report(ss);
    rep["augmentation_iso_through"] = a.iso_through;
    o.text += fmt::format("augmentation is an isomorphism through degree {}\n", a.iso_through);
  }
  for (const auto& p : problems) o.text += "FAIL " + p + "\n";
  o.status = problems.empty() ? 0 : 1;
  o.file("realization.csv", pages.csv());
  o.json("totalize.json", rep);
  return o;
}

Output cmd_flag(const std::string& path) {
  const Json j = io::read_json_file(path);
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw io::MalformedInput("flag input needs vertices and edges");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw io::MalformedInput("edge must be a pair");
    edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
  }
  const auto rep = flag_set_check(j.at("vertices").get<std::size_t>(), edges, j.value("truncation", 3));
  const Json out{{"anchor", "ordered flag sets with common neighbours"},
                 {"vertices", rep.vertices},
                 {"truncation", rep.truncation},
                 {"has_hub", rep.has_hub},
                 {"dominated_up_to", rep.dominated_up_to},
                 {"simplices", rep.simplices},
                 {"ordered_reduced_betti", rep.reduced_betti},
                 {"clique_reduced_betti", rep.clique_reduced_betti},
                 {"ordered_vanishes", rep.ordered_vanishes()},
                 {"clique_vanishes", rep.clique_vanishes()}};
  Output o;
  o.text = out.dump(2) + "\n";
  o.json("flag.json", out);
  return o;
}

// --- strata ------------------------------------------------------------------

Json euler_json(const EulerReport& e) {
  Json per = Json::array();
  for (const auto& [s, chi] : e.per_stratum) per.push_back({{"stratum", s.str()}, {"chi_c", chi}});
  Json out{{"anchor", "Euler characteristic of the stratification"},
           {"conclusive", e.conclusive},
           {"consistent", e.consistent},
           {"per_stratum", per},
           {"note", e.note}};
  out["strata_sum"] = e.strata_sum ? Json(*e.strata_sum) : Json(nullptr);
  out["e1_sum"] = e.e1_sum ? Json(*e.e1_sum) : Json(nullptr);
  out["reference"] = e.reference ? Json(*e.reference) : Json(nullptr);
  return out;
}

std::string euler_text(const EulerReport& e) {
  if (!e.conclusive) return "Euler: inconclusive (" + e.note + ")\n";
  return fmt::format("Euler: strata {} e1 {} reference {} -> {}\n", e.strata_sum ? std::to_string(*e.strata_sum) : "-",
                     e.e1_sum ? std::to_string(*e.e1_sum) : "-", e.reference ? std::to_string(*e.reference) : "-",
                     e.consistent ? "PASS" : "FAIL");
}

Output cmd_e1(const std::string& lam, const std::string& cls, const std::string& oracle_spec, const Caps& caps) {
  const Partition l = lambda_arg(lam, caps);
  const ManifoldClass mc = class_arg(cls);
  mc.validate();
  const auto oracle = oracle_arg(oracle_spec, caps);
  const auto t = assemble_e1(l, mc, *oracle);
  Output o;
  o.text = t.csv();
  o.file("e1.csv", t.csv());
  o.json("e1.json", t.to_json());

  // lambda = 1^j lambda0 with lambda0 free of ones, lambda0 |- k.
  const int j = static_cast<int>(l.count(1));
  const int k = l.weight() - j;
  if (k >= 1) {
    const auto range = stability_range_report(mc, k, j);
    const int a = range.chosen == RangeCase::star_a ? mc.connectivity : 0;
    const auto cert = range_certificate(mc.dim, k, j, range.chosen, a);
    o.text += fmt::format("certificate d={} k={} j={} {}: {} ({} cells)\n", mc.dim, k, j, to_string(range.chosen),
                          cert.passed() ? "PASS" : "FAIL", cert.cells.size());
    if (!cert.passed()) o.status = 1;
    o.json("certificate.json", cert.to_json());
  } else {
    o.text += "certificate: not applicable (every part is 1)\n";
  }
  const auto e = euler_consistency(l, mc, *oracle, known_reference(l, mc, *oracle));
  o.text += euler_text(e);
  if (e.conclusive && !e.consistent) o.status = 1;
  o.json("euler.json", euler_json(e));
  return o;
}

Output cmd_certificate(int d, int k, int j, const std::string& c, int a, int weaken) {
  const auto cert = range_certificate(d, k, j, case_arg(c), a, weaken);
  Output o;
  o.text = cert.to_json().dump(2) + "\n" + (cert.passed() ? "PASS" : "FAIL") + " range certificate\n";
  o.status = cert.passed() ? 0 : 1;
  o.json("certificate.json", cert.to_json());
  return o;
}

Output cmd_euler(const std::string& lam, const std::string& cls, const std::string& oracle_spec, const Caps& caps) {
  const Partition l = lambda_arg(lam, caps);
  const ManifoldClass mc = class_arg(cls);
  mc.validate();
  const auto oracle = oracle_arg(oracle_spec, caps);
  const auto e = euler_consistency(l, mc, *oracle, known_reference(l, mc, *oracle));
  Output o;
  o.text = euler_text(e);
  o.status = e.conclusive && !e.consistent ? 1 : 0;
  o.json("euler.json", euler_json(e));
  return o;
}

Output cmd_oracle(const std::vector<std::string>& strata, const Caps& caps) {
  TableOracle table;
  for (const auto& s : strata) {
    const Partition p = lambda_arg(s, caps);
    table.insert(p, ManifoldClass::plane(), plane_oracle(p, caps.plane_points));
  }
  Output o;
  o.text = table.to_json().dump(2) + "\n";
  o.json("oracle.json", table.to_json());
  return o;
}

// --- transfer, monodromy -----------------------------------------------------

Output cmd_transfer(std::size_t sites, bool collar, int k, int i, int j, const Caps& caps) {
  if (sites > caps.sites) throw ResourceLimit(fmt::format("{} sites exceed the cap {}", sites, caps.sites));
  if (i < 0 || j < i || k < 0) throw Malformed("need 0 <= i <= j and k >= 0");
  ConfigurationModel m(sites, collar, k);
  m.max_particles = caps.cosets;
  const QMatrix tau = transfer_map(m, i, j);
  const QMatrix via = transfer_map_via_iota(m, i, j);
  Output o;
  const bool same = tau == via;
  o.text = fmt::format("tau_{{{},{}}}: {} x {}\n{}\n{} iota route agrees\n", i, j, tau.rows(), tau.cols(),
                       io::matrix_to_json(tau).dump(), same ? "PASS" : "FAIL");
  o.status = same ? 0 : 1;
  o.json("transfer.json", {{"anchor", "transfer on coinvariants"},
                           {"sites", sites},
                           {"collar", collar},
                           {"k", k},
                           {"i", i},
                           {"j", j},
                           {"tau", io::matrix_to_json(tau)}});
  return o;
}

Output cmd_verify_dold(const std::string& path) {
  const auto sys = dold_from_json(io::read_json_file(path));
  const auto rep = dold_verify(sys);
  Output o;
  std::set<std::string> failed(rep.failures.begin(), rep.failures.end());
  for (const auto& c : rep.checked) o.text += (failed.contains(c) ? "FAIL " : "PASS ") + c + "\n";
  Json out{{"anchor", "stabilization relation and transfer composites"},
           {"checked", rep.checked.size()},
           {"failures", rep.failures}};
  if (rep.passed()) {
    const auto c = dold_conclusions(sys, rep);
    for (int p = 1; p <= sys.top(); ++p)
      o.text += fmt::format("sigma_{} injective: {}\n", p, c.sigma_injective[static_cast<std::size_t>(p)] ? "yes" : "no");
    out["conclusions_hold"] = c.all();
    if (!c.all()) o.status = 1;
  } else {
    o.status = 1;
  }
  o.json("dold.json", out);
  return o;
}

Output cmd_monodromy(const std::string& path) {
  const auto ld = loop_datum_from_json(io::read_json_file(path));
  const auto oc = orientation_chars(ld);
  const auto v = monodromy_pair(ld);
  const auto agree = odd_move_agreement(ld);
  Output o;
  o.text = fmt::format("s1 {}\ns2 {}\no1 {}\no2 {}\norientation {}\norientation_lambda {}\ntensor {}\nodd-move {}\n",
                       s1(ld), s2(ld), oc.o1, oc.o2, v.orientation, v.orientation_lambda, v.tensor, to_string(agree));
  o.status = agree == Agreement::disagree ? 1 : 0;
  o.json("monodromy.json", {{"anchor", "orientation characters of loops in strata"},
                            {"s1", s1(ld)},
                            {"s2", s2(ld)},
                            {"o1", oc.o1},
                            {"o2", oc.o2},
                            {"orientation", v.orientation},
                            {"orientation_lambda", v.orientation_lambda},
                            {"tensor", v.tensor},
                            {"odd_move", to_string(agree)}});
  return o;
}

Output cmd_suite(std::uint64_t seed, const Caps& caps) {
  const auto rep = run_suite(seed, caps);
  Output o;
  o.text = rep.summary();
  for (const auto& c : rep.caveats) o.text += "note: " + c + "\n";
  o.status = rep.passed() ? 0 : 1;
  o.json("suite.json", rep.to_json());
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact rational checks for colored configuration spaces and homological stability"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string output_dir, format = "csv";
  int verbosity = 0;
  app.add_option("--output", output_dir, "directory for report files");
  app.add_option("--format", format, "stdout format for tables")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("-v,--verbose", verbosity, "list written files");

  std::string lambda, cls, oracle = "builtin", path, rcase = "dim_gt_2";
  int k = 0, j = 0, jmax = 8, dim = 2, a = 0, weaken = 0, punctures = 0, i_level = 0;
  bool nonorientable = false, closed = false, collar = false;
  std::size_t sites = 2;
  std::uint64_t seed = 7;
  std::vector<std::string> strata;

  auto* collapses = app.add_subcommand("collapses", "collapse columns col_p");
  collapses->add_option("--lambda", lambda)->required();
  collapses->add_option("--j", j, "prepend j ones");

  auto* ranges = app.add_subcommand("ranges", "stability range table");
  ranges->add_option("--dim", dim)->required();
  ranges->add_flag("--orientable", [&](std::int64_t) { nonorientable = false; });
  ranges->add_flag("--nonorientable", nonorientable);
  ranges->add_flag("--open", [&](std::int64_t) { closed = false; });
  ranges->add_flag("--closed", closed);
  ranges->add_option("--a", a, "declared connectivity");
  ranges->add_option("--punctures", punctures);
  ranges->add_option("--k", k)->required();
  ranges->add_option("--jmax", jmax);

  auto* hom = app.add_subcommand("homology", "Betti numbers of a complex");
  hom->add_option("file", path)->required();
  auto* ss = app.add_subcommand("ss", "spectral sequence of a filtered complex");
  ss->add_option("file", path)->required();
  auto* compare = app.add_subcommand("compare", "map of spectral sequences");
  compare->add_option("file", path)->required();
  auto* totalize = app.add_subcommand("totalize", "realization of a semisimplicial complex");
  totalize->add_option("file", path)->required();
  auto* flag = app.add_subcommand("flag", "flag set check");
  flag->add_option("file", path)->required();

  auto* e1 = app.add_subcommand("e1", "E1 page of the stratification");
  auto* euler = app.add_subcommand("euler", "Euler characteristic consistency");
  for (auto* s : {e1, euler}) {
    s->add_option("--lambda", lambda)->required();
    s->add_option("--class", cls, "manifold class JSON (default: the plane)");
    s->add_option("--oracle", oracle, "'builtin' or a Betti table JSON");
  }
  auto* cert = app.add_subcommand("certificate", "range certificate");
  cert->add_option("--dim", dim)->required();
  cert->add_option("--k", k)->required();
  cert->add_option("--j", j)->required();
  cert->add_option("--case", rcase, "dim_gt_2, dim2_orientable, dim2_nonorientable or star_a");
  cert->add_option("--a", a);
  cert->add_option("--weaken", weaken);
  auto* orc = app.add_subcommand("oracle", "plane Betti data as a table");
  orc->add_option("strata", strata)->required();

  auto* transfer = app.add_subcommand("transfer", "transfer map on a configuration model");
  transfer->add_option("--sites", sites);
  transfer->add_flag("--collar", collar);
  transfer->add_option("--k", k);
  transfer->add_option("--i", i_level)->required();
  transfer->add_option("--j", j)->required();
  auto* verify = app.add_subcommand("verify", "verification of input data");
  verify->require_subcommand(1);
  auto* dold = verify->add_subcommand("dold", "stabilization and transfer system");
  dold->add_option("file", path)->required();
  auto* mono = app.add_subcommand("monodromy", "signs of a loop datum");
  mono->add_option("file", path)->required();
  auto* suite = app.add_subcommand("suite", "acceptance battery");
  suite->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  Output out;
  try {
    const Caps caps = caps_from_environment();
    if (*collapses) out = cmd_collapses(lambda, j, format, caps);
    if (*ranges) out = cmd_ranges({dim, !nonorientable, !closed, a, punctures}, k, jmax);
    if (*hom) out = cmd_homology(path);
    if (*ss) out = cmd_ss(path);
    if (*compare) out = cmd_compare(path);
    if (*totalize) out = cmd_totalize(path);
    if (*flag) out = cmd_flag(path);
    if (*e1) out = cmd_e1(lambda, cls, oracle, caps);
    if (*euler) out = cmd_euler(lambda, cls, oracle, caps);
    if (*cert) out = cmd_certificate(dim, k, j, rcase, a, weaken);
    if (*orc) out = cmd_oracle(strata, caps);
    if (*transfer) out = cmd_transfer(sites, collar, k, i_level, j, caps);
    if (*dold) out = cmd_verify_dold(path);
    if (*mono) out = cmd_monodromy(path);
    if (*suite) out = cmd_suite(seed, caps);
  } catch (const std::exception& e) {
    // Anything raised while reading or validating input is an input problem.
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  std::cout << out.text;
  if (!output_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(output_dir, ec);
    for (const auto& [name, body] : out.files) {
      const auto target = std::filesystem::path(output_dir) / name;
      std::ofstream f(target, std::ios::binary);
      f << body;
      if (!f) {
        std::cerr << "error: cannot write " << target << "\n";
        return 2;
      }
      if (verbosity > 0) std::cerr << "wrote " << target.string() << "\n";
    }
  }
  return out.status;
}
