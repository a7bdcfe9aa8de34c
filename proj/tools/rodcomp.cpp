#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rodcomp/catalog.hpp"
#include "rodcomp/io.hpp"
#include "rodcomp/survey.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSemantic = 2;
constexpr int kExitParse = 3;
constexpr int kExitUndecided = 4;
constexpr int kExitResourceLimit = 5;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw rodcomp::ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string rod_str(const rodcomp::Rod& r) {
  using rodcomp::rat_str;
  return "(" + r.direction.x.str() + "," + r.direction.y.str() + "," + r.direction.z.str() +
         ")@(" + rat_str(r.basepoint.x) + "," + rat_str(r.basepoint.y) + "," +
         rat_str(r.basepoint.z) + ")";
}

std::string vec_str(const rodcomp::RatVec3& v) {
  using rodcomp::rat_str;
  return "(" + rat_str(v.x) + "," + rat_str(v.y) + "," + rat_str(v.z) + ")";
}

struct LoadedPacking {
  rodcomp::PackingDocument doc;
  rodcomp::ValidatedPacking vp;
};

// Parse errors exit 3, semantic errors (non-primitive directions,
// intersecting rods) exit 2.
LoadedPacking load_validated(const std::string& path) {
  const rodcomp::PackingDocument doc = rodcomp::parse_packing_document(read_file(path));
  rodcomp::RodPacking p = rodcomp::to_rod_packing(doc);
  rodcomp::ValidationResult vr = rodcomp::validate_packing(p);
  if (!vr.ok()) {
    for (const auto& [i, j] : vr.intersecting)
      std::cerr << "IntersectingRods(" << i << "," << j << "): " << rod_str(p.rods[(std::size_t)i])
                << " meets " << rod_str(p.rods[(std::size_t)j]) << "\n";
    std::exit(kExitSemantic);
  }
  return {doc, std::move(*vr.value)};
}

int cmd_validate(const std::string& path) {
  const LoadedPacking lp = load_validated(path);
  std::cout << "valid: " << lp.vp.size() << " rod(s), direction rank " << lp.vp.direction_rank
            << ", " << lp.vp.parallel_classes.size() << " parallel class(es)\n";
  return kExitOk;
}

int cmd_classify(const std::string& path, long radius, const std::string& format) {
  const LoadedPacking lp = load_validated(path);
  const rodcomp::GeometryVerdict gv = rodcomp::classify(lp.vp, radius);
  if (format == "json") {
    const rodcomp::VerdictDocument doc{lp.doc, gv, rodcomp::kToolVersion};
    std::cout << rodcomp::to_json(doc).dump(2) << "\n";
    return kExitOk;
  }
  std::cout << "rods: " << lp.vp.size() << "\n";
  std::cout << "hyperbolic: " << (gv.hyperbolic ? "true" : "false") << "\n";
  std::cout << "seifert_fibred: " << (gv.seifert_fibred ? "true" : "false") << "\n";
  if (!gv.toroidal_witness) {
    std::cout << "toroidal_witness: none\n";
  } else if (const auto* plane = std::get_if<rodcomp::PlaneTorusWitness>(&*gv.toroidal_witness)) {
    std::cout << "toroidal_witness: plane torus, normal (" << plane->normal.x.str() << ","
              << plane->normal.y.str() << "," << plane->normal.z.str() << "), offset "
              << rodcomp::rat_str(plane->offset) << "\n";
  } else {
    const auto& a = std::get<rodcomp::SweptAnnulusWitness>(*gv.toroidal_witness);
    std::cout << "toroidal_witness: swept annulus, pair (" << a.i << "," << a.j << "), vector "
              << vec_str(a.v) << "\n";
  }
  if (gv.independence_triple) {
    const auto& t = *gv.independence_triple;
    std::cout << "independence_triple: " << t[0] << " " << t[1] << " " << t[2] << "\n";
  }
  std::cout << "non_isotopy_certificates: " << gv.non_isotopy_certificates.size() << "\n";
  return kExitOk;
}

int cmd_isotopy(const std::string& path, int i, int j, long radius, const std::string& format) {
  const LoadedPacking lp = load_validated(path);
  if (i < 0 || j < 0 || i >= lp.vp.size() || j >= lp.vp.size()) {
    std::cerr << "rod index out of range\n";
    return kExitSemantic;
  }
  const rodcomp::IsotopyVerdict verdict = rodcomp::decide_linear_isotopy(lp.vp, i, j, radius);
  rodcomp::json out;
  out["pair"] = rodcomp::json::array({i, j});
  int code = kExitOk;
  if (const auto* iso = std::get_if<rodcomp::Isotopic>(&verdict)) {
    out["verdict"] = "isotopic";
    out["vector"] = rodcomp::detail::json_vec(iso->v);
  } else if (const auto* ni = std::get_if<rodcomp::NotIsotopic>(&verdict)) {
    out["verdict"] = "not_isotopic";
    out["certificate"] = rodcomp::detail::certificate_to_json({i, j}, ni->certificate);
  } else {
    const auto& u = std::get<rodcomp::Undecided>(verdict);
    out["verdict"] = "undecided";
    out["search_radius"] = u.search_radius;
    code = kExitUndecided;
  }
  if (format == "json") {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << out["verdict"].get<std::string>();
    if (out.contains("vector")) std::cout << " vector " << out["vector"].dump();
    std::cout << "\n";
  }
  return code;
}

int cmd_survey(const rodcomp::SurveyOptions& opt, bool count_only) {
  const rodcomp::SurveyResult res = rodcomp::run_survey(opt);
  if (res.limit_exceeded) {
    std::cerr << "resource limit exceeded (" << *opt.max_packings
              << " packings); raise ROD_CLASSIFIER_MAX_CELLS or narrow the survey\n";
    return kExitResourceLimit;
  }
  if (!count_only) {
    for (const auto& [subset, cls] : res.rows) {
      std::cout << cls << " ";
      for (std::size_t t = 0; t < subset.size(); ++t) {
        if (t) std::cout << " ";
        std::cout << rod_str(res.universe[(std::size_t)subset[t]]);
      }
      std::cout << "\n";
    }
  }
  std::cout << "hyperbolic " << res.counts.hyperbolic << "\n";
  std::cout << "seifert_fibred " << res.counts.seifert_fibred << "\n";
  std::cout << "toroidal_plane " << res.counts.toroidal_plane << "\n";
  std::cout << "toroidal_annulus " << res.counts.toroidal_annulus << "\n";
  std::cout << "invalid " << res.counts.invalid << "\n";
  std::cout << "total_valid " << res.counts.total_valid() << "\n";
  return kExitOk;
}

int cmd_catalog(const std::string& action, const std::string& name) {
  if (action == "list") {
    for (const auto& n : rodcomp::catalog_names()) std::cout << n << "\n";
    std::cout << "# " << rodcomp::catalog_note() << "\n";
    return kExitOk;
  }
  const auto doc = rodcomp::catalog_get(name);
  if (!doc) {
    std::cerr << "unknown catalog entry \"" << name << "\"\n";
    return kExitSemantic;
  }
  std::cout << rodcomp::to_json(*doc).dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact geometric classification of rod complements in the 3-torus"};
  app.require_subcommand(1);

  std::string file;
  long radius = 16;
  std::string format = "json";
  int idx_i = 0, idx_j = 0;

  auto* validate = app.add_subcommand("validate", "check a packing file for disjointness");
  validate->add_option("file", file, "packing JSON file")->required();

  auto* classify = app.add_subcommand("classify", "classify the geometry of a packing");
  classify->add_option("file", file, "packing JSON file")->required();
  classify->add_option("--radius", radius, "target-lift search radius for unbounded cells");
  classify->add_option("--format", format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));

  auto* isotopy = app.add_subcommand("isotopy", "decide linear isotopy of two parallel rods");
  isotopy->add_option("file", file, "packing JSON file")->required();
  isotopy->add_option("i", idx_i, "first rod index")->required();
  isotopy->add_option("j", idx_j, "second rod index")->required();
  isotopy->add_option("--radius", radius, "target-lift search radius for unbounded cells");
  isotopy->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

  rodcomp::SurveyOptions sopt;
  bool count_only = false;
  auto* survey = app.add_subcommand("survey", "enumerate and classify small packings");
  survey->add_option("--max-entry", sopt.max_entry, "direction entry bound B");
  survey->add_option("--denominator", sopt.denominator, "basepoint grid denominator q");
  survey->add_option("--rods", sopt.max_rods, "maximum number of rods per packing");
  survey->add_option("--jobs", sopt.jobs, "worker threads for classification");
  survey->add_flag("--count-only", count_only, "print only the census counts");

  std::string catalog_action, catalog_name;
  auto* catalog = app.add_subcommand("catalog", "built-in example packings");
  catalog->add_option("action", catalog_action, "list | show")->required()
      ->check(CLI::IsMember({"list", "show"}));
  catalog->add_option("name", catalog_name, "entry name for show");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(file);
    if (classify->parsed()) return cmd_classify(file, radius, format);
    if (isotopy->parsed()) return cmd_isotopy(file, idx_i, idx_j, radius, format);
    if (survey->parsed()) {
      if (const char* cap = std::getenv("ROD_CLASSIFIER_MAX_CELLS"))
        sopt.max_packings = std::strtol(cap, nullptr, 10);
      sopt.collect_rows = !count_only;
      return cmd_survey(sopt, count_only);
    }
    if (catalog->parsed()) return cmd_catalog(catalog_action, catalog_name);
  } catch (const rodcomp::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSemantic;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
