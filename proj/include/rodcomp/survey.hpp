#pragma once

#include <set>
#include <string>
#include <thread>
#include <vector>

#include "rodcomp/classify.hpp"

namespace rodcomp {

struct SurveyOptions {
  long max_entry = 1;    // direction entries in [-B, B]
  long denominator = 1;  // basepoint coordinates in (1/q)Z^3 cap [0,1)^3
  int max_rods = 2;      // packings of 1..max_rods rods
  int jobs = 1;
  bool collect_rows = true;
  std::optional<long> max_packings;  // resource cap; exceeding aborts the run
  long search_radius = 16;
};

struct SurveyCounts {
  long hyperbolic = 0;
  long seifert_fibred = 0;
  long toroidal_plane = 0;
  long toroidal_annulus = 0;
  long invalid = 0;
  long total_valid() const { return hyperbolic + seifert_fibred + toroidal_plane + toroidal_annulus; }
};

struct SurveyResult {
  std::vector<Rod> universe;
  SurveyCounts counts;
  std::vector<std::pair<std::vector<int>, std::string>> rows;  // subset indices -> class
  bool limit_exceeded = false;
};

inline std::string verdict_class(const GeometryVerdict& gv) {
  if (gv.hyperbolic) return "hyperbolic";
  if (gv.seifert_fibred) return "seifert_fibred";
  if (gv.toroidal_witness && std::holds_alternative<PlaneTorusWitness>(*gv.toroidal_witness))
    return "toroidal_plane";
  return "toroidal_annulus";
}

// Deduplicated rod universe for the given bounds: primitive sign-canonical
// directions with entries in [-B,B], basepoints on the (1/q)-grid reduced
// to canonical form.
inline std::vector<Rod> survey_universe(long max_entry, long denominator) {
  if (max_entry < 1) throw std::invalid_argument("max_entry must be >= 1");
  if (denominator < 1) throw std::invalid_argument("denominator must be >= 1");
  std::set<Rod> rods;
  for (long x = -max_entry; x <= max_entry; ++x)
    for (long y = -max_entry; y <= max_entry; ++y)
      for (long z = -max_entry; z <= max_entry; ++z) {
        const IntVec3 d{Int(x), Int(y), Int(z)};
        if (is_zero(d) || gcd3(d) != 1 || !(sign_canonical(d) == d)) continue;
        for (long a = 0; a < denominator; ++a)
          for (long b = 0; b < denominator; ++b)
            for (long c = 0; c < denominator; ++c)
              rods.insert(make_rod(
                  d, RatVec3{Rat(a, denominator), Rat(b, denominator), Rat(c, denominator)}));
      }
  return {rods.begin(), rods.end()};
}

// Enumerates subsets of the universe in lexicographic order, validates,
// classifies, and tallies verdict classes. Classification fans out over
// `jobs` workers; the output order is independent of the worker count.
inline SurveyResult run_survey(const SurveyOptions& opt) {
  SurveyResult res;
  res.universe = survey_universe(opt.max_entry, opt.denominator);
  if (opt.max_rods < 1) throw std::invalid_argument("max_rods must be >= 1");

  const int m = static_cast<int>(res.universe.size());
  std::vector<std::vector<int>> valid_subsets;
  std::vector<ValidatedPacking> valid_packings;
  long enumerated = 0;

  std::vector<int> subset;
  auto enumerate = [&](auto&& self, int next, int remaining) -> bool {
    if (remaining == 0) {
      ++enumerated;
      if (opt.max_packings && enumerated > *opt.max_packings) {
        res.limit_exceeded = true;
        return false;
      }
      RodPacking p;
      for (int idx : subset) p.rods.push_back(res.universe[static_cast<std::size_t>(idx)]);
      ValidationResult vr = validate_packing(p);
      if (!vr.ok()) {
        ++res.counts.invalid;
        return true;
      }
      valid_subsets.push_back(subset);
      valid_packings.push_back(std::move(*vr.value));
      return true;
    }
    for (int idx = next; idx + remaining <= m; ++idx) {
      subset.push_back(idx);
      const bool go_on = self(self, idx + 1, remaining - 1);
      subset.pop_back();
      if (!go_on) return false;
    }
    return true;
  };
  for (int size = 1; size <= opt.max_rods && !res.limit_exceeded; ++size)
    enumerate(enumerate, 0, size);
  if (res.limit_exceeded) return res;

  std::vector<std::string> classes(valid_packings.size());
  const int jobs = std::max(1, opt.jobs);
  auto worker = [&](std::size_t begin, std::size_t step) {
    for (std::size_t t = begin; t < valid_packings.size(); t += step)
      classes[t] = verdict_class(classify(valid_packings[t], opt.search_radius));
  };
  if (jobs == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < jobs; ++t)
      threads.emplace_back(worker, static_cast<std::size_t>(t), static_cast<std::size_t>(jobs));
    for (auto& th : threads) th.join();
  }

  for (std::size_t t = 0; t < valid_packings.size(); ++t) {
    const std::string& cls = classes[t];
    if (cls == "hyperbolic") ++res.counts.hyperbolic;
    else if (cls == "seifert_fibred") ++res.counts.seifert_fibred;
    else if (cls == "toroidal_plane") ++res.counts.toroidal_plane;
    else ++res.counts.toroidal_annulus;
    if (opt.collect_rows) res.rows.emplace_back(valid_subsets[t], cls);
  }
  return res;
}

}  // namespace rodcomp
