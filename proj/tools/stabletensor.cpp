// Command-line front end: decompose tensor products, survey stabilization,
// reproduce the embedded reference tables, and maintain the JSONL result
// cache. Exit codes: 0 success, 2 invalid input, 3 out of stable range,
// 4 internal consistency failure, 5 resource bound exceeded.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <stabletensor/stabletensor.hpp>

namespace st = stabletensor;

namespace {

std::vector<st::Kind> parse_groups(const std::string& csv) {
  std::vector<st::Kind> kinds;
  std::string cur;
  auto flush = [&]() {
    if (cur.empty()) return;
    kinds.push_back(st::kind_from_flag(cur));
    cur.clear();
  };
  for (char c : csv) {
    if (c == ',')
      flush();
    else if (c != ' ')
      cur += c;
  }
  flush();
  if (kinds.empty()) throw st::InputError("--groups: no group named");
  return kinds;
}

std::optional<st::CoefficientCache> open_cache(const std::string& flag_value) {
  std::optional<std::string> flag;
  if (!flag_value.empty()) flag = flag_value;
  auto path = st::resolve_cache_path(flag);
  if (!path) return std::nullopt;
  return std::make_optional<st::CoefficientCache>(*path);
}

void print_decomposition(const st::Decomposition& dec, const st::WeightVector& lhs,
                         const st::WeightVector& rhs, const std::string& engine_tag,
                         st::OutputFormat format) {
  switch (format) {
    case st::OutputFormat::Json:
      std::cout << st::decomposition_document(dec, lhs, rhs, engine_tag).dump(2) << "\n";
      break;
    case st::OutputFormat::Tsv:
      std::cout << st::decomposition_tsv(dec);
      break;
    case st::OutputFormat::Pretty:
      std::cout << st::terms_pretty(dec.terms) << "\n";
      break;
  }
}

// ---------------------------------------------------------------------------

struct DecomposeArgs {
  std::string group, lhs, rhs;
  int rank = 0;
  std::string format = "pretty";
  std::string cache;
  bool force_oracle = false;
};

int run_decompose(const DecomposeArgs& a) {
  st::OutputFormat format = st::parse_format(a.format);
  st::Kind kind = st::kind_from_flag(a.group);
  st::GroupFamily f = st::make_family(kind, a.rank);
  st::Partition lhs = st::parse_partition(a.lhs), rhs = st::parse_partition(a.rhs);
  st::WeightVector lw = lhs.padded(a.rank), rw = rhs.padded(a.rank);

  std::string tag;
  if (kind == st::Kind::GL) {
    tag = st::kEngineOracle;
  } else {
    int threshold = st::stable_rank_threshold(kind, lhs, rhs);
    if (a.rank >= threshold)
      tag = a.force_oracle ? st::kEngineOracle : st::kEngineRecursive;
    else if (a.force_oracle)
      tag = st::kEngineOracle;
    else
      throw st::StableRangeError(
          "rank " + std::to_string(a.rank) + " is below the stable bound " +
              std::to_string(threshold) + " for these factors; use rank >= " +
              std::to_string(threshold) + " or pass --force-oracle",
          threshold);
  }

  auto cache = open_cache(a.cache);
  if (cache) {
    if (auto hit = cache->find(st::kind_flag(kind), a.rank, lw, rw, tag)) {
      print_decomposition(st::decomposition_from_record(*hit), lw, rw, tag, format);
      return 0;
    }
  }

  st::Decomposition dec = tag == st::kEngineRecursive
                              ? st::tensor_stable_range(f, lhs, rhs)
                              : st::tensor_oracle(f, lw, rw);
  if (cache) cache->append(st::record_from_decomposition(dec, lw, rw, tag));
  print_decomposition(dec, lw, rw, tag, format);
  return 0;
}

struct StableArgs {
  std::string lhs, rhs;
  std::string format = "pretty";
};

int run_stable(const StableArgs& a) {
  st::OutputFormat format = st::parse_format(a.format);
  st::Partition lhs = st::parse_partition(a.lhs), rhs = st::parse_partition(a.rhs);
  st::StableDecomposition s = st::stable_tensor(lhs, rhs);
  switch (format) {
    case st::OutputFormat::Json:
      std::cout << st::stable_document(s, lhs, rhs).dump(2) << "\n";
      break;
    case st::OutputFormat::Tsv:
      for (const auto& [w, m] : s.terms)
        std::cout << st::weight_csv(w) << "\t" << m << "\n";
      break;
    case st::OutputFormat::Pretty:
      std::cout << st::terms_pretty(s.terms) << "\n";
      break;
  }
  return 0;
}

struct StabilityArgs {
  std::string lhs, rhs;
  int nmax = -1;
  std::string groups = "sp,so-odd,so-even";
  std::string format = "pretty";
};

int run_stability(const StabilityArgs& a) {
  st::OutputFormat format = st::parse_format(a.format);
  st::Partition lhs = st::parse_partition(a.lhs), rhs = st::parse_partition(a.rhs);
  auto kinds = parse_groups(a.groups);
  int n0 = static_cast<int>(lhs.length() + rhs.length());
  int nmax = a.nmax >= 0 ? a.nmax : n0 + 3;
  st::StabilityReport rep = st::stability_report(lhs, rhs, kinds, nmax);
  switch (format) {
    case st::OutputFormat::Json:
      std::cout << st::stability_document(rep).dump(2) << "\n";
      break;
    case st::OutputFormat::Tsv:
      std::cout << st::stability_tsv(rep);
      break;
    case st::OutputFormat::Pretty:
      std::cout << st::stability_pretty(rep);
      break;
  }
  if (!rep.conclusions_ok())
    throw st::InternalError("stability conclusions failed verification");
  return 0;
}

struct CompareArgs {
  std::string lhs, rhs;
  int rank = -1;
  std::string groups = "sp,so-odd,so-even";
  std::string format = "pretty";
};

int run_compare_groups(const CompareArgs& a) {
  st::OutputFormat format = st::parse_format(a.format);
  st::Partition lhs = st::parse_partition(a.lhs), rhs = st::parse_partition(a.rhs);
  auto kinds = parse_groups(a.groups);
  for (auto k : kinds)
    if (k == st::Kind::GL)
      throw st::InputError("compare-groups works on the classical families sp, so-odd, so-even");
  int n0 = static_cast<int>(lhs.length() + rhs.length());
  int rank = a.rank >= 0 ? a.rank : n0 + 1;
  if (rank < n0 + 1)
    throw st::StableRangeError("cross-family coincidence holds from rank n0+1 = " +
                                   std::to_string(n0 + 1) + "; got rank " + std::to_string(rank),
                               n0 + 1);

  struct Entry {
    st::GroupFamily family;
    st::Decomposition table;
  };
  std::vector<Entry> entries;
  for (auto k : kinds) {
    st::GroupFamily f = st::make_family(k, rank);
    entries.push_back({f, st::tensor_stable_range(f, lhs, rhs)});
  }
  bool match = true;
  for (std::size_t i = 1; i < entries.size(); ++i)
    if (entries[i].table.signature() != entries[0].table.signature()) match = false;

  if (format == st::OutputFormat::Json) {
    st::Json fams = st::Json::array();
    st::Json tables = st::Json::array();
    for (const auto& e : entries) {
      fams.push_back(st::kind_flag(e.family.kind));
      tables.push_back(st::Json{{"family", st::kind_flag(e.family.kind)},
                                {"rank", e.family.rank},
                                {"terms", st::terms_json(e.table.terms)}});
    }
    st::Json doc{{"lhs", lhs.parts()}, {"rhs", rhs.parts()}, {"rank", rank},
                 {"families", fams},   {"match", match},     {"tables", tables}};
    std::cout << doc.dump(2) << "\n";
  } else if (format == st::OutputFormat::Tsv) {
    for (const auto& e : entries)
      for (const auto& [w, m] : e.table.terms)
        std::cout << st::kind_flag(e.family.kind) << "\t" << e.family.rank << "\t"
                  << st::weight_csv(w) << "\t" << m << "\n";
    std::cout << "# match " << (match ? "true" : "false") << "\n";
  } else {
    for (const auto& e : entries)
      std::cout << st::display_name(e.family) << ": " << st::terms_pretty(e.table.terms) << "\n";
    std::cout << (match ? "tables coincide" : "TABLES DIFFER") << " at rank " << rank << "\n";
  }
  if (!match) throw st::InternalError("cross-family tables differ at rank " + std::to_string(rank));
  return 0;
}

struct ReproduceArgs {
  std::string out_dir = "tables";
  std::string cache;
  bool selftest_corrupt = false;
};

int run_reproduce_tables(const ReproduceArgs& a) {
  auto cache = open_cache(a.cache);
  st::ReferenceRunResult res =
      st::run_reference_tables(cache ? &*cache : nullptr, a.selftest_corrupt);

  std::filesystem::create_directories(a.out_dir);
  for (const auto& [name, rows] : res.tables) {
    std::filesystem::path p = std::filesystem::path(a.out_dir) / ("table_" + name + ".tsv");
    std::ofstream out(p);
    if (!out) throw st::InputError("cannot write " + p.string());
    out << st::reference_table_tsv(rows);
  }

  for (const auto& [name, rows] : res.tables) {
    int ok = 0;
    for (const auto& r : rows) ok += r.match ? 1 : 0;
    std::cout << "table_" << name << ": " << ok << "/" << rows.size() << " rows match\n";
    for (const auto& r : rows)
      if (!r.match) std::cout << "  MISMATCH " << r.diff << "\n";
  }
  if (!res.all_match())
    throw st::InternalError("reference tables failed to reproduce");
  return 0;
}

struct VerifyArgs {
  std::string cache;
};

int run_verify_cache(const VerifyArgs& a) {
  std::optional<std::string> flag;
  if (!a.cache.empty()) flag = a.cache;
  auto path = st::resolve_cache_path(flag);
  if (!path)
    throw st::InputError("no cache selected: pass --cache PATH or set STABLETENSOR_CACHE");
  st::CoefficientCache cache(*path);
  if (cache.corrupt_lines() > 0)
    std::cerr << "warning: skipped " << cache.corrupt_lines() << " corrupt line(s)\n";

  std::size_t bad = 0;
  for (const auto& rec : cache.records()) {
    try {
      st::GroupFamily f = st::make_family(st::kind_from_flag(rec.family), rec.rank);
      st::Decomposition fresh(f);
      if (rec.engine == st::kEngineRecursive) {
        if (f.kind == st::Kind::GL)
          throw st::InputError("GL records cannot carry the recursive engine tag");
        fresh = st::tensor_stable_range(f, st::partition_from_weight(st::strip_trailing_zeros(rec.lhs)),
                                        st::partition_from_weight(st::strip_trailing_zeros(rec.rhs)));
      } else {
        fresh = st::tensor_oracle(f, rec.lhs, rec.rhs);
      }
      st::Decomposition stored = st::decomposition_from_record(rec);
      if (!(fresh == stored)) {
        ++bad;
        std::cout << "STALE " << rec.family << " rank " << rec.rank << " "
                  << st::weight_pretty(rec.lhs) << " (x) " << st::weight_pretty(rec.rhs) << " ["
                  << rec.engine << "]\n  cached   " << st::terms_pretty(stored.terms)
                  << "\n  computed " << st::terms_pretty(fresh.terms) << "\n";
      }
    } catch (const st::Error& e) {
      ++bad;
      std::cout << "INVALID " << rec.family << " rank " << rec.rank << ": " << e.what() << "\n";
    }
  }
  std::cout << cache.records().size() - bad << "/" << cache.records().size()
            << " records verified\n";
  if (bad > 0) throw st::InternalError("cache verification found stale or invalid records");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact tensor product decomposition for the classical families"};
  app.require_subcommand(1);

  DecomposeArgs dargs;
  auto* dec = app.add_subcommand("decompose", "Decompose lhs (x) rhs at a fixed rank");
  dec->add_option("--group", dargs.group, "gl, sp, so-odd, so-even")->required();
  dec->add_option("--rank", dargs.rank, "family rank n")->required();
  dec->add_option("--lhs", dargs.lhs, "left factor, e.g. 2,1,1")->required();
  dec->add_option("--rhs", dargs.rhs, "right factor")->required();
  dec->add_option("--format", dargs.format, "json, tsv, pretty (default)");
  dec->add_option("--cache", dargs.cache, "JSONL coefficient cache path");
  dec->add_flag("--force-oracle", dargs.force_oracle,
                "use the character-theoretic rule even where the recursion applies");

  StableArgs sargs;
  auto* stab = app.add_subcommand("stable", "Rank-independent stable decomposition");
  stab->add_option("--lhs", sargs.lhs)->required();
  stab->add_option("--rhs", sargs.rhs)->required();
  stab->add_option("--format", sargs.format, "json, tsv, pretty (default)");

  StabilityArgs yargs;
  auto* sty = app.add_subcommand("stability", "Survey ranks and verify stabilization");
  sty->add_option("--lhs", yargs.lhs)->required();
  sty->add_option("--rhs", yargs.rhs)->required();
  sty->add_option("--nmax", yargs.nmax, "largest rank to examine (default n0+3)");
  sty->add_option("--groups", yargs.groups, "comma list (default sp,so-odd,so-even)");
  sty->add_option("--format", yargs.format, "json, tsv, pretty (default)");

  CompareArgs cargs;
  auto* cmp = app.add_subcommand("compare-groups",
                                 "Check the cross-family coincidence at one rank");
  cmp->add_option("--lhs", cargs.lhs)->required();
  cmp->add_option("--rhs", cargs.rhs)->required();
  cmp->add_option("--rank", cargs.rank, "rank to compare at (default n0+1)");
  cmp->add_option("--groups", cargs.groups, "comma list (default sp,so-odd,so-even)");
  cmp->add_option("--format", cargs.format, "json, tsv, pretty (default)");

  ReproduceArgs rargs;
  auto* rep = app.add_subcommand("reproduce-tables",
                                 "Recompute the embedded survey tables and diff them");
  rep->add_option("--out-dir", rargs.out_dir, "directory for table_*.tsv (default tables/)");
  rep->add_option("--cache", rargs.cache, "JSONL coefficient cache path");
  rep->add_flag("--selftest-corrupt", rargs.selftest_corrupt,
                "perturb one embedded value to prove the comparison can fail");

  VerifyArgs vargs;
  auto* ver = app.add_subcommand("verify-cache", "Recompute and check every cache record");
  ver->add_option("--cache", vargs.cache, "JSONL coefficient cache path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (dec->parsed()) return run_decompose(dargs);
    if (stab->parsed()) return run_stable(sargs);
    if (sty->parsed()) return run_stability(yargs);
    if (cmp->parsed()) return run_compare_groups(cargs);
    if (rep->parsed()) return run_reproduce_tables(rargs);
    if (ver->parsed()) return run_verify_cache(vargs);
  } catch (const st::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
