#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "cache.hpp"
#include "engine.hpp"
#include "text_format.hpp"

namespace stabletensor {

/// One row of the embedded survey tables: a family at a specific rank with
/// the expected decomposition of (2,1,1) ⊗ (1,1) written in canonical form.
struct ReferenceRow {
  const char* label;
  Kind kind;
  int rank;
  const char* lhs;
  const char* rhs;
  const char* expected;
};

struct ReferenceTable {
  const char* name;  // file stem: table_<name>.tsv
  std::vector<ReferenceRow> rows;
};

inline const std::vector<ReferenceTable>& reference_tables() {
  static const std::vector<ReferenceTable> tables = {
      {"gl",
       {
           {"GL(3)", Kind::GL, 3, "2,1,1", "1,1", "(2,2,2) + (3,2,1)"},
           {"GL(4)", Kind::GL, 4, "2,1,1", "1,1",
            "(2,2,2,0) + (2,2,1,1) + (3,2,1,0) + (3,1,1,1)"},
           {"GL(5)", Kind::GL, 5, "2,1,1", "1,1",
            "(2,2,2,0,0) + (2,2,1,1,0) + (2,1,1,1,1) + (3,2,1,0,0) + (3,1,1,1,0)"},
           {"GL(6)", Kind::GL, 6, "2,1,1", "1,1",
            "(2,2,2,0,0,0) + (2,2,1,1,0,0) + (2,1,1,1,1,0) + (3,2,1,0,0,0) + (3,1,1,1,0,0)"},
       }},
      {"sp",
       {
           {"Sp(6)", Kind::Sp, 3, "2,1,1", "1,1",
            "(2,2,2) + (1,1,0) + (2,2,0) + (2,1,1) + (3,2,1) + (2,0,0) + (3,1,0)"},
           {"Sp(8)", Kind::Sp, 4, "2,1,1", "1,1",
            "(1,1,1,1) + (2,2,2,0) + (1,1,0,0) + (2,2,1,1) + (2,2,0,0) + (3,2,1,0) + (2,0,0,0) + "
            "(3,1,1,1) + (3,1,0,0) + 2×(2,1,1,0)"},
           {"Sp(10)", Kind::Sp, 5, "2,1,1", "1,1",
            "(1,1,1,1,0) + (2,2,2,0,0) + (1,1,0,0,0) + (2,2,1,1,0) + (2,2,0,0,0) + (2,1,1,1,1) + "
            "(3,2,1,0,0) + (2,0,0,0,0) + (3,1,1,1,0) + (3,1,0,0,0) + 2×(2,1,1,0,0)"},
           {"Sp(12)", Kind::Sp, 6, "2,1,1", "1,1",
            "(1,1,1,1,0,0) + (2,2,2,0,0,0) + (1,1,0,0,0,0) + (2,2,1,1,0,0) + (2,2,0,0,0,0) + "
            "(2,1,1,1,1,0) + (3,2,1,0,0,0) + (2,0,0,0,0,0) + (3,1,1,1,0,0) + (3,1,0,0,0,0) + "
            "2×(2,1,1,0,0,0)"},
       }},
      {"so-odd",
       {
           {"SO(7)", Kind::SOodd, 3, "2,1,1", "1,1",
            "(1,1,1) + (2,2,2) + (1,1,0) + (2,2,1) + (2,2,0) + (2,1,0) + (3,2,1) + (2,0,0) + "
            "(3,1,1) + (3,1,0) + 2×(2,1,1)"},
           {"SO(9)", Kind::SOodd, 4, "2,1,1", "1,1",
            "(1,1,1,1) + (2,2,2,0) + (1,1,0,0) + (2,2,1,1) + (2,2,0,0) + (2,1,1,1) + (3,2,1,0) + "
            "(2,0,0,0) + (3,1,1,1) + (3,1,0,0) + 2×(2,1,1,0)"},
           {"SO(11)", Kind::SOodd, 5, "2,1,1", "1,1",
            "(1,1,1,1,0) + (2,2,2,0,0) + (1,1,0,0,0) + (2,2,1,1,0) + (2,2,0,0,0) + (2,1,1,1,1) + "
            "(3,2,1,0,0) + (2,0,0,0,0) + (3,1,1,1,0) + (3,1,0,0,0) + 2×(2,1,1,0,0)"},
           {"SO(13)", Kind::SOodd, 6, "2,1,1", "1,1",
            "(1,1,1,1,0,0) + (2,2,2,0,0,0) + (1,1,0,0,0,0) + (2,2,1,1,0,0) + (2,2,0,0,0,0) + "
            "(2,1,1,1,1,0) + (3,2,1,0,0,0) + (2,0,0,0,0,0) + (3,1,1,1,0,0) + (3,1,0,0,0,0) + "
            "2×(2,1,1,0,0,0)"},
       }},
      {"so-even",
       {
           {"SO(6)", Kind::SOeven, 3, "2,1,1", "1,1",
            "(2,2,2) + (1,1,0) + (2,2,0) + (3,2,1) + (2,0,0) + (3,1,0) + 2×(2,1,1)"},
           {"SO(8)", Kind::SOeven, 4, "2,1,1", "1,1",
            "(1,1,1,1) + (1,1,1,-1) + (2,2,2,0) + (1,1,0,0) + (2,2,1,1) + (2,2,1,-1) + (2,2,0,0) "
            "+ (3,2,1,0) + (2,0,0,0) + (3,1,1,-1) + (3,1,1,1) + (3,1,0,0) + 3×(2,1,1,0)"},
           {"SO(10)", Kind::SOeven, 5, "2,1,1", "1,1",
            "(1,1,1,1,0) + (2,2,2,0,0) + (1,1,0,0,0) + (2,2,1,1,0) + (2,2,0,0,0) + (2,1,1,1,1) + "
            "(3,2,1,0,0) + (2,0,0,0,0) + (3,1,1,1,0) + (3,1,0,0,0) + (2,1,1,1,-1) + "
            "2×(2,1,1,0,0)"},
           {"SO(12)", Kind::SOeven, 6, "2,1,1", "1,1",
            "(1,1,1,1,0,0) + (2,2,2,0,0,0) + (1,1,0,0,0,0) + (2,2,1,1,0,0) + (2,2,0,0,0,0) + "
            "(2,1,1,1,1,0) + (3,2,1,0,0,0) + (2,0,0,0,0,0) + (3,1,1,1,0,0) + (3,1,0,0,0,0) + "
            "2×(2,1,1,0,0,0)"},
           {"SO(14)", Kind::SOeven, 7, "2,1,1", "1,1",
            "(1,1,1,1,0,0,0) + (2,2,2,0,0,0,0) + (1,1,0,0,0,0,0) + (2,2,1,1,0,0,0) + "
            "(2,2,0,0,0,0,0) + (2,1,1,1,1,0,0) + (3,2,1,0,0,0,0) + (2,0,0,0,0,0,0) + "
            "(3,1,1,1,0,0,0) + (3,1,0,0,0,0,0) + 2×(2,1,1,0,0,0,0)"},
       }},
  };
  return tables;
}

/// Engine policy shared by the table harness and the stability survey:
/// classical families use the recursive engine at and above the stable
/// threshold and the character-theoretic rule below it; GL always uses the
/// latter.
inline std::pair<Decomposition, std::string> compute_with_auto_engine(GroupFamily f,
                                                                      const Partition& lhs,
                                                                      const Partition& rhs) {
  if (f.kind == Kind::GL) return {gl_tensor(f.rank, lhs, rhs), kEngineOracle};
  if (f.rank >= stable_rank_threshold(f.kind, lhs, rhs))
    return {tensor_stable_range(f, lhs, rhs), kEngineRecursive};
  return {tensor_oracle(f, lhs.padded(f.rank), rhs.padded(f.rank)), kEngineOracle};
}

/// Same policy, going through a persistent cache when one is provided.
inline std::pair<Decomposition, std::string> compute_with_auto_engine(GroupFamily f,
                                                                      const Partition& lhs,
                                                                      const Partition& rhs,
                                                                      CoefficientCache* cache) {
  std::string tag;
  if (f.kind == Kind::GL) {
    tag = kEngineOracle;
  } else if (f.rank >= stable_rank_threshold(f.kind, lhs, rhs)) {
    tag = kEngineRecursive;
  } else {
    tag = kEngineOracle;
  }
  WeightVector lw = lhs.padded(f.rank), rw = rhs.padded(f.rank);
  if (cache) {
    if (auto hit = cache->find(kind_flag(f.kind), f.rank, lw, rw, tag))
      return {decomposition_from_record(*hit), tag};
  }
  auto [dec, tag2] = compute_with_auto_engine(f, lhs, rhs);
  if (cache) cache->append(record_from_decomposition(dec, lw, rw, tag2));
  return {dec, tag2};
}

struct ReferenceRowResult {
  const ReferenceRow* row = nullptr;
  Decomposition computed{GroupFamily{Kind::GL, 1}};
  std::string engine_tag;
  bool match = false;
  std::string diff;  // empty when matching
};

struct ReferenceRunResult {
  std::vector<std::pair<std::string, std::vector<ReferenceRowResult>>> tables;
  int rows_total = 0;
  int rows_matched = 0;
  bool all_match() const { return rows_total == rows_matched; }
};

/// Recompute every row and compare against the embedded expectations after
/// canonical reordering. `corrupt_first_row` deliberately perturbs one
/// expected multiplicity so the comparison machinery can be shown to fail.
inline ReferenceRunResult run_reference_tables(CoefficientCache* cache = nullptr,
                                               bool corrupt_first_row = false) {
  ReferenceRunResult out;
  bool corrupted = false;
  for (const auto& table : reference_tables()) {
    std::vector<ReferenceRowResult> results;
    for (const auto& row : table.rows) {
      GroupFamily f = make_family(row.kind, row.rank);
      Partition lhs = parse_partition(row.lhs), rhs = parse_partition(row.rhs);
      auto [dec, tag] = compute_with_auto_engine(f, lhs, rhs, cache);

      std::map<WeightVector, long long, DescLex> expected;
      for (auto& [w, m] : parse_pretty_terms(row.expected)) {
        if (w.size() != static_cast<std::size_t>(f.rank))
          throw InternalError(std::string("embedded row has wrong rank: ") + row.label);
        expected[w] += m;
      }
      if (corrupt_first_row && !corrupted) {
        ++expected.begin()->second;
        corrupted = true;
      }

      ReferenceRowResult rr;
      rr.row = &row;
      rr.engine_tag = tag;
      rr.match = std::equal(expected.begin(), expected.end(), dec.terms.begin(), dec.terms.end());
      if (!rr.match)
        rr.diff = std::string(row.label) + ": expected " + terms_pretty(expected) + " | computed " +
                  terms_pretty(dec.terms);
      rr.computed = std::move(dec);
      ++out.rows_total;
      if (rr.match) ++out.rows_matched;
      results.push_back(std::move(rr));
    }
    out.tables.emplace_back(table.name, std::move(results));
  }
  return out;
}

/// Canonical TSV rendering of one recomputed table:
/// label, lhs, rhs, weight, mult — one line per term, descending lex.
inline std::string reference_table_tsv(const std::vector<ReferenceRowResult>& rows) {
  std::string s;
  for (const auto& rr : rows) {
    Partition lhs = parse_partition(rr.row->lhs), rhs = parse_partition(rr.row->rhs);
    int rank = rr.computed.family.rank;
    for (const auto& [w, m] : rr.computed.terms)
      s += std::string(rr.row->label) + "\t" + weight_csv(lhs.padded(rank)) + "\t" +
           weight_csv(rhs.padded(rank)) + "\t" + weight_csv(w) + "\t" + std::to_string(m) + "\n";
  }
  return s;
}

}  // namespace stabletensor
