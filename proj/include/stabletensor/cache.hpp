#pragma once

#include <cstdlib>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "text_format.hpp"

namespace stabletensor {

inline constexpr int kCacheSchemaVersion = 1;

/// One persisted decomposition: the full key (family, rank, padded factors,
/// producing engine) plus the result terms.
struct CacheRecord {
  int schema_version = kCacheSchemaVersion;
  std::string family;  // flag spelling: gl, sp, so-odd, so-even
  int rank = 0;
  std::vector<long long> lhs, rhs;  // padded to rank
  std::string engine;
  std::vector<std::pair<WeightVector, long long>> terms;  // descending lex
};

inline CacheRecord record_from_decomposition(const Decomposition& d, const WeightVector& lhs,
                                             const WeightVector& rhs,
                                             const std::string& engine_tag) {
  CacheRecord r;
  r.family = kind_flag(d.family.kind);
  r.rank = d.family.rank;
  r.lhs = lhs;
  r.rhs = rhs;
  r.engine = engine_tag;
  for (const auto& [w, m] : d.terms) r.terms.emplace_back(w, m);
  return r;
}

inline Decomposition decomposition_from_record(const CacheRecord& r) {
  Decomposition d(make_family(kind_from_flag(r.family), r.rank));
  for (const auto& [w, m] : r.terms) {
    if (m <= 0) throw InputError("cache record holds a nonpositive multiplicity");
    d.add(w, m);
  }
  return d;
}

inline std::string cache_record_line(const CacheRecord& r) {
  Json terms = Json::array();
  for (const auto& [w, m] : r.terms) terms.push_back(Json{{"weight", w}, {"mult", m}});
  Json j{{"schema_version", r.schema_version},
         {"family", r.family},
         {"rank", r.rank},
         {"lhs", r.lhs},
         {"rhs", r.rhs},
         {"engine", r.engine},
         {"terms", terms}};
  return j.dump();
}

/// Parse one JSONL line. Any malformation (bad JSON, missing field, wrong
/// type, unknown schema version) throws InputError; readers treat that line
/// as corrupt and skip it.
inline CacheRecord parse_cache_record(const std::string& line) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const std::exception& e) {
    throw InputError(std::string("cache line is not valid JSON: ") + e.what());
  }
  try {
    CacheRecord r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kCacheSchemaVersion)
      throw InputError("unsupported cache schema version");
    r.family = j.at("family").get<std::string>();
    kind_from_flag(r.family);
    r.rank = j.at("rank").get<int>();
    r.lhs = j.at("lhs").get<std::vector<long long>>();
    r.rhs = j.at("rhs").get<std::vector<long long>>();
    r.engine = j.at("engine").get<std::string>();
    if (r.engine != kEngineRecursive && r.engine != kEngineOracle)
      throw InputError("unknown engine tag in cache record");
    for (const auto& t : j.at("terms")) {
      WeightVector w = t.at("weight").get<WeightVector>();
      long long m = t.at("mult").get<long long>();
      r.terms.emplace_back(std::move(w), m);
    }
    return r;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(std::string("cache record malformed: ") + e.what());
  }
}

/// Append-only JSONL store of decompositions. The whole file is read once at
/// construction; corrupt lines are skipped and counted, never fatal.
class CoefficientCache {
public:
  explicit CoefficientCache(std::string path) : path_(std::move(path)) {
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      try {
        records_.push_back(parse_cache_record(line));
      } catch (const Error&) {
        ++corrupt_;
      }
    }
  }

  const std::string& path() const { return path_; }
  const std::vector<CacheRecord>& records() const { return records_; }
  std::size_t corrupt_lines() const { return corrupt_; }

  std::optional<CacheRecord> find(const std::string& family, int rank,
                                  const std::vector<long long>& lhs,
                                  const std::vector<long long>& rhs,
                                  const std::string& engine) const {
    for (const auto& r : records_)
      if (r.family == family && r.rank == rank && r.lhs == lhs && r.rhs == rhs &&
          r.engine == engine)
        return r;
    return std::nullopt;
  }

  void append(const CacheRecord& r) {
    std::lock_guard lk(write_mutex_);
    std::ofstream out(path_, std::ios::app);
    if (!out) throw InputError("cannot open cache file for append: " + path_);
    out << cache_record_line(r) << "\n";
    out.flush();
    records_.push_back(r);
  }

private:
  std::string path_;
  std::vector<CacheRecord> records_;
  std::size_t corrupt_ = 0;
  std::mutex write_mutex_;
};

/// Cache location policy: a nonempty STABLETENSOR_CACHE environment variable
/// wins over the --cache flag; with neither present caching is off.
inline std::optional<std::string> resolve_cache_path(const std::optional<std::string>& flag) {
  if (const char* env = std::getenv("STABLETENSOR_CACHE"); env && *env != '\0')
    return std::string(env);
  return flag;
}

}  // namespace stabletensor
